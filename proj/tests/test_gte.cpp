#include <doctest.h>

#include <cmath>

#include "chshov/families.hpp"
#include "chshov/gte.hpp"
#include "testutil.hpp"

using namespace chshov;

namespace {

QState zero_tensor_bell() {
    std::vector<cplx> amps(8, cplx{});
    const double w = 1.0 / std::sqrt(2.0);
    amps[0b000] = w;
    amps[0b011] = w;
    return QState::pure({2, 2, 2}, std::move(amps));
}

QState white_noise_3q() {
    CMatrix rho = CMatrix::identity(8);
    rho *= cplx{1.0 / 8.0, 0.0};
    return QState::mixed({2, 2, 2}, std::move(rho));
}

}  // namespace

TEST_CASE("GHZ saturates every bipartition maximum") {
    const GteXYZ xyz = gte_xyz(named_state("ghz"));
    CHECK(xyz.x == doctest::Approx(4.0).epsilon(1e-10));
    CHECK(xyz.y == doctest::Approx(4.0).epsilon(1e-10));
    CHECK(xyz.z == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("|0> x Bell has no overlap across the product cut") {
    const GteXYZ xyz = gte_xyz(zero_tensor_bell());
    CHECK(xyz.x == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(xyz.y == doctest::Approx(4.0).epsilon(1e-10));
    CHECK(xyz.z == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("white noise has vanishing maxima") {
    const GteXYZ xyz = gte_xyz(white_noise_3q());
    CHECK(xyz.x < 1e-12);
    CHECK(xyz.y < 1e-12);
    CHECK(xyz.z < 1e-12);
}

TEST_CASE("pure GTE test accepts GHZ and W, rejects biseparable states") {
    CHECK(pure_gte_test(named_state("ghz")));
    CHECK(pure_gte_test(named_state("w")));
    CHECK(!pure_gte_test(zero_tensor_bell()));
    CHECK(!pure_gte_test(named_state("product")));
}

TEST_CASE("pure GTE test rejects mixed input") {
    CHECK_THROWS_AS(pure_gte_test(ghz_noise(2, 0.9)), std::invalid_argument);
    CHECK_THROWS_AS(pure_gte_concurrence(ghz_noise(2, 0.9)), std::invalid_argument);
}

TEST_CASE("sum test detects GHZ and stays silent on the biseparable boundary") {
    const auto ghz = mixed_gte_test(named_state("ghz"));
    CHECK(ghz.sum == doctest::Approx(12.0).epsilon(1e-10));
    CHECK(ghz.detected);

    const auto bisep = mixed_gte_test(zero_tensor_bell());
    CHECK(bisep.sum == doctest::Approx(8.0).epsilon(1e-10));
    CHECK(!bisep.detected);
}

TEST_CASE("noisy GHZ at x=0.85 is detected with sum 8.2659") {
    const auto res = mixed_gte_test(ghz_noise(2, 0.85));
    CHECK(res.sum == doctest::Approx(8.2658875).epsilon(1e-6));
    CHECK(res.detected);
}

TEST_CASE("GTE concurrence of canonical states") {
    CHECK(pure_gte_concurrence(named_state("ghz")) ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(pure_gte_concurrence(named_state("w")) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    // the pure marginal's purity defect is floating-point noise that the
    // square root amplifies to ~1e-8
    CHECK(pure_gte_concurrence(zero_tensor_bell()) < 1e-7);
}

TEST_CASE("GTE bound of GHZ and of white noise") {
    CHECK(gte_bound(named_state("ghz")) ==
          doctest::Approx(1.0 / (3.0 * std::sqrt(2.0))).epsilon(1e-9));
    CHECK(gte_bound(white_noise_3q()) ==
          doctest::Approx(-(2.0 / 3.0) * std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("GTE bound requires equal local dimensions") {
    auto rng = seeded_rng(601);
    CHECK_THROWS_AS(gte_bound(test::random_pure({2, 2, 3}, rng)), std::invalid_argument);
}

TEST_CASE("three parties are required") {
    CHECK_THROWS_AS(gte_xyz(named_state("bell")), std::invalid_argument);
    CHECK_THROWS_AS(mixed_gte_test(named_state("bell")), std::invalid_argument);
}

TEST_CASE("noisy GHZ family has symmetric maxima") {
    for (double x : {0.3, 0.7, 0.95}) {
        const GteXYZ xyz = gte_xyz(ghz_noise(2, x));
        CHECK(std::abs(xyz.x - xyz.y) < 1e-9);
        CHECK(std::abs(xyz.y - xyz.z) < 1e-9);
    }
}

TEST_CASE("party permutations permute (x, y, z) accordingly") {
    auto rng = seeded_rng(602);
    const QState s = test::random_pure({2, 2, 2}, rng);
    const GteXYZ base = gte_xyz(s);
    const double by_party[3] = {base.x, base.y, base.z};
    for (auto perm : {std::vector<std::size_t>{1, 0, 2}, {2, 1, 0}, {1, 2, 0}}) {
        const GteXYZ moved = gte_xyz(test::permute_parties(s, perm));
        CHECK(std::abs(moved.x - by_party[perm[0]]) < 1e-9);
        CHECK(std::abs(moved.y - by_party[perm[1]]) < 1e-9);
        CHECK(std::abs(moved.z - by_party[perm[2]]) < 1e-9);
    }
}

TEST_CASE("biseparable mixtures never violate the sum bound") {
    auto rng = seeded_rng(603);
    for (int trial = 0; trial < 60; ++trial) {
        const QState s = test::random_biseparable_tripartite(2, rng);
        CHECK(mixed_gte_test(s).sum <= 8.0 + 1e-6);
    }
    for (int trial = 0; trial < 15; ++trial) {
        const QState s = test::random_biseparable_tripartite(3, rng);
        CHECK(mixed_gte_test(s).sum <= 8.0 + 1e-6);
    }
    // qubit mixtures stay below the bound even when every term picks its
    // own split
    for (int trial = 0; trial < 40; ++trial) {
        const QState s = test::random_biseparable_tripartite(2, rng, true);
        CHECK(mixed_gte_test(s).sum <= 8.0 + 1e-6);
    }
}

TEST_CASE("GTE bound never exceeds the pure GTE concurrence") {
    auto rng = seeded_rng(604);
    for (std::size_t d : {std::size_t{2}, std::size_t{3}}) {
        for (int trial = 0; trial < 20; ++trial) {
            const QState s = test::random_pure({d, d, d}, rng);
            CHECK(gte_bound(s) <= pure_gte_concurrence(s) + 1e-8);
        }
    }
}

TEST_CASE("gte_report assembles the pieces consistently") {
    const GteReport rep = gte_report(named_state("ghz"));
    CHECK(rep.sum == doctest::Approx(12.0).epsilon(1e-9));
    CHECK(rep.mixed_gte_detected);
    CHECK(rep.pure_gte == TriState::yes);
    REQUIRE(rep.bound.has_value());
    CHECK(*rep.bound == doctest::Approx(1.0 / (3.0 * std::sqrt(2.0))).epsilon(1e-9));
    REQUIRE(rep.pure_concurrence_gte.has_value());
    CHECK(*rep.pure_concurrence_gte == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));

    const GteReport noisy = gte_report(ghz_noise(2, 0.5));
    CHECK(noisy.pure_gte == TriState::not_applicable);
    CHECK(!noisy.pure_concurrence_gte.has_value());
    CHECK(!noisy.mixed_gte_detected);

    auto rng = seeded_rng(605);
    const GteReport uneven = gte_report(test::random_pure({2, 2, 3}, rng));
    CHECK(!uneven.bound.has_value());
}
