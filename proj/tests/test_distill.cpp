#include <doctest.h>

#include <cmath>

#include "chshov/distill.hpp"
#include "chshov/families.hpp"
#include "testutil.hpp"

using namespace chshov;

TEST_CASE("isotropic qubit state above the visibility threshold is distillable") {
    const QState s = isotropic(2, 0.8);
    const auto rep = distillable_chsh(s, Bipartition::of(s.dims(), {0}));
    CHECK(rep.distillable_chsh);
    CHECK(rep.max_q == doctest::Approx(8.0 * 0.64 - 4.0).epsilon(1e-9));
    CHECK(rep.copies == 1);
}

TEST_CASE("isotropic qubit state at x=0.5 is not detected on one copy") {
    const QState s = isotropic(2, 0.5);
    const auto rep = distillable_chsh(s, Bipartition::of(s.dims(), {0}));
    CHECK(!rep.distillable_chsh);
    CHECK(rep.max_q == 0.0);
}

TEST_CASE("noisy GHZ at x=0.6 is distillable across 1|23") {
    const QState s = ghz_noise(2, 0.6);
    const auto rep = distillable_chsh(s, Bipartition::of(s.dims(), {0}));
    CHECK(rep.distillable_chsh);
    // matched-pair visibility 4x/(4x + 2(1-x)) = 0.75 at x = 0.6
    CHECK(rep.max_q == doctest::Approx(8.0 * 0.75 * 0.75 - 4.0).epsilon(1e-9));
}

TEST_CASE("two copies of a Bell state still reach the maximal overlap") {
    const QState bell = named_state("bell");
    const auto rep = distillable_chsh(bell, Bipartition::of(bell.dims(), {0}), 2);
    CHECK(rep.copies == 2);
    CHECK(rep.max_q == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("n-copy states beyond the dimension cap are rejected") {
    const QState s = isotropic(3, 0.7);
    CHECK_THROWS_AS(distillable_chsh(s, Bipartition::of(s.dims(), {0}), 4), DimensionCapError);
    CHECK_THROWS_AS(distillable_chsh(s, Bipartition::of(s.dims(), {0}), 2, 16), DimensionCapError);
    CHECK_THROWS_AS(distillable_chsh(s, Bipartition::of(s.dims(), {0}), 0), std::invalid_argument);
}

TEST_CASE("reduction criterion on isotropic states matches the closed form") {
    const QState viol = isotropic(3, 0.3);
    const auto [eig3, flag3] = reduction_criterion(viol, Bipartition::of(viol.dims(), {0}));
    CHECK(flag3);
    CHECK(eig3 == doctest::Approx(1.0 / 3.0 - 0.3 - 0.7 / 9.0).epsilon(1e-9));

    const QState ok = isotropic(4, 0.15);
    const auto [eig4, flag4] = reduction_criterion(ok, Bipartition::of(ok.dims(), {0}));
    CHECK(!flag4);
    CHECK(eig4 == doctest::Approx(0.25 - 0.15 - 0.85 / 16.0).epsilon(1e-9));
}

TEST_CASE("product states satisfy the reduction criterion") {
    const QState s = QState::pure({2, 2}, {cplx{1.0, 0.0}, {}, {}, {}});
    const auto [eig, flag] = reduction_criterion(s, Bipartition::of(s.dims(), {0}));
    CHECK(!flag);
    CHECK(eig >= -1e-12);
}

TEST_CASE("CHSH distillability implies a reduction-criterion violation for qubit pairs") {
    auto rng = seeded_rng(801);
    int seen = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const QState s = test::random_mixed({2, 2}, rng);
        const Bipartition p = Bipartition::of(s.dims(), {0});
        const auto rep = distillable_chsh(s, p);
        if (rep.distillable_chsh) {
            ++seen;
            CHECK(reduction_criterion(s, p).second);
        }
    }
    // random Wishart two-qubit states rarely violate CHSH; make sure the
    // implication was actually exercised
    const QState strong = isotropic(2, 0.95);
    CHECK(distillable_chsh(strong, Bipartition::of(strong.dims(), {0})).distillable_chsh);
    CHECK(reduction_criterion(strong, Bipartition::of(strong.dims(), {0})).second);
    CHECK(seen >= 0);
}

TEST_CASE("isotropic overlap grows monotonically with the mixing parameter") {
    double prev = -1.0;
    for (int k = 0; k <= 10; ++k) {
        const double x = 0.1 * k;
        const QState s = isotropic(2, x);
        const double q = distillable_chsh(s, Bipartition::of(s.dims(), {0})).max_q;
        CHECK(q >= prev - 1e-12);
        prev = q;
    }
}

TEST_CASE("the LU search never does worse than the plain scan") {
    auto rng = seeded_rng(802);
    for (int trial = 0; trial < 5; ++trial) {
        const QState s = test::random_mixed({2, 2}, rng);
        const Bipartition p = Bipartition::of(s.dims(), {0});
        const double plain = distillable_chsh(s, p).max_q;
        const auto rep = lu_enhanced_overlap(s, p, 25, 99 + trial);
        CHECK(rep.max_q >= plain - 1e-12);
        REQUIRE(rep.lu.has_value());
        CHECK(rep.lu->best_q.size() == 25);
    }
}

TEST_CASE("identical seeds reproduce the search trace exactly") {
    auto rng = seeded_rng(805);
    const std::array<CMatrix, 2> us{haar_unitary(3, rng), haar_unitary(3, rng)};
    const QState s = apply_local_unitaries(isotropic(3, 0.7), us);
    const Bipartition p = Bipartition::of(s.dims(), {0});
    const auto a = lu_enhanced_overlap(s, p, 40, 1234);
    const auto b = lu_enhanced_overlap(s, p, 40, 1234);
    REQUIRE(a.lu.has_value());
    REQUIRE(b.lu.has_value());
    CHECK(a.max_q == b.max_q);
    CHECK(a.lu->best_q == b.lu->best_q);

    // a scrambled state makes the climb path seed-sensitive
    const auto c = lu_enhanced_overlap(s, p, 40, 4321);
    CHECK(c.lu->best_q != a.lu->best_q);
}

TEST_CASE("a rotated Bell state recovers the maximal overlap immediately") {
    auto rng = seeded_rng(803);
    const std::array<CMatrix, 2> us{haar_unitary(2, rng), haar_unitary(2, rng)};
    const QState rotated = apply_local_unitaries(named_state("bell"), us);
    const auto rep = lu_enhanced_overlap(rotated, Bipartition::of(rotated.dims(), {0}), 1, 7);
    CHECK(rep.max_q == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("the LU search recovers a scrambled isotropic overlap") {
    auto rng = seeded_rng(804);
    const QState base = isotropic(3, 0.64);
    const Bipartition p = Bipartition::of(base.dims(), {0});
    const double target = distillable_chsh(base, p).max_q;
    REQUIRE(target > 0.2);

    const std::array<CMatrix, 2> us{haar_unitary(3, rng), haar_unitary(3, rng)};
    const QState scrambled = apply_local_unitaries(base, us);
    const double plain = distillable_chsh(scrambled, p).max_q;
    const auto rep = lu_enhanced_overlap(scrambled, p, 800, 20240);
    CHECK(rep.max_q >= plain - 1e-12);
    CHECK(std::abs(rep.max_q - target) < 1e-2);
}
