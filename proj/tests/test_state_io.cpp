#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "chshov/concurrence.hpp"
#include "chshov/families.hpp"
#include "chshov/state_io.hpp"
#include "testutil.hpp"

using namespace chshov;

namespace {

struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const char* stem) {
        path = std::filesystem::temp_directory_path() /
               (std::string("chshov_test_") + stem + "_" + std::to_string(::getpid()) + ".json");
    }
    ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("pure state round trip is exact") {
    auto rng = seeded_rng(901);
    const QState s = test::random_pure({2, 3}, rng);
    TempFile tmp("pure");
    save_state(s, tmp.path.string());
    const QState back = load_state(tmp.path.string());
    REQUIRE(back.is_pure());
    REQUIRE(back.dims() == s.dims());
    for (std::size_t i = 0; i < s.total_dim(); ++i)
        CHECK(back.amplitudes()[i] == s.amplitudes()[i]);
}

TEST_CASE("mixed state round trip is exact") {
    const QState s = isotropic(3, 0.37);
    TempFile tmp("mixed");
    save_state(s, tmp.path.string());
    const QState back = load_state(tmp.path.string());
    REQUIRE(!back.is_pure());
    for (std::size_t r = 0; r < 9; ++r)
        for (std::size_t c = 0; c < 9; ++c)
            CHECK(back.density_matrix()(r, c) == s.density_matrix()(r, c));
}

TEST_CASE("reloaded states reproduce in-memory results") {
    const QState s = ghz_noise(2, 0.8);
    TempFile tmp("recompute");
    save_state(s, tmp.path.string());
    const QState back = load_state(tmp.path.string());
    CHECK(std::abs(multipartite_concurrence_bound(back) - multipartite_concurrence_bound(s)) <
          1e-12);
}

TEST_CASE("schema field names are exactly kind, dims, data") {
    const auto j = state_to_json(named_state("bell"));
    auto it = j.begin();
    CHECK(it.key() == "kind");
    CHECK((++it).key() == "dims");
    CHECK((++it).key() == "data");
    CHECK(j["kind"] == "pure");
    CHECK(j["dims"] == nlohmann::ordered_json::array({2, 2}));
    CHECK(j["data"].size() == 4);
    CHECK(j["data"][0].size() == 2);
}

TEST_CASE("malformed documents raise format errors") {
    CHECK_THROWS_AS(state_from_json(nlohmann::json::array()), StateFormatError);
    CHECK_THROWS_AS(state_from_json({{"kind", "pure"}, {"dims", {2}}}), StateFormatError);
    CHECK_THROWS_AS(
        state_from_json({{"kind", "thermal"}, {"dims", {2}}, {"data", {{1.0, 0.0}, {0.0, 0.0}}}}),
        StateFormatError);
    CHECK_THROWS_AS(
        state_from_json({{"kind", "pure"}, {"dims", {2}}, {"data", {{1.0, 0.0}}}}),
        StateFormatError);
    CHECK_THROWS_AS(
        state_from_json({{"kind", "pure"}, {"dims", {2, 1}}, {"data", {{1.0, 0.0}, {0.0, 0.0}}}}),
        StateFormatError);
    CHECK_THROWS_AS(
        state_from_json({{"kind", "pure"}, {"dims", {2}}, {"data", {1.0, 0.0}}}),
        StateFormatError);
}

TEST_CASE("loading runs full validation and reports deviations") {
    TempFile tmp("invalid");
    {
        std::ofstream out(tmp.path);
        out << R"({"kind":"pure","dims":[2],"data":[[0.9,0.0],[0.0,0.0]]})";
    }
    CHECK_THROWS_WITH_AS(load_state(tmp.path.string()),
                         doctest::Contains("norm"), StateFormatError);
}

TEST_CASE("missing files raise format errors") {
    CHECK_THROWS_AS(load_state("/nonexistent/state.json"), StateFormatError);
}
