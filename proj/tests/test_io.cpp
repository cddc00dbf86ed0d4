#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "mcc/io.hpp"
#include "mcc/errors.hpp"
#include "test_support.hpp"

using namespace mcc;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& contents) {
        path = std::string(std::tmpnam(nullptr)) + ".json";
        std::ofstream os(path);
        os << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("fragment JSONL round-trip preserves full precision") {
    std::mt19937_64 rng(1);
    auto frags = mcc::test::random_instance(rng, 8);
    frags[0].gt_label = "veh0001";
    std::stringstream ss;
    io::write_fragments_jsonl(ss, frags);
    auto back = io::read_fragments_jsonl(ss);
    REQUIRE(back.size() == frags.size());
    for (size_t i = 0; i < frags.size(); ++i) {
        CHECK(back[i].id == frags[i].id);
        CHECK(back[i].gt_label == frags[i].gt_label);
        REQUIRE(back[i].points.size() == frags[i].points.size());
        for (size_t k = 0; k < frags[i].points.size(); ++k) {
            CHECK(back[i].points[k].t == frags[i].points[k].t);
            CHECK(back[i].points[k].x == frags[i].points[k].x);
            CHECK(back[i].points[k].y == frags[i].points[k].y);
        }
    }
}

TEST_CASE("trajectory JSONL round-trip") {
    std::vector<Trajectory> trajs = {
        Trajectory{{"f1", "f3"}, 0.0, 11.0},
        Trajectory{{"f2"}, 1.0, 6.5},
    };
    std::stringstream ss;
    io::write_trajectories_jsonl(ss, trajs);
    auto back = io::read_trajectories_jsonl(ss);
    REQUIRE(back.size() == 2);
    CHECK(back[0].fragment_ids == trajs[0].fragment_ids);
    CHECK(back[1].first_t == trajs[1].first_t);
}

TEST_CASE("stats CSV round-trip and header check") {
    std::vector<StatsRow> rows = {
        StatsRow{1, 3, 3, 1e-5, 2e-6, 3e-7, 0.0},
        StatsRow{2, 5, 8, 1.5e-5, 2.5e-6, 0.0, 4e-6},
    };
    std::stringstream ss;
    io::write_stats_csv(ss, rows);
    auto back = io::read_stats_csv(ss);
    REQUIRE(back.size() == 2);
    CHECK(back[1].k == 2);
    CHECK(back[1].edge_count == 8);
    CHECK(back[0].t_add_node == doctest::Approx(1e-5));

    std::stringstream bad("not,a,header\n");
    CHECK_THROWS_AS(io::read_stats_csv(bad), InvalidConfig);
}

TEST_CASE("config loading") {
    SUBCASE("defaults survive an empty config") {
        TempFile f("{}");
        auto cfg = io::load_config(f.path);
        CHECK(cfg.sim.n_vehicles == 137);
        CHECK(cfg.cost.inclusion_cost == doctest::Approx(-1e-6));
        CHECK(cfg.solver.window_seconds == doctest::Approx(5.0));
        CHECK(cfg.fragmentation.cut_positions == std::vector<double>{700.0, 1400.0});
    }
    SUBCASE("overrides and comments") {
        TempFile f(R"({
            // benchmark-scale run
            "sim": {"n_vehicles": 10, "seed": 99},
            "cost": {"beta": 0.1},
            "solver": {"mode": "offline", "strict_order": false}
        })");
        auto cfg = io::load_config(f.path);
        CHECK(cfg.sim.n_vehicles == 10);
        CHECK(cfg.sim.seed == 99);
        REQUIRE(cfg.cost.beta.has_value());
        CHECK(*cfg.cost.beta == doctest::Approx(0.1));
        CHECK(cfg.solver.mode == "offline");
        CHECK_FALSE(cfg.solver.strict_order);
    }
    SUBCASE("unknown keys rejected") {
        TempFile f(R"({"sim": {"vehicles": 10}})");
        CHECK_THROWS_AS(io::load_config(f.path), InvalidConfig);
    }
    SUBCASE("malformed JSON rejected") {
        TempFile f("{nope");
        CHECK_THROWS_AS(io::load_config(f.path), InvalidConfig);
    }
    SUBCASE("missing file rejected") {
        CHECK_THROWS_AS(io::load_config("/nonexistent/cfg.json"), InvalidConfig);
    }
}
