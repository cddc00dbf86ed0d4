#include <doctest.h>

#include <map>
#include <set>

#include "mcc/simgen.hpp"
#include "mcc/errors.hpp"

using namespace mcc;

TEST_CASE("generator basics") {
    SimConfig cfg;
    cfg.n_vehicles = 25;
    cfg.seed = 7;

    SUBCASE("one trajectory per vehicle, valid points") {
        auto gt = generate_trajectories(cfg);
        REQUIRE(gt.size() == 25);
        for (const auto& f : gt) {
            REQUIRE_FALSE(f.points.empty());
            CHECK(f.gt_label == f.id);
            for (size_t i = 1; i < f.points.size(); ++i) {
                CHECK(f.points[i].t > f.points[i - 1].t);
                CHECK(f.points[i].x >= f.points[i - 1].x);
            }
            for (const auto& p : f.points) {
                CHECK(p.x >= 0);
                CHECK(p.x <= cfg.road_length);
                CHECK(p.y >= 0);
                CHECK(p.y <= cfg.n_lanes * cfg.lane_width);
            }
        }
    }
    SUBCASE("zero vehicles") {
        cfg.n_vehicles = 0;
        CHECK(generate_trajectories(cfg).empty());
    }
    SUBCASE("deterministic given seed") {
        auto a = generate_trajectories(cfg);
        auto b = generate_trajectories(cfg);
        REQUIRE(a.size() == b.size());
        for (size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].id == b[i].id);
            REQUIRE(a[i].points.size() == b[i].points.size());
            for (size_t k = 0; k < a[i].points.size(); ++k) {
                CHECK(a[i].points[k].t == b[i].points[k].t);
                CHECK(a[i].points[k].x == b[i].points[k].x);
                CHECK(a[i].points[k].y == b[i].points[k].y);
            }
        }
    }
    SUBCASE("invalid config rejected") {
        cfg.road_length = -1;
        CHECK_THROWS_AS(generate_trajectories(cfg), InvalidConfig);
    }
}

TEST_CASE("fragmentation") {
    SimConfig cfg;
    cfg.n_vehicles = 20;
    cfg.seed = 3;
    auto gt = generate_trajectories(cfg);

    SUBCASE("identity when no masks or cuts") {
        FragmentationConfig fcfg;
        fcfg.mask_intervals.clear();
        fcfg.cut_positions.clear();
        auto frags = fragment_trajectories(gt, fcfg);
        CHECK(frags.size() == gt.size());
        size_t gt_points = 0, frag_points = 0;
        for (const auto& f : gt) gt_points += f.points.size();
        for (const auto& f : frags) frag_points += f.points.size();
        CHECK(gt_points == frag_points);
    }

    SUBCASE("single mask splits a crossing trajectory in two") {
        Fragment t;
        t.id = "t";
        t.gt_label = "t";
        for (int i = 0; i <= 100; ++i)
            t.points.push_back(Point{i * 0.1, i * 20.0, 6.0});
        FragmentationConfig fcfg;
        fcfg.mask_intervals = {{900.0, 1100.0}};
        fcfg.cut_positions.clear();
        auto frags = fragment_trajectories({t}, fcfg);
        REQUIRE(frags.size() == 2);
        for (const auto& f : frags) {
            CHECK(f.gt_label == std::optional<std::string>("t"));
            for (const auto& p : f.points) CHECK((p.x < 900.0 || p.x > 1100.0));
        }
    }

    SUBCASE("camera-style degradation: coverage, labels, ordering") {
        FragmentationConfig fcfg;
        auto frags = fragment_trajectories(gt, fcfg);
        CHECK(frags.size() > gt.size());

        std::map<std::string, std::set<std::pair<double, double>>> gt_points;
        for (const auto& f : gt)
            for (const auto& p : f.points) gt_points[f.id].insert({p.t, p.x});
        double prev_last = -1e18;
        std::set<std::string> ids;
        for (const auto& f : frags) {
            REQUIRE(f.gt_label.has_value());
            CHECK(ids.insert(f.id).second);  // fresh unique ids
            // Coverage: every fragment point exists in its ground truth.
            for (const auto& p : f.points)
                CHECK(gt_points[*f.gt_label].count({p.t, p.x}));
            CHECK(f.last_t() >= prev_last);
            prev_last = f.last_t();
        }
    }
}
