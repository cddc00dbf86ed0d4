#include <doctest.h>

#include <cmath>
#include <random>

#include "mcc/cost_model.hpp"
#include "mcc/errors.hpp"
#include "test_support.hpp"

using namespace mcc;
using mcc::test::make_frag;

TEST_CASE("inclusion cost") {
    CostConfig cfg;
    Fragment f = make_frag("f", 0, 1, 0, 30, 6);

    SUBCASE("beta closed form") {
        cfg.beta = 0.5;
        CHECK(inclusion_cost(cfg, f) == doctest::Approx(0.0));
        cfg.beta = 0.1;
        CHECK(inclusion_cost(cfg, f) == doctest::Approx(-std::log(9.0)));
        cfg.beta = 1.5;
        CHECK_THROWS_AS(inclusion_cost(cfg, f), InvalidBeta);
        cfg.beta = 0.0;
        CHECK_THROWS_AS(inclusion_cost(cfg, f), InvalidBeta);
    }
    SUBCASE("experiment constant") {
        cfg.inclusion_cost = -1e-6;
        CHECK(inclusion_cost(cfg, f) == doctest::Approx(-1e-6));
    }
    SUBCASE("strictly increasing in beta") {
        double prev = -1e18;
        for (double b = 0.05; b < 1.0; b += 0.05) {
            cfg.beta = b;
            double c = inclusion_cost(cfg, f);
            CHECK(c > prev);
            prev = c;
        }
    }
}

TEST_CASE("enter/exit costs come from configuration") {
    CostConfig cfg;
    Fragment f = make_frag("f", 0, 1, 0, 30, 6);
    CHECK(enter_exit_costs(cfg, f) == std::pair{0.0, 0.0});
    cfg.enter_cost = 2.0;  // P_enter = e^-2
    cfg.exit_cost = 0.5;
    CHECK(enter_exit_costs(cfg, f) == std::pair{2.0, 0.5});
}

TEST_CASE("transition cost: exact continuation scores the floor reward") {
    CostConfig cfg;
    // pred ends at (t=10, x=100) moving 30 ft/s; succ continues the same line.
    Fragment pred = make_frag("p", 5, 10, 100 - 5 * 30, 30, 6);
    Fragment succ = make_frag("s", 11, 14, 130, 30, 6);
    auto c = transition_cost(cfg, pred, succ);
    REQUIRE(c.has_value());
    CHECK(*c == doctest::Approx(-cfg.transition_reward_floor).epsilon(1e-9));
}

TEST_CASE("transition gating") {
    CostConfig cfg;
    Fragment pred = make_frag("p", 0, 10, 0, 30, 6);

    SUBCASE("time gap beyond maximum") {
        Fragment succ = make_frag("s", 10 + cfg.time_gap_max + 1, 30 + cfg.time_gap_max,
                                  300, 30, 6);
        CHECK_FALSE(transition_cost(cfg, pred, succ).has_value());
    }
    SUBCASE("overlap beyond maximum") {
        Fragment succ = make_frag("s", 10 - cfg.max_overlap - 1, 12, 0, 30, 6);
        CHECK_FALSE(transition_cost(cfg, pred, succ).has_value());
    }
    SUBCASE("lateral offset beyond the spatial gate") {
        Fragment succ = make_frag("s", 11, 14, 330, 30, 6 + cfg.spatial_gate + 5);
        CHECK_FALSE(transition_cost(cfg, pred, succ).has_value());
    }
    SUBCASE("never both directions for distinct timestamps") {
        std::mt19937_64 rng(3);
        for (int i = 0; i < 50; ++i) {
            auto frags = mcc::test::random_instance(rng, 2);
            if (frags.size() < 2) continue;
            if (frags[0].last_t() == frags[1].last_t()) continue;
            bool ab = transition_cost(cfg, frags[0], frags[1]).has_value();
            bool ba = transition_cost(cfg, frags[1], frags[0]).has_value();
            CHECK_FALSE((ab && ba));
        }
    }
}

TEST_CASE("cost is monotone in position discrepancy") {
    CostConfig cfg;
    Fragment pred = make_frag("p", 5, 10, 0, 30, 6);
    double prev = -1e18;
    for (double off = 0; off <= 40; off += 5) {
        Fragment succ = make_frag("s", 11, 14, 180 + off, 30, 6);
        auto c = transition_cost(cfg, pred, succ);
        REQUIRE(c.has_value());
        CHECK(*c >= prev);
        prev = *c;
    }
}

TEST_CASE("candidate predecessors") {
    CostConfig cfg;
    Fragment f1 = make_frag("f1", 0, 5, 0, 30, 6);
    Fragment f3 = make_frag("f3", 6, 10, 180, 30, 18);
    Fragment far = make_frag("f0", 0, 2, 1500, 30, 6);  // spatially gated out
    Fragment succ = make_frag("f5", 11, 14, 330, 30, 6);

    SUBCASE("gated set, ordered by id") {
        auto cands = candidate_predecessors(cfg, {&f3, &f1, &far}, succ);
        REQUIRE(cands.size() == 2);
        CHECK(cands[0].first == "f1");
        CHECK(cands[1].first == "f3");
    }
    SUBCASE("empty live set") {
        CHECK(candidate_predecessors(cfg, {}, succ).empty());
    }
    SUBCASE("all timed out") {
        Fragment late = make_frag("f9", 100, 105, 0, 30, 6);
        auto cands = candidate_predecessors(cfg, {&f1, &f3}, late);
        CHECK(cands.empty());
    }
}
