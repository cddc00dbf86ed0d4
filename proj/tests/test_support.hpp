#ifndef MCC_TEST_SUPPORT_HPP
#define MCC_TEST_SUPPORT_HPP

#include <algorithm>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "mcc/cost_model.hpp"
#include "mcc/fragment.hpp"
#include "mcc/graph.hpp"

namespace mcc::test {

/// Constant-velocity fragment from t0 to t1 at 10 Hz.
inline Fragment make_frag(const std::string& id, double t0, double t1, double x0,
                          double vx, double y, const std::string& label = "") {
    Fragment f;
    f.id = id;
    if (!label.empty()) f.gt_label = label;
    for (double t = t0; t <= t1 + 1e-9; t += 0.1)
        f.points.push_back(Point{t, x0 + (t - t0) * vx, y});
    return f;
}

/// Random small instance: a handful of "vehicles" each cut into fragments, so
/// true continuations exist alongside distractors.
inline std::vector<Fragment> random_instance(std::mt19937_64& rng, int max_frags) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Fragment> out;
    int n = 1 + (int)(unit(rng) * max_frags);
    int id = 0;
    while ((int)out.size() < n) {
        double t = unit(rng) * 20.0;
        double x = unit(rng) * 500.0;
        double v = 20.0 + unit(rng) * 20.0;
        double y = 6.0 + 12.0 * (int)(unit(rng) * 3);
        int pieces = 1 + (int)(unit(rng) * 3);
        for (int p = 0; p < pieces && (int)out.size() < n; ++p) {
            double dur = 0.5 + unit(rng) * 2.0;
            out.push_back(make_frag("f" + std::to_string(id++), t, t + dur, x, v, y));
            double gap = unit(rng) * 3.0 - 0.5;  // occasional overlap
            x += (dur + gap) * v;
            t += dur + gap;
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const Fragment& a, const Fragment& b) {
        if (a.last_t() != b.last_t()) return a.last_t() < b.last_t();
        return a.id < b.id;
    });
    return out;
}

inline CostConfig random_cost_config(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    CostConfig cfg;
    cfg.enter_cost = unit(rng) * 0.5;
    cfg.exit_cost = unit(rng) * 0.5;
    cfg.inclusion_cost = -unit(rng) * 0.5;
    cfg.time_gap_max = 2.0 + unit(rng) * 10.0;
    cfg.max_overlap = unit(rng) * 3.0;
    cfg.spatial_gate = 20.0 + unit(rng) * 60.0;
    cfg.transition_reward_floor = unit(rng) * 0.2;
    return cfg;
}

/// Exhaustive minimum simple-cycle cost over positive-capacity residual
/// edges; +infinity when the graph is acyclic. Independent of the solvers.
inline double min_cycle_cost_exhaustive(const ResidualGraph& g) {
    double best = std::numeric_limits<double>::infinity();
    int n = g.max_node_id();
    std::vector<char> on_path(n, 0);

    // Simple cycles are enumerated with their smallest node id as the start.
    std::function<void(NodeId, NodeId, double)> dfs = [&](NodeId start, NodeId u,
                                                          double cost) {
        g.for_each_residual_out(u, [&](ResidualEdgeRef r) {
            NodeId v = g.residual_to(r);
            double c = cost + g.residual_cost(r);
            if (v == start) {
                best = std::min(best, c);
                return;
            }
            if (v < start || on_path[v]) return;
            on_path[v] = 1;
            dfs(start, v, c);
            on_path[v] = 0;
        });
    };
    for (NodeId s = 0; s < n; ++s) {
        if (!g.node_alive(s)) continue;
        on_path[s] = 1;
        dfs(s, s, 0.0);
        on_path[s] = 0;
    }
    return best;
}

}  // namespace mcc::test

#endif
