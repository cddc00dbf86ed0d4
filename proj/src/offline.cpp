#include "mcc/offline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "mcc/errors.hpp"

namespace mcc {

namespace {
constexpr double kRelaxTol = 1e-12;

std::vector<const Fragment*> sorted_by_last_t(const std::vector<Fragment>& frags) {
    std::vector<const Fragment*> order;
    order.reserve(frags.size());
    for (const Fragment& f : frags) order.push_back(&f);
    std::stable_sort(order.begin(), order.end(), [](const Fragment* a, const Fragment* b) {
        if (a->last_t() != b->last_t()) return a->last_t() < b->last_t();
        return a->id < b->id;
    });
    return order;
}
}  // namespace

ResidualGraph construct_circulation_graph(const std::vector<Fragment>& frags,
                                          const CostConfig& cfg) {
    ResidualGraph g;
    std::vector<const Fragment*> live;
    for (const Fragment* f : sorted_by_last_t(frags)) {
        auto cands = candidate_predecessors(cfg, live, *f);
        std::vector<std::pair<NodeId, double>> preds;
        preds.reserve(cands.size());
        for (const auto& [id, cost] : cands) preds.emplace_back(g.post_node(id), cost);
        auto [en, ex] = enter_exit_costs(cfg, *f);
        g.add_fragment_node(f->id, f->first_t(), f->last_t(), en, ex,
                            inclusion_cost(cfg, *f), preds);
        live.push_back(f);
    }
    return g;
}

std::optional<Cycle> find_negative_cycle(const ResidualGraph& g, double eps) {
    const int n = g.max_node_id();
    std::vector<double> dist(n, 0.0);
    std::vector<ResidualEdgeRef> parent(n, ResidualEdgeRef{});
    std::vector<NodeId> parent_node(n, -1);

    std::vector<ResidualEdgeRef> residuals;
    for (int id : g.edge_ids())
        residuals.push_back(ResidualEdgeRef{id, g.edge(id).flow == 1});

    std::vector<NodeId> relaxed;
    for (int pass = 0; pass <= n; ++pass) {
        relaxed.clear();
        for (const ResidualEdgeRef& r : residuals) {
            NodeId u = g.residual_from(r), v = g.residual_to(r);
            double nd = dist[u] + g.residual_cost(r);
            if (nd < dist[v] - kRelaxTol) {
                dist[v] = nd;
                parent[v] = r;
                parent_node[v] = u;
                relaxed.push_back(v);
            }
        }
        if (relaxed.empty()) return std::nullopt;
    }

    for (NodeId seed : relaxed) {
        NodeId cur = seed;
        for (int i = 0; i < n; ++i) cur = parent_node[cur];
        Cycle c;
        NodeId start = cur;
        do {
            c.edges.push_back(parent[cur]);
            c.total_cost += g.residual_cost(parent[cur]);
            cur = parent_node[cur];
        } while (cur != start);
        // Parent walk goes head-to-tail; flip to forward edge order.
        std::reverse(c.edges.begin(), c.edges.end());
        if (c.total_cost < -eps) return c;
    }
    return std::nullopt;
}

SolveResult solve_offline(const std::vector<Fragment>& frags, const CostConfig& cfg) {
    ResidualGraph g = construct_circulation_graph(frags, cfg);
    // Each cancellation strictly lowers the flow cost; unit capacities bound
    // the number of distinct flows by 2^|E|, but in practice |E| iterations
    // suffice. Guard generously.
    long max_iters = 100L * (g.edge_count() + 1) + 1000;
    long iters = 0;
    while (auto cycle = find_negative_cycle(g)) {
        g.push_flow(*cycle);
        if (++iters > max_iters)
            throw SolverStall("offline canceling after " + std::to_string(iters) +
                              " iterations");
    }
    return SolveResult{g.extract_trajectories(), g.total_flow_cost()};
}

namespace {

struct ChainState {
    int tail = -1;        // index into order
    double cost = 0.0;    // enter + inclusions + transitions so far
    std::vector<int> members;
};

struct BruteSearch {
    const std::vector<const Fragment*>& order;
    const CostConfig& cfg;
    std::vector<std::vector<std::optional<double>>> trans;  // [pred][succ]
    double enter, exit;
    std::vector<double> incl;

    double best_cost = 0.0;  // empty assignment is always feasible at cost 0
    std::vector<std::vector<int>> best_chains;

    void recurse(size_t k, std::vector<ChainState>& chains, double open_cost) {
        if (k == order.size()) {
            double total = open_cost + (double)chains.size() * exit;
            if (total < best_cost - 1e-15) {
                best_cost = total;
                best_chains.clear();
                for (const ChainState& c : chains) best_chains.push_back(c.members);
            }
            return;
        }
        // Skip fragment k.
        recurse(k + 1, chains, open_cost);
        // Start a new chain with k.
        chains.push_back(ChainState{(int)k, 0.0, {(int)k}});
        recurse(k + 1, chains, open_cost + enter + incl[k]);
        chains.pop_back();
        // Append k to an existing chain tail.
        for (ChainState& c : chains) {
            auto tc = trans[c.tail][k];
            if (!tc) continue;
            int old_tail = c.tail;
            c.tail = (int)k;
            c.members.push_back((int)k);
            recurse(k + 1, chains, open_cost + *tc + incl[k]);
            c.members.pop_back();
            c.tail = old_tail;
        }
    }
};

}  // namespace

SolveResult brute_force_solve(const std::vector<Fragment>& frags, const CostConfig& cfg) {
    if (frags.size() > 10)
        throw TooLarge(std::to_string(frags.size()) + " fragments (max 10)");
    std::vector<const Fragment*> order = sorted_by_last_t(frags);
    const size_t n = order.size();

    BruteSearch s{order, cfg, {}, 0.0, 0.0, {}, 0.0, {}};
    s.trans.assign(n, std::vector<std::optional<double>>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            s.trans[i][j] = transition_cost(cfg, *order[i], *order[j]);
    if (n > 0) {
        auto [en, ex] = enter_exit_costs(cfg, *order[0]);
        s.enter = en;
        s.exit = ex;
    }
    for (size_t i = 0; i < n; ++i) s.incl.push_back(inclusion_cost(cfg, *order[i]));

    std::vector<ChainState> chains;
    s.recurse(0, chains, 0.0);

    SolveResult result;
    result.total_cost = s.best_cost;
    for (const auto& members : s.best_chains) {
        Trajectory t;
        for (int idx : members) t.fragment_ids.push_back(order[idx]->id);
        t.first_t = order[members.front()]->first_t();
        t.last_t = order[members.back()]->last_t();
        result.trajectories.push_back(std::move(t));
    }
    // Lexicographic order for stable oracle comparisons.
    std::sort(result.trajectories.begin(), result.trajectories.end(),
              [](const Trajectory& a, const Trajectory& b) {
                  return a.fragment_ids < b.fragment_ids;
              });
    return result;
}

}  // namespace mcc
