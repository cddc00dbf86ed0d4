#include "mcc/online.hpp"

#include <algorithm>
#include <chrono>
#include <deque>

#include "mcc/errors.hpp"

namespace mcc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTieTol = 1e-12;

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}
}  // namespace

std::optional<std::pair<std::vector<ResidualEdgeRef>, double>> shortest_path_from_source(
    const ResidualGraph& g, NodeId target) {
    const int n = g.max_node_id();
    // Scratch space reused across calls; this routine runs once per step and
    // allocation would otherwise dominate its runtime on small graphs.
    struct Scratch {
        std::vector<double> dist;  // shortest residual cost from node to target
        std::vector<int> hops;
        std::vector<ResidualEdgeRef> child;  // first edge towards the target
        std::vector<NodeId> child_node;
        std::vector<char> in_queue;
        std::deque<NodeId> queue;
    };
    static thread_local Scratch scratch;
    auto& [dist, hops, child, child_node, in_queue, queue] = scratch;
    dist.assign(n, kInf);
    hops.assign(n, 0);
    child.assign(n, ResidualEdgeRef{});
    child_node.assign(n, -1);
    in_queue.assign(n, 0);

    // Label-correcting search backwards from the target: it only touches the
    // target's residual neighbourhood instead of the whole graph. Labels never
    // spiral: any negative cycle runs through the target's untaken inclusion
    // edge and through the source, and the source is never expanded.
    NodeId s = g.source();
    dist[target] = 0.0;
    queue.clear();
    queue.push_back(target);
    in_queue[target] = 1;

    while (!queue.empty()) {
        NodeId y = queue.front();
        queue.pop_front();
        in_queue[y] = 0;
        if (y == s) continue;  // paths start at the source; do not extend past it
        g.visit_residual_in(y, [&](ResidualEdgeRef r) {
            NodeId x = g.residual_from(r);
            double nd = g.residual_cost(r) + dist[y];
            int nh = hops[y] + 1;
            bool better = nd < dist[x] - kTieTol;
            // Deterministic tie-break: fewer edges, then lower successor id.
            bool tie = !better && nd < dist[x] + kTieTol &&
                       (nh < hops[x] || (nh == hops[x] && y < child_node[x]));
            if (better || tie) {
                dist[x] = better ? nd : dist[x];
                hops[x] = nh;
                child[x] = r;
                child_node[x] = y;
                if (!in_queue[x]) {
                    // Smaller-label-first keeps promising nodes near the
                    // front, cutting re-relaxations on negative edges.
                    if (!queue.empty() && dist[x] < dist[queue.front()])
                        queue.push_front(x);
                    else
                        queue.push_back(x);
                    in_queue[x] = 1;
                }
            }
        });
    }

    if (dist[s] == kInf) return std::nullopt;
    std::vector<ResidualEdgeRef> path;
    for (NodeId cur = s; cur != target; cur = child_node[cur]) path.push_back(child[cur]);
    return std::make_pair(std::move(path), dist[s]);
}

std::optional<Cycle> find_min_cycle(const ResidualGraph& g, NodeId u_k, NodeId v_k,
                                    double eps) {
    auto sp = shortest_path_from_source(g, u_k);
    if (!sp) return std::nullopt;

    // The closing subpath u_k -> v_k -> s is unique and zero-flow.
    int incl_edge = -1, exit_edge = -1;
    g.for_each_residual_out(u_k, [&](ResidualEdgeRef r) {
        if (!r.reverse && g.edge(r.edge).kind == EdgeKind::Inclusion) incl_edge = r.edge;
    });
    g.for_each_residual_out(v_k, [&](ResidualEdgeRef r) {
        if (!r.reverse && g.edge(r.edge).kind == EdgeKind::Exiting) exit_edge = r.edge;
    });
    if (incl_edge == -1 || exit_edge == -1) return std::nullopt;

    double total = sp->second + g.edge(incl_edge).cost + g.edge(exit_edge).cost;
    if (!(total < -eps)) return std::nullopt;

    Cycle c;
    c.edges = std::move(sp->first);
    c.edges.push_back(ResidualEdgeRef{incl_edge, false});
    c.edges.push_back(ResidualEdgeRef{exit_edge, false});
    c.total_cost = total;
    return c;
}

OnlineSolver::OnlineSolver(CostConfig cfg, OnlineOptions opts)
    : cfg_(std::move(cfg)), opts_(opts) {}

std::vector<Trajectory> OnlineSolver::step(const Fragment& frag) {
    if (frag.last_t() < last_admitted_t_) {
        if (opts_.strict_order)
            throw OutOfOrderFragment(frag.id + " last_t " + std::to_string(frag.last_t()) +
                                     " < " + std::to_string(last_admitted_t_));
        certified_ = false;
    }
    last_admitted_t_ = std::max(last_admitted_t_, frag.last_t());
    ++k_;
    StatsRow row;
    row.k = k_;

    // AddNode: candidate gating over the live set, then graph insertion.
    auto t0 = std::chrono::steady_clock::now();
    std::vector<const Fragment*> live;
    live.reserve(live_.size());
    for (const auto& [id, f] : live_) live.push_back(&f);
    auto cands = candidate_predecessors(cfg_, live, frag);
    std::vector<std::pair<NodeId, double>> preds;
    preds.reserve(cands.size());
    for (const auto& [id, cost] : cands) preds.emplace_back(graph_.post_node(id), cost);
    auto [en, ex] = enter_exit_costs(cfg_, frag);
    auto [u_k, v_k] = graph_.add_fragment_node(frag.id, frag.first_t(), frag.last_t(), en,
                                               ex, inclusion_cost(cfg_, frag), preds);
    live_.emplace(frag.id, frag);
    row.t_add_node = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    std::optional<Cycle> cycle;
    if (preds.empty()) {
        // No transition edge enters u_k and its inclusion edge has no flow
        // yet, so the entering edge is the only residual path from s to u_k:
        // the minimum cycle is s -> u_k -> v_k -> s, no search needed.
        auto [en_e, incl_e, ex_e] = graph_.structural_edges(frag.id);
        double total = graph_.edge(en_e).cost + graph_.edge(incl_e).cost +
                       graph_.edge(ex_e).cost;
        if (total < -opts_.eps_cycle)
            cycle = Cycle{{{en_e, false}, {incl_e, false}, {ex_e, false}}, total};
    } else {
        cycle = find_min_cycle(graph_, u_k, v_k, opts_.eps_cycle);
    }
    row.t_find_min_cycle = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    if (cycle) graph_.push_flow(*cycle);
    row.t_push_flow = seconds_since(t0);

    std::vector<Trajectory> out;
    t0 = std::chrono::steady_clock::now();
    if (opts_.window) out = clean_graph(frag.last_t());
    row.t_clean_graph = seconds_since(t0);

    row.node_count = graph_.node_count();
    row.edge_count = graph_.edge_count();
    stats_.push_back(row);
    return out;
}

std::vector<Trajectory> OnlineSolver::clean_graph(double now) {
    double cutoff = now - *opts_.window;
    std::vector<Trajectory> out;

    // Evict circulations whose tail timed out.
    auto tails = graph_.flow_tails();
    std::sort(tails.begin(), tails.end());  // deterministic order
    for (const auto& [post, last_t] : tails) {
        if (last_t >= cutoff) continue;
        Trajectory t = graph_.remove_circulation(post);
        for (const std::string& id : t.fragment_ids) live_.erase(id);
        emitted_.push_back(t);
        out.push_back(std::move(t));
    }

    // Drop timed-out fragments that never joined any circulation, so the
    // memory bound holds even for never-included fragments.
    std::vector<std::string> stale;
    for (const auto& [id, f] : live_)
        if (f.last_t() < cutoff && !graph_.fragment_has_flow(id)) stale.push_back(id);
    for (const std::string& id : stale) {
        graph_.remove_zero_flow_fragment(id);
        live_.erase(id);
        unassociated_.push_back(id);
    }
    return out;
}

std::vector<Trajectory> OnlineSolver::finalize() const {
    return graph_.extract_trajectories();
}

}  // namespace mcc
