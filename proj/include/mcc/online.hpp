#ifndef MCC_ONLINE_HPP
#define MCC_ONLINE_HPP

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mcc/cost_model.hpp"
#include "mcc/fragment.hpp"
#include "mcc/graph.hpp"

namespace mcc {

/// Per-iteration size and phase timing record.
struct StatsRow {
    int k = 0;
    int node_count = 0;
    int edge_count = 0;
    double t_add_node = 0.0;
    double t_find_min_cycle = 0.0;
    double t_push_flow = 0.0;
    double t_clean_graph = 0.0;
};

struct OnlineOptions {
    std::optional<double> window;  // seconds; absent = unbounded
    bool strict_order = true;
    double eps_cycle = ResidualGraph::kDefaultEpsCycle;
};

/// Shortest path from the source over positive-capacity residual edges, by
/// queue-based label correcting (residual costs may be negative). Absent when
/// the target is unreachable. Requires that no negative cycle lies on any
/// source-to-target path.
std::optional<std::pair<std::vector<ResidualEdgeRef>, double>> shortest_path_from_source(
    const ResidualGraph& g, NodeId target);

/// The least-cost cycle through the newly added fragment: shortest path from
/// the source to its pre node, closed through the inclusion and exiting edges.
/// Absent when that cycle is not negative.
std::optional<Cycle> find_min_cycle(const ResidualGraph& g, NodeId u_k, NodeId v_k,
                                    double eps = ResidualGraph::kDefaultEpsCycle);

/// Streaming negative cycle canceling over fragments ordered by last
/// timestamp, with an optional eviction window bounding graph size.
class OnlineSolver {
public:
    OnlineSolver(CostConfig cfg, OnlineOptions opts);

    /// Admits one fragment, cancels the min cycle if negative, then evicts
    /// timed-out circulations. Returns the trajectories emitted this step.
    std::vector<Trajectory> step(const Fragment& frag);

    /// Remaining circulations as trajectories; together with emitted() this is
    /// the full output.
    std::vector<Trajectory> finalize() const;

    const ResidualGraph& graph() const { return graph_; }
    const std::vector<StatsRow>& stats() const { return stats_; }
    const std::vector<Trajectory>& emitted() const { return emitted_; }
    const std::vector<std::string>& unassociated() const { return unassociated_; }
    bool certified() const { return certified_; }

private:
    std::vector<Trajectory> clean_graph(double now);

    CostConfig cfg_;
    OnlineOptions opts_;
    ResidualGraph graph_;
    std::map<std::string, Fragment> live_;  // ordered for deterministic scans
    double last_admitted_t_ = -std::numeric_limits<double>::infinity();
    int k_ = 0;
    std::vector<StatsRow> stats_;
    std::vector<Trajectory> emitted_;
    std::vector<std::string> unassociated_;  // timed out without ever carrying flow
    bool certified_ = true;  // false once an out-of-order fragment is admitted
};

}  // namespace mcc

#endif
