#ifndef MCC_OFFLINE_HPP
#define MCC_OFFLINE_HPP

#include <optional>
#include <vector>

#include "mcc/cost_model.hpp"
#include "mcc/fragment.hpp"
#include "mcc/graph.hpp"

namespace mcc {

struct SolveResult {
    std::vector<Trajectory> trajectories;
    double total_cost = 0.0;
};

/// Builds the full zero-flow circulation graph: fragments are admitted in
/// last-timestamp order, each with every gated transition edge from earlier
/// fragments.
ResidualGraph construct_circulation_graph(const std::vector<Fragment>& frags,
                                          const CostConfig& cfg);

/// First negative cycle found by Bellman-Ford with parent-pointer recovery,
/// or absent when the circulation is optimal.
std::optional<Cycle> find_negative_cycle(
    const ResidualGraph& g, double eps = ResidualGraph::kDefaultEpsCycle);

/// Batch negative cycle canceling: cancel until no negative cycle remains,
/// then read the trajectories off the flow.
SolveResult solve_offline(const std::vector<Fragment>& frags, const CostConfig& cfg);

/// Exhaustive oracle over every chain partition; instances of at most 10
/// fragments.
SolveResult brute_force_solve(const std::vector<Fragment>& frags, const CostConfig& cfg);

}  // namespace mcc

#endif
