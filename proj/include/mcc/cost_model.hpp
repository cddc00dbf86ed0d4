#ifndef MCC_COST_MODEL_HPP
#define MCC_COST_MODEL_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mcc/fragment.hpp"

namespace mcc {

/// Edge-cost configuration. Costs are negative log probabilities; transitions
/// use a constant-velocity least-squares motion score.
struct CostConfig {
    double enter_cost = 0.0;
    double exit_cost = 0.0;
    // If beta is set, the inclusion cost is -log((1-beta)/beta); otherwise the
    // constant below is used directly.
    std::optional<double> beta;
    double inclusion_cost = -1e-6;

    // Transition gating.
    double time_gap_max = 15.0;  // seconds
    double max_overlap = 12.0;   // seconds
    double spatial_gate = 60.0;  // feet

    // Motion model.
    double sigma_x = 10.0;  // feet
    double sigma_y = 10.0;  // feet
    double transition_reward_floor = 1e-3;
    int fit_window = 10;  // points used on each side of the junction
};

double inclusion_cost(const CostConfig& cfg, const Fragment& frag);

std::pair<double, double> enter_exit_costs(const CostConfig& cfg, const Fragment& frag);

/// Motion-model transition cost for succ continuing pred, or absent when the
/// pair is gated out (time gap, overlap, or spatial discrepancy).
std::optional<double> transition_cost(const CostConfig& cfg, const Fragment& pred,
                                      const Fragment& succ);

/// The live fragments that pass gating against new_frag, paired with their
/// transition cost, ordered by fragment id.
std::vector<std::pair<std::string, double>> candidate_predecessors(
    const CostConfig& cfg, const std::vector<const Fragment*>& live,
    const Fragment& new_frag);

}  // namespace mcc

#endif
