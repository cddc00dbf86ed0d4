#ifndef MCC_METRICS_HPP
#define MCC_METRICS_HPP

#include <map>
#include <string>
#include <vector>

#include "mcc/fragment.hpp"
#include "mcc/graph.hpp"

namespace mcc {

struct GtRow {
    std::string label;
    int n_fragments = 0;
    int n_tracks = 0;      // distinct maximal same-trajectory runs
    int n_switches = 0;    // consecutive fragments in different trajectories
    int n_unassociated = 0;
};

/// Association quality against ground-truth labels. Two fragmentation
/// conventions are reported: `fragments_per_gt` counts interruption events
/// (different-trajectory pairs plus unassociated fragments; 0 when perfect),
/// while `fragments_per_gt_count` counts tracked pieces per ground truth (1
/// when perfect, matching raw fragment tallies).
struct EvalReport {
    int n_distinct_predicted = 0;
    double fragments_per_gt = 0.0;
    double fragments_per_gt_count = 0.0;
    double switches_per_gt = 0.0;
    std::vector<GtRow> per_gt;
};

EvalReport evaluate(const std::vector<Fragment>& gt,
                    const std::vector<Trajectory>& predicted,
                    const std::map<std::string, Fragment>& frag_index);

}  // namespace mcc

#endif
