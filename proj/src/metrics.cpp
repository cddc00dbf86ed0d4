#include "mcc/metrics.hpp"

#include <algorithm>

#include "mcc/errors.hpp"

namespace mcc {

EvalReport evaluate(const std::vector<Fragment>& gt,
                    const std::vector<Trajectory>& predicted,
                    const std::map<std::string, Fragment>& frag_index) {
    // Fragment id -> predicted trajectory index.
    std::map<std::string, int> member_of;
    for (size_t ti = 0; ti < predicted.size(); ++ti)
        for (const std::string& fid : predicted[ti].fragment_ids)
            member_of[fid] = (int)ti;

    // Group fragments by ground-truth label, in time order.
    std::map<std::string, std::vector<const Fragment*>> by_label;
    for (const auto& [id, f] : frag_index) {
        if (!f.gt_label) throw MissingLabel(id);
        by_label[*f.gt_label].push_back(&f);
    }
    for (auto& [label, frags] : by_label)
        std::sort(frags.begin(), frags.end(), [](const Fragment* a, const Fragment* b) {
            if (a->first_t() != b->first_t()) return a->first_t() < b->first_t();
            if (a->last_t() != b->last_t()) return a->last_t() < b->last_t();
            return a->id < b->id;
        });

    EvalReport report;
    report.n_distinct_predicted = (int)predicted.size();
    int total_transitions = 0, total_switches = 0, total_tracks = 0;
    for (const auto& [label, frags] : by_label) {
        GtRow row;
        row.label = label;
        row.n_fragments = (int)frags.size();
        int prev = -2;  // -1 = unassociated, -2 = before first
        for (const Fragment* f : frags) {
            auto it = member_of.find(f->id);
            int cur = it == member_of.end() ? -1 : it->second;
            if (cur == -1) ++row.n_unassociated;
            if (cur != -1 && (prev == -2 || cur != prev)) ++row.n_tracks;
            if (prev >= 0 && cur >= 0 && cur != prev) ++row.n_switches;
            prev = cur;
        }
        // Interruption events: same-GT consecutive fragments split across
        // trajectories, plus fragments left out entirely.
        int transitions = std::max(0, row.n_tracks - 1) + row.n_unassociated;
        total_transitions += transitions;
        total_switches += row.n_switches;
        total_tracks += row.n_tracks;
        report.per_gt.push_back(std::move(row));
    }
    double n_gt = std::max<double>(1.0, (double)gt.size());
    if (gt.empty() && by_label.empty()) n_gt = 1.0;
    report.fragments_per_gt = total_transitions / n_gt;
    report.fragments_per_gt_count = total_tracks / n_gt;
    report.switches_per_gt = total_switches / n_gt;
    return report;
}

}  // namespace mcc
