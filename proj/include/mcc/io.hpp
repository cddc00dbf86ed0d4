#ifndef MCC_IO_HPP
#define MCC_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "mcc/cost_model.hpp"
#include "mcc/fragment.hpp"
#include "mcc/graph.hpp"
#include "mcc/online.hpp"
#include "mcc/simgen.hpp"

namespace mcc::io {

/// Solver options as configured on disk.
struct SolverConfig {
    std::string mode = "online-bounded";  // online | online-bounded | offline | brute
    double window_seconds = 5.0;
    bool strict_order = true;
    double eps_cycle = ResidualGraph::kDefaultEpsCycle;
};

struct AppConfig {
    SimConfig sim;
    FragmentationConfig fragmentation;
    CostConfig cost;
    SolverConfig solver;
};

/// Parses the JSON config file (comments allowed); missing keys keep their
/// defaults, unknown keys are rejected.
AppConfig load_config(const std::string& path);

// Fragments: one JSON object per line,
// {"id": ..., "gt_label": ..., "points": [[t,x,y],...]}.
void write_fragments_jsonl(std::ostream& os, const std::vector<Fragment>& frags);
std::vector<Fragment> read_fragments_jsonl(std::istream& is);

// Trajectories: {"id": n, "fragments": [...], "first_t": ..., "last_t": ...}.
void write_trajectories_jsonl(std::ostream& os, const std::vector<Trajectory>& trajs);
std::vector<Trajectory> read_trajectories_jsonl(std::istream& is);

// Per-iteration stats CSV with a fixed header.
void write_stats_csv(std::ostream& os, const std::vector<StatsRow>& rows);
std::vector<StatsRow> read_stats_csv(std::istream& is);

}  // namespace mcc::io

#endif
