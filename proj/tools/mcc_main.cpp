#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mcc/errors.hpp"
#include "mcc/io.hpp"
#include "mcc/metrics.hpp"
#include "mcc/offline.hpp"
#include "mcc/online.hpp"
#include "mcc/simgen.hpp"

namespace {

constexpr int kExitBadConfig = 2;
constexpr int kExitOutOfOrder = 3;
constexpr int kExitSolverStall = 4;
constexpr int kExitMissingLabel = 5;

std::vector<mcc::Fragment> load_fragments(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return mcc::io::read_fragments_jsonl(in);
}

int cmd_generate(const std::string& config_path, const std::string& out_gt,
                 const std::string& out_frag, std::optional<std::uint64_t> seed) {
    mcc::io::AppConfig cfg = mcc::io::load_config(config_path);
    if (seed) {
        cfg.sim.seed = *seed;
        cfg.fragmentation.seed = *seed;
    }
    auto gt = mcc::generate_trajectories(cfg.sim);
    auto frags = mcc::fragment_trajectories(gt, cfg.fragmentation);
    {
        std::ofstream os(out_gt);
        if (!os) throw std::runtime_error("cannot write " + out_gt);
        mcc::io::write_fragments_jsonl(os, gt);
    }
    {
        std::ofstream os(out_frag);
        if (!os) throw std::runtime_error("cannot write " + out_frag);
        mcc::io::write_fragments_jsonl(os, frags);
    }
    std::cout << gt.size() << " trajectories, " << frags.size() << " fragments\n";
    return 0;
}

int cmd_associate(const std::string& frag_path, const std::string& config_path,
                  const std::string& mode_flag, const std::string& out_traj,
                  const std::string& out_stats, std::optional<double> window_flag,
                  std::optional<bool> strict_flag) {
    mcc::io::AppConfig cfg = mcc::io::load_config(config_path);
    std::string mode = mode_flag.empty() ? cfg.solver.mode : mode_flag;
    auto frags = load_fragments(frag_path);

    std::vector<mcc::Trajectory> trajectories;
    std::vector<mcc::StatsRow> stats;

    if (mode == "offline" || mode == "brute") {
        auto result = mode == "offline" ? mcc::solve_offline(frags, cfg.cost)
                                        : mcc::brute_force_solve(frags, cfg.cost);
        trajectories = std::move(result.trajectories);
        std::cout << "total cost " << result.total_cost << '\n';
    } else if (mode == "online" || mode == "online-bounded") {
        mcc::OnlineOptions opts;
        opts.strict_order = strict_flag.value_or(cfg.solver.strict_order);
        opts.eps_cycle = cfg.solver.eps_cycle;
        if (mode == "online-bounded")
            opts.window = window_flag.value_or(cfg.solver.window_seconds);
        mcc::OnlineSolver solver(cfg.cost, opts);
        for (const mcc::Fragment& f : frags)
            for (mcc::Trajectory& t : solver.step(f)) trajectories.push_back(std::move(t));
        for (mcc::Trajectory& t : solver.finalize()) trajectories.push_back(std::move(t));
        stats = solver.stats();
        std::cout << "total cost " << solver.graph().total_flow_cost()
                  << " (emitted circulations excluded)\n";
    } else {
        std::cerr << "unknown mode: " << mode << '\n';
        return kExitBadConfig;
    }

    {
        std::ofstream os(out_traj);
        if (!os) throw std::runtime_error("cannot write " + out_traj);
        mcc::io::write_trajectories_jsonl(os, trajectories);
    }
    if (!out_stats.empty()) {
        std::ofstream os(out_stats);
        if (!os) throw std::runtime_error("cannot write " + out_stats);
        mcc::io::write_stats_csv(os, stats);
    }
    std::cout << trajectories.size() << " trajectories\n";
    return 0;
}

int cmd_evaluate(const std::string& gt_path, const std::string& frag_path,
                 const std::string& traj_path, const std::string& out_path) {
    auto gt = load_fragments(gt_path);
    auto frags = load_fragments(frag_path);
    std::map<std::string, mcc::Fragment> index;
    for (const auto& f : frags) index.emplace(f.id, f);

    std::ifstream ts(traj_path);
    if (!ts) throw std::runtime_error("cannot open " + traj_path);
    auto predicted = mcc::io::read_trajectories_jsonl(ts);
    for (const auto& t : predicted)
        for (const auto& fid : t.fragment_ids)
            if (!index.count(fid))
                throw std::runtime_error("trajectory references unknown fragment " + fid);

    // Raw fragments as singleton trajectories, for the middle column.
    std::vector<mcc::Trajectory> singletons;
    for (const auto& f : frags)
        singletons.push_back(
            mcc::Trajectory{{f.id}, f.points.front().t, f.points.back().t});

    auto raw = mcc::evaluate(gt, singletons, index);
    auto assoc = mcc::evaluate(gt, predicted, index);

    auto line = [](const std::string& name, double g, double f, double a) {
        std::printf("%-24s %12.2f %12.2f %12.2f\n", name.c_str(), g, f, a);
    };
    std::printf("%-24s %12s %12s %12s\n", "Metric", "Ground truth", "Fragments",
                "Associated");
    line("# Distinct objects", (double)gt.size(), (double)raw.n_distinct_predicted,
         (double)assoc.n_distinct_predicted);
    line("Fragments per GT", 0.0, raw.fragments_per_gt_count, assoc.fragments_per_gt);
    line("Switches per GT", 0.0, raw.switches_per_gt, assoc.switches_per_gt);

    if (!out_path.empty()) {
        std::ofstream os(out_path);
        os << "{\"n_gt\": " << gt.size()
           << ", \"n_fragments\": " << frags.size()
           << ", \"n_predicted\": " << assoc.n_distinct_predicted
           << ", \"fragments_per_gt\": " << assoc.fragments_per_gt
           << ", \"fragments_per_gt_count\": " << assoc.fragments_per_gt_count
           << ", \"switches_per_gt\": " << assoc.switches_per_gt
           << ", \"raw_fragments_per_gt_count\": " << raw.fragments_per_gt_count
           << "}\n";
    }
    return 0;
}

int cmd_report(const std::string& stats_path, const std::string& out_dir) {
    std::ifstream is(stats_path);
    if (!is) throw std::runtime_error("cannot open " + stats_path);
    auto rows = mcc::io::read_stats_csv(is);
    std::filesystem::create_directories(out_dir);

    {
        std::ofstream os(out_dir + "/graph_size.csv");
        os << "k,node_count,edge_count\n";
        for (const auto& r : rows)
            os << r.k << ',' << r.node_count << ',' << r.edge_count << '\n';
    }
    {
        std::ofstream os(out_dir + "/cumulative_runtime.csv");
        os << "k,cum_add_node,cum_find_min_cycle,cum_push_flow,cum_clean_graph,cum_total\n";
        double a = 0, f = 0, p = 0, c = 0;
        for (const auto& r : rows) {
            a += r.t_add_node;
            f += r.t_find_min_cycle;
            p += r.t_push_flow;
            c += r.t_clean_graph;
            os << r.k << ',' << a << ',' << f << ',' << p << ',' << c << ','
               << (a + f + p + c) << '\n';
        }
    }
    std::cout << "wrote " << out_dir << "/graph_size.csv and " << out_dir
              << "/cumulative_runtime.csv (" << rows.size() << " iterations)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Streaming min-cost-circulation data association"};
    app.require_subcommand(1);

    std::string config = "config.json";
    std::string mode;
    std::string frag_path, gt_path, traj_path, stats_path, out_path, out_dir;
    std::optional<double> window;
    std::optional<std::uint64_t> seed;
    bool strict = false, lenient = false;

    auto* gen = app.add_subcommand("generate", "Simulate trajectories and fragments");
    gen->add_option("--config", config, "Config file (JSON)")->required();
    std::string out_gt = "gt.jsonl", out_frag = "fragments.jsonl";
    gen->add_option("--out-gt", out_gt, "Ground-truth trajectories output (JSONL)");
    gen->add_option("--out-frags", out_frag, "Fragments output (JSONL)");
    gen->add_option("--seed", seed, "Override config seeds");

    auto* assoc = app.add_subcommand("associate", "Associate fragments into trajectories");
    assoc->add_option("--frags", frag_path, "Fragments input (JSONL)")->required();
    assoc->add_option("--config", config, "Config file (JSON)")->required();
    assoc->add_option("--mode", mode, "online|online-bounded|offline|brute");
    assoc->add_option("--window-seconds", window, "Eviction window for online-bounded");
    assoc->add_flag("--strict-order", strict, "Reject out-of-order fragments");
    assoc->add_flag("--lenient-order", lenient, "Admit out-of-order fragments");
    std::string out_traj = "trajectories.jsonl", out_stats;
    assoc->add_option("--out", out_traj, "Trajectories output (JSONL)");
    assoc->add_option("--stats", out_stats, "Per-iteration stats output (CSV)");

    auto* eval = app.add_subcommand("evaluate", "Score an association against ground truth");
    eval->add_option("--gt", gt_path, "Ground-truth trajectories (JSONL)")->required();
    eval->add_option("--frags", frag_path, "Fragments (JSONL)")->required();
    eval->add_option("--traj", traj_path, "Predicted trajectories (JSONL)")->required();
    eval->add_option("--out", out_path, "Machine-readable report (JSON)");

    auto* rep = app.add_subcommand("report", "Derive plot series from a stats CSV");
    rep->add_option("--stats", stats_path, "Stats CSV from associate")->required();
    rep->add_option("--out-dir", out_dir, "Output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_generate(config, out_gt, out_frag, seed);
        if (assoc->parsed()) {
            std::optional<bool> strict_flag;
            if (strict) strict_flag = true;
            if (lenient) strict_flag = false;
            return cmd_associate(frag_path, config, mode, out_traj, out_stats, window,
                                 strict_flag);
        }
        if (eval->parsed())
            return cmd_evaluate(gt_path, frag_path, traj_path, out_path);
        if (rep->parsed()) return cmd_report(stats_path, out_dir);
    } catch (const mcc::InvalidConfig& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadConfig;
    } catch (const mcc::OutOfOrderFragment& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitOutOfOrder;
    } catch (const mcc::SolverStall& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSolverStall;
    } catch (const mcc::MissingLabel& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitMissingLabel;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
