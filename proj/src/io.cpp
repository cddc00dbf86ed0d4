#include "mcc/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "mcc/errors.hpp"

namespace mcc::io {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> known,
                    const std::string& section) {
    for (const auto& [key, value] : j.items()) {
        (void)value;
        bool ok = false;
        for (const char* k : known)
            if (key == k) ok = true;
        if (!ok) throw InvalidConfig("unknown key '" + key + "' in section " + section);
    }
}

template <typename T>
void get(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

AppConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidConfig("cannot open config file: " + path);
    json j;
    try {
        j = json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw InvalidConfig(std::string("JSON parse error: ") + e.what());
    }
    reject_unknown(j, {"sim", "fragmentation", "cost", "solver"}, "(root)");

    AppConfig cfg;
    if (j.contains("sim")) {
        const json& s = j["sim"];
        reject_unknown(s,
                       {"n_vehicles", "road_length", "n_lanes", "duration", "sample_rate",
                        "speed_min", "speed_max", "lane_change_rate", "entry_lead_in",
                        "entry_bands", "min_headway", "lane_width", "seed"},
                       "sim");
        get(s, "n_vehicles", cfg.sim.n_vehicles);
        get(s, "road_length", cfg.sim.road_length);
        get(s, "n_lanes", cfg.sim.n_lanes);
        get(s, "duration", cfg.sim.duration);
        get(s, "sample_rate", cfg.sim.sample_rate);
        get(s, "speed_min", cfg.sim.speed_min);
        get(s, "speed_max", cfg.sim.speed_max);
        get(s, "lane_change_rate", cfg.sim.lane_change_rate);
        get(s, "entry_lead_in", cfg.sim.entry_lead_in);
        if (s.contains("entry_bands")) {
            cfg.sim.entry_bands.clear();
            for (const auto& b : s["entry_bands"])
                cfg.sim.entry_bands.push_back({b.at(0).get<double>(),
                                               b.at(1).get<double>(),
                                               b.at(2).get<double>()});
        }
        get(s, "min_headway", cfg.sim.min_headway);
        get(s, "lane_width", cfg.sim.lane_width);
        get(s, "seed", cfg.sim.seed);
    }
    if (j.contains("fragmentation")) {
        const json& f = j["fragmentation"];
        reject_unknown(f,
                       {"mask_intervals", "cut_positions", "overlap", "min_points",
                        "seed"},
                       "fragmentation");
        if (f.contains("mask_intervals")) {
            cfg.fragmentation.mask_intervals.clear();
            for (const auto& m : f["mask_intervals"])
                cfg.fragmentation.mask_intervals.emplace_back(m.at(0).get<double>(),
                                                              m.at(1).get<double>());
        }
        if (f.contains("cut_positions"))
            cfg.fragmentation.cut_positions =
                f["cut_positions"].get<std::vector<double>>();
        get(f, "overlap", cfg.fragmentation.overlap);
        get(f, "min_points", cfg.fragmentation.min_points);
        get(f, "seed", cfg.fragmentation.seed);
    }
    if (j.contains("cost")) {
        const json& c = j["cost"];
        reject_unknown(c,
                       {"enter_cost", "exit_cost", "beta", "inclusion_cost",
                        "time_gap_max", "max_overlap", "spatial_gate", "sigma_x",
                        "sigma_y", "transition_reward_floor", "fit_window"},
                       "cost");
        get(c, "enter_cost", cfg.cost.enter_cost);
        get(c, "exit_cost", cfg.cost.exit_cost);
        if (c.contains("beta")) cfg.cost.beta = c["beta"].get<double>();
        get(c, "inclusion_cost", cfg.cost.inclusion_cost);
        get(c, "time_gap_max", cfg.cost.time_gap_max);
        get(c, "max_overlap", cfg.cost.max_overlap);
        get(c, "spatial_gate", cfg.cost.spatial_gate);
        get(c, "sigma_x", cfg.cost.sigma_x);
        get(c, "sigma_y", cfg.cost.sigma_y);
        get(c, "transition_reward_floor", cfg.cost.transition_reward_floor);
        get(c, "fit_window", cfg.cost.fit_window);
    }
    if (j.contains("solver")) {
        const json& s = j["solver"];
        reject_unknown(s, {"mode", "window_seconds", "strict_order", "eps_cycle"},
                       "solver");
        get(s, "mode", cfg.solver.mode);
        get(s, "window_seconds", cfg.solver.window_seconds);
        get(s, "strict_order", cfg.solver.strict_order);
        get(s, "eps_cycle", cfg.solver.eps_cycle);
    }
    return cfg;
}

void write_fragments_jsonl(std::ostream& os, const std::vector<Fragment>& frags) {
    for (const Fragment& f : frags) {
        json j;
        j["id"] = f.id;
        if (f.gt_label) j["gt_label"] = *f.gt_label;
        json pts = json::array();
        for (const Point& p : f.points) pts.push_back({p.t, p.x, p.y});
        j["points"] = std::move(pts);
        os << j.dump() << '\n';
    }
}

std::vector<Fragment> read_fragments_jsonl(std::istream& is) {
    std::vector<Fragment> out;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        json j = json::parse(line);
        Fragment f;
        f.id = j.at("id").get<std::string>();
        if (j.contains("gt_label") && !j["gt_label"].is_null())
            f.gt_label = j["gt_label"].get<std::string>();
        for (const auto& p : j.at("points"))
            f.points.push_back(Point{p.at(0).get<double>(), p.at(1).get<double>(),
                                     p.at(2).get<double>()});
        if (f.points.empty())
            throw InvalidConfig("fragment " + f.id + " has no points");
        out.push_back(std::move(f));
    }
    return out;
}

void write_trajectories_jsonl(std::ostream& os, const std::vector<Trajectory>& trajs) {
    int id = 0;
    for (const Trajectory& t : trajs) {
        json j;
        j["id"] = id++;
        j["fragments"] = t.fragment_ids;
        j["first_t"] = t.first_t;
        j["last_t"] = t.last_t;
        os << j.dump() << '\n';
    }
}

std::vector<Trajectory> read_trajectories_jsonl(std::istream& is) {
    std::vector<Trajectory> out;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        json j = json::parse(line);
        Trajectory t;
        t.fragment_ids = j.at("fragments").get<std::vector<std::string>>();
        t.first_t = j.at("first_t").get<double>();
        t.last_t = j.at("last_t").get<double>();
        out.push_back(std::move(t));
    }
    return out;
}

static const char* kStatsHeader =
    "k,node_count,edge_count,t_add_node,t_find_min_cycle,t_push_flow,t_clean_graph";

void write_stats_csv(std::ostream& os, const std::vector<StatsRow>& rows) {
    os << kStatsHeader << '\n';
    for (const StatsRow& r : rows) {
        os << r.k << ',' << r.node_count << ',' << r.edge_count << ','
           << json(r.t_add_node).dump() << ',' << json(r.t_find_min_cycle).dump() << ','
           << json(r.t_push_flow).dump() << ',' << json(r.t_clean_graph).dump() << '\n';
    }
}

std::vector<StatsRow> read_stats_csv(std::istream& is) {
    std::vector<StatsRow> out;
    std::string line;
    if (!std::getline(is, line) || line != kStatsHeader)
        throw InvalidConfig("stats CSV missing expected header");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        StatsRow r;
        char comma;
        ss >> r.k >> comma >> r.node_count >> comma >> r.edge_count >> comma >>
            r.t_add_node >> comma >> r.t_find_min_cycle >> comma >> r.t_push_flow >>
            comma >> r.t_clean_graph;
        if (!ss) throw InvalidConfig("malformed stats CSV row: " + line);
        out.push_back(r);
    }
    return out;
}

}  // namespace mcc::io
