#include "mcc/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "mcc/errors.hpp"

namespace mcc {

namespace {

constexpr double kLaneChangeDuration = 3.0;  // seconds per smooth lane change

double lane_center(int lane, double lane_width) {
    return (lane + 0.5) * lane_width;
}

// Smoothstep blend between two lane centers.
double blend(double from_y, double to_y, double progress) {
    double s = progress * progress * (3.0 - 2.0 * progress);
    return from_y + (to_y - from_y) * s;
}

std::string vehicle_id(int i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "veh%04d", i);
    return buf;
}

}  // namespace

std::vector<Fragment> generate_trajectories(const SimConfig& cfg) {
    if (cfg.n_vehicles < 0 || cfg.road_length <= 0 || cfg.n_lanes <= 0 ||
        cfg.duration <= 0 || cfg.sample_rate <= 0 || cfg.speed_min <= 0 ||
        cfg.speed_max < cfg.speed_min || cfg.lane_change_rate < 0)
        throw InvalidConfig("simulation parameters must be positive");

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> speed_dist(cfg.speed_min, cfg.speed_max);
    std::uniform_int_distribution<int> lane_dist(0, cfg.n_lanes - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    // Entry-time density: piecewise constant over the configured bands.
    // Stratified inverse-CDF sampling keeps the arrival pattern steady so
    // any instant sees a similar load.
    std::vector<std::array<double, 3>> bands = cfg.entry_bands;
    if (bands.empty())
        bands.push_back({std::min(cfg.entry_lead_in, cfg.duration - 0.5),
                         cfg.duration - 0.5, 1.0});
    double mass = 0.0;
    for (const auto& b : bands) {
        if (b[1] <= b[0] || b[2] <= 0.0)
            throw InvalidConfig("entry bands need start < end and weight > 0");
        mass += (b[1] - b[0]) * b[2];
    }
    auto entry_at = [&](double q) {
        double m = q * mass;
        for (const auto& b : bands) {
            double seg = (b[1] - b[0]) * b[2];
            if (m <= seg) return b[0] + m / b[2];
            m -= seg;
        }
        return bands.back()[1];
    };

    struct Veh {
        double entry, speed;
        int lane;
    };
    std::vector<Veh> vehicles(cfg.n_vehicles);
    for (int i = 0; i < cfg.n_vehicles; ++i) {
        double q = (i + 0.45 + 0.1 * unit(rng)) / cfg.n_vehicles;
        Veh v{entry_at(q), speed_dist(rng), lane_dist(rng)};
        // Keep a short on-road presence: vehicles entering long before the
        // recording started would otherwise be gone by t = 0.
        v.entry = std::max(v.entry, -cfg.road_length / v.speed + 0.5);
        vehicles[i] = v;
    }

    // Push same-lane entries apart so vehicles do not overtake within a lane.
    std::vector<int> order(vehicles.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return vehicles[a].entry < vehicles[b].entry;
    });
    std::vector<double> last_entry(cfg.n_lanes,
                                   -std::numeric_limits<double>::infinity());
    for (int idx : order) {
        Veh& v = vehicles[idx];
        // A blocked vehicle takes the lane that frees up first rather than
        // queueing, like a driver picking the open lane at an on-ramp.
        if (v.entry < last_entry[v.lane] + cfg.min_headway) {
            int best = v.lane;
            for (int l = 0; l < cfg.n_lanes; ++l)
                if (last_entry[l] < last_entry[best]) best = l;
            v.lane = best;
            v.entry = std::max(v.entry, last_entry[best] + cfg.min_headway);
        }
        // Keep every vehicle on the road for a few samples; the headway push
        // may not shove the last entries past the end of the recording.
        v.entry = std::min(v.entry, cfg.duration - 0.6);
        last_entry[v.lane] = v.entry;
    }

    const double dt = 1.0 / cfg.sample_rate;
    std::vector<Fragment> out;
    out.reserve(vehicles.size());
    for (int i = 0; i < cfg.n_vehicles; ++i) {
        const Veh& v = vehicles[i];
        Fragment f;
        f.id = vehicle_id(i);
        f.gt_label = f.id;

        // Pre-draw lane-change times over the vehicle's travel time.
        double travel = cfg.road_length / v.speed;
        std::vector<std::pair<double, int>> changes;  // (start time, target lane)
        int lane = v.lane;
        if (cfg.lane_change_rate > 0) {
            double t = v.entry;
            while (true) {
                t += -std::log(1.0 - unit(rng)) / cfg.lane_change_rate;
                if (t > v.entry + travel) break;
                int target = lane + (unit(rng) < 0.5 ? -1 : 1);
                if (target < 0 || target >= cfg.n_lanes) target = lane;
                if (target != lane) changes.emplace_back(t, target);
                lane = target;
            }
        }

        // Sample on the global clock grid so all fragments share timestamps.
        long k0 = (long)std::ceil(std::max(0.0, v.entry) * cfg.sample_rate - 1e-9);
        for (long k = k0;; ++k) {
            double t = k * dt;
            if (t > cfg.duration) break;
            double x = (t - v.entry) * v.speed;
            if (x < 0) continue;
            if (x > cfg.road_length) break;
            int cur = v.lane;
            double y = lane_center(cur, cfg.lane_width);
            for (const auto& [ct, target] : changes) {
                if (t < ct) break;
                double prog = std::min(1.0, (t - ct) / kLaneChangeDuration);
                y = blend(lane_center(cur, cfg.lane_width),
                          lane_center(target, cfg.lane_width), prog);
                cur = target;
            }
            f.points.push_back(Point{t, x, y});
        }
        // Guarantee at least one in-road sample.
        if (f.points.empty()) {
            double t = std::clamp(v.entry, 0.0, cfg.duration);
            double x = std::clamp((t - v.entry) * v.speed, 0.0, cfg.road_length);
            f.points.push_back(Point{t, x, lane_center(v.lane, cfg.lane_width)});
        }
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<Fragment> fragment_trajectories(const std::vector<Fragment>& gt,
                                            const FragmentationConfig& fcfg) {
    std::vector<double> cuts = fcfg.cut_positions;
    std::sort(cuts.begin(), cuts.end());

    auto masked = [&](double x) {
        for (const auto& [a, b] : fcfg.mask_intervals)
            if (x >= a && x <= b) return true;
        return false;
    };

    std::vector<Fragment> out;
    int counter = 0;
    for (const Fragment& traj : gt) {
        // Camera intervals: [prev_cut, next_cut + overlap), unbounded at ends.
        size_t n_views = cuts.size() + 1;
        for (size_t v = 0; v < n_views; ++v) {
            double lo = v == 0 ? -std::numeric_limits<double>::infinity() : cuts[v - 1];
            double hi = v == cuts.size() ? std::numeric_limits<double>::infinity()
                                         : cuts[v] + fcfg.overlap;
            double nominal_dt = traj.points.size() > 1
                                    ? traj.points[1].t - traj.points[0].t
                                    : 0.1;
            Fragment cur;
            double prev_t = 0.0;
            auto flush = [&]() {
                if ((int)cur.points.size() < std::max(fcfg.min_points, 1)) {
                    cur = Fragment{};
                    return;
                }
                char buf[16];
                std::snprintf(buf, sizeof(buf), "frag%05d", counter++);
                cur.id = buf;
                cur.gt_label = traj.gt_label ? traj.gt_label : std::optional(traj.id);
                out.push_back(std::move(cur));
                cur = Fragment{};
            };
            for (const Point& p : traj.points) {
                bool keep = p.x >= lo && p.x < hi && !masked(p.x);
                if (keep) {
                    // A time gap (mask crossing) splits the view into pieces.
                    if (!cur.points.empty() && p.t - prev_t > 1.5 * nominal_dt) flush();
                    cur.points.push_back(p);
                    prev_t = p.t;
                } else if (!cur.points.empty() && p.x >= hi) {
                    break;  // left this camera's field
                }
            }
            flush();
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const Fragment& a, const Fragment& b) {
        if (a.last_t() != b.last_t()) return a.last_t() < b.last_t();
        return a.id < b.id;
    });
    return out;
}

}  // namespace mcc
