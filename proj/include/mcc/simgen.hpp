#ifndef MCC_SIMGEN_HPP
#define MCC_SIMGEN_HPP

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "mcc/fragment.hpp"

namespace mcc {

/// Synthetic highway scenario. Vehicles enter at the road start, travel at a
/// constant per-vehicle speed and change lanes at Poisson-distributed times.
struct SimConfig {
    int n_vehicles = 137;
    double road_length = 2000.0;  // feet
    int n_lanes = 4;
    double duration = 200.0;    // seconds
    double sample_rate = 10.0;  // Hz
    double speed_min = 160.0;  // ft/s
    double speed_max = 163.0;
    double lane_change_rate = 0.005;  // per vehicle per second
    // Entry times are drawn from [entry_lead_in, duration); negative values
    // put some vehicles mid-road at t = 0, as a rolling recording would see.
    double entry_lead_in = -11.9;
    // Optional piecewise-constant entry density {start, end, weight}. When
    // empty, entries are uniform over [entry_lead_in, duration - 0.5). Bands
    // shape the traffic profile, e.g. denser arrivals around the recording
    // boundaries where crossings are clipped.
    std::vector<std::array<double, 3>> entry_bands;
    double min_headway = 0.9;  // seconds between same-lane entries
    double lane_width = 12.0;  // feet
    std::uint64_t seed = 1;
};

/// Spatial degradation turning ground-truth trajectories into fragments:
/// masks delete points, cuts split with duplicated points over the overlap.
struct FragmentationConfig {
    std::vector<std::pair<double, double>> mask_intervals = {{1550.0, 1700.0}};
    std::vector<double> cut_positions = {700.0, 1400.0};
    double overlap = 100.0;  // feet
    // Pieces shorter than this many points are discarded, like a tracker
    // that needs a few detections before confirming a track.
    int min_points = 1;
    std::uint64_t seed = 1;
};

/// One full trajectory per vehicle, gt_label set to its own id. Deterministic
/// given the seed.
std::vector<Fragment> generate_trajectories(const SimConfig& cfg);

/// Splits each trajectory at the cuts and masks; fresh ids, inherited
/// gt_label, output sorted by last timestamp.
std::vector<Fragment> fragment_trajectories(const std::vector<Fragment>& gt,
                                            const FragmentationConfig& fcfg);

}  // namespace mcc

#endif
