#ifndef MCC_FRAGMENT_HPP
#define MCC_FRAGMENT_HPP

#include <optional>
#include <string>
#include <vector>

namespace mcc {

struct Point {
    double t;  // seconds
    double x;  // feet, along-road
    double y;  // feet, lateral
};

/// A contiguous partial track of one object: the unit of association.
/// Points are ordered by strictly increasing timestamp.
struct Fragment {
    std::string id;
    std::vector<Point> points;
    std::optional<std::string> gt_label;  // ground-truth object id (synthetic data only)

    double first_t() const { return points.front().t; }
    double last_t() const { return points.back().t; }
    const Point& front() const { return points.front(); }
    const Point& back() const { return points.back(); }
};

}  // namespace mcc

#endif
