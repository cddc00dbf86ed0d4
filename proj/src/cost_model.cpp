#include "mcc/cost_model.hpp"

#include <algorithm>
#include <cmath>

#include "mcc/errors.hpp"

namespace mcc {

double inclusion_cost(const CostConfig& cfg, const Fragment& frag) {
    (void)frag;
    if (cfg.beta) {
        double b = *cfg.beta;
        if (!(b > 0.0 && b < 1.0)) throw InvalidBeta(b);
        return -std::log((1.0 - b) / b);
    }
    return cfg.inclusion_cost;
}

std::pair<double, double> enter_exit_costs(const CostConfig& cfg, const Fragment& frag) {
    (void)frag;
    return {cfg.enter_cost, cfg.exit_cost};
}

namespace {

struct Line {
    double slope = 0.0;
    double intercept = 0.0;  // value at t = 0
    double eval(double t) const { return intercept + slope * t; }
};

// Least-squares line through (t, value) pairs; slope 0 for a single point.
Line fit_line(const std::vector<Point>& pts, size_t begin, size_t end,
              double Point::*axis) {
    size_t n = end - begin;
    if (n == 1) return Line{0.0, pts[begin].*axis};
    double st = 0, sv = 0, stt = 0, stv = 0;
    for (size_t i = begin; i < end; ++i) {
        double t = pts[i].t, v = pts[i].*axis;
        st += t;
        sv += v;
        stt += t * t;
        stv += t * v;
    }
    double denom = n * stt - st * st;
    if (denom == 0.0) return Line{0.0, sv / n};
    double slope = (n * stv - st * sv) / denom;
    return Line{slope, (sv - slope * st) / n};
}

}  // namespace

std::optional<double> transition_cost(const CostConfig& cfg, const Fragment& pred,
                                      const Fragment& succ) {
    if (succ.last_t() < pred.last_t()) return std::nullopt;
    double gap = succ.first_t() - pred.last_t();
    if (gap > cfg.time_gap_max) return std::nullopt;
    if (-gap > cfg.max_overlap) return std::nullopt;

    const auto& pp = pred.points;
    size_t w = std::min<size_t>((size_t)std::max(cfg.fit_window, 1), pp.size());
    Line lx = fit_line(pp, pp.size() - w, pp.size(), &Point::x);
    Line ly = fit_line(pp, pp.size() - w, pp.size(), &Point::y);

    const auto& sp = succ.points;
    size_t m = std::min<size_t>((size_t)std::max(cfg.fit_window, 1), sp.size());
    double sum = 0.0;
    for (size_t i = 0; i < m; ++i) {
        double dx = sp[i].x - lx.eval(sp[i].t);
        double dy = sp[i].y - ly.eval(sp[i].t);
        if (std::sqrt(dx * dx + dy * dy) > cfg.spatial_gate) return std::nullopt;
        sum += dx * dx / (2.0 * cfg.sigma_x * cfg.sigma_x) +
               dy * dy / (2.0 * cfg.sigma_y * cfg.sigma_y);
    }
    return sum / (double)m - cfg.transition_reward_floor;
}

std::vector<std::pair<std::string, double>> candidate_predecessors(
    const CostConfig& cfg, const std::vector<const Fragment*>& live,
    const Fragment& new_frag) {
    std::vector<std::pair<std::string, double>> out;
    for (const Fragment* f : live) {
        if (f->id == new_frag.id) continue;
        if (auto c = transition_cost(cfg, *f, new_frag)) out.emplace_back(f->id, *c);
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

}  // namespace mcc
