#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "polycrit/circle_measure.hpp"
#include "polycrit/common.hpp"

namespace polycrit {

// Polar split y = r * exp(2*pi*i*phi) with phi in [0,1). The origin has no
// angle; it gets 0 by convention and is tallied in origin_points.
struct PolarSet {
    std::vector<double> radii;
    std::vector<double> angles;
    int origin_points = 0;

    std::size_t size() const { return radii.size(); }
};

namespace detail {

inline double wrap01(double t) {
    t -= std::floor(t);
    if (t >= 1.0) t = 0.0;
    return t;
}

inline double pow_int(double x, int k) {
    double acc = 1.0, base = x;
    for (int e = k; e > 0; e >>= 1) {
        if (e & 1) acc *= base;
        base *= base;
    }
    return acc;
}

}  // namespace detail

inline PolarSet to_polar(std::span<const Complex> points) {
    PolarSet ps;
    ps.radii.reserve(points.size());
    ps.angles.reserve(points.size());
    for (const Complex& y : points) {
        const double r = std::abs(y);
        ps.radii.push_back(r);
        if (r == 0.0) {
            ps.angles.push_back(0.0);
            ++ps.origin_points;
        } else {
            ps.angles.push_back(detail::wrap01(std::atan2(y.imag(), y.real()) / two_pi));
        }
    }
    return ps;
}

// (1/m) sum z_j^k
inline Complex empirical_moment(std::span<const Complex> points, int k) {
    if (points.empty()) throw std::invalid_argument("empirical_moment: empty input");
    if (k < 1) throw std::invalid_argument("moment order must be >= 1");
    Complex sum{0.0, 0.0};
    for (const Complex& z : points) sum += ipow(z, k);
    return sum / static_cast<double>(points.size());
}

// (1/m) sum r_j^k
inline double radial_moment(const PolarSet& ps, int k) {
    if (ps.size() == 0) throw std::invalid_argument("radial_moment: empty input");
    if (k < 1) throw std::invalid_argument("moment order must be >= 1");
    double sum = 0.0;
    for (double r : ps.radii) sum += detail::pow_int(r, k);
    return sum / static_cast<double>(ps.size());
}

// (1/m) sum exp(2*pi*i*k*phi_j)
inline Complex weyl_sum(const PolarSet& ps, int k) {
    if (ps.size() == 0) throw std::invalid_argument("weyl_sum: empty input");
    if (k < 1) throw std::invalid_argument("moment order must be >= 1");
    Complex sum{0.0, 0.0};
    for (double phi : ps.angles) sum += unit_from_angle(k * phi);
    return sum / static_cast<double>(ps.size());
}

// Wasserstein-1 between empirical angle measures on the circle of
// circumference 1: min over the rotation constant c of the integral of
// |F_a - F_b - c|. The CDF difference is piecewise constant, so the optimal
// c is its length-weighted median and the integral is an exact finite sum.
inline double circular_w1(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("circular_w1: empty input");
    struct Event {
        double pos;
        double delta;
    };
    std::vector<Event> events;
    events.reserve(a.size() + b.size());
    const double wa = 1.0 / static_cast<double>(a.size());
    const double wb = 1.0 / static_cast<double>(b.size());
    for (double t : a) events.push_back({detail::wrap01(t), wa});
    for (double t : b) events.push_back({detail::wrap01(t), -wb});
    std::sort(events.begin(), events.end(),
              [](const Event& x, const Event& y) { return x.pos < y.pos; });

    // Segment list of (value, length) covering one full turn; the wrap
    // segment closes from the last event around to the first.
    std::vector<std::pair<double, double>> seg;
    seg.reserve(events.size());
    double level = 0.0;
    for (std::size_t i = 0; i < events.size(); ++i) {
        level += events[i].delta;
        const double next =
            i + 1 < events.size() ? events[i + 1].pos : events.front().pos + 1.0;
        seg.emplace_back(level, next - events[i].pos);
    }

    std::sort(seg.begin(), seg.end());
    double cum = 0.0;
    double median = seg.back().first;
    for (const auto& [value, len] : seg) {
        cum += len;
        if (cum >= 0.5) {
            median = value;
            break;
        }
    }
    double dist = 0.0;
    for (const auto& [value, len] : seg) dist += len * std::abs(value - median);
    return dist;
}

namespace detail {

// Candidate abscissas where sup|F_emp - F| can be attained: both functions
// are flat or monotone between these.
inline void cdf_breakpoints(const CircleMeasure& m, std::vector<double>& out) {
    switch (m.kind) {
        case MeasureKind::uniform:
            break;
        case MeasureKind::atomic:
            for (double a : m.atoms) out.push_back(a);
            break;
        case MeasureKind::arc:
            out.push_back(m.arc_lo);
            out.push_back(m.arc_hi);
            break;
        case MeasureKind::mixture:
            for (const auto& part : m.components) cdf_breakpoints(part, out);
            break;
    }
}

}  // namespace detail

// sup_t |F_emp(t) - angle_cdf(m, t)|, both one-sided limits at every jump.
inline double ks_distance(std::span<const double> angles, const CircleMeasure& m) {
    if (angles.empty()) throw std::invalid_argument("ks_distance: empty input");
    std::vector<double> sorted(angles.begin(), angles.end());
    for (double& t : sorted) t = detail::wrap01(t);
    std::sort(sorted.begin(), sorted.end());

    std::vector<double> cand(sorted);
    detail::cdf_breakpoints(m, cand);
    cand.push_back(0.0);
    cand.push_back(1.0);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    const double inv = 1.0 / static_cast<double>(sorted.size());
    double sup = 0.0;
    for (double t : cand) {
        const double emp_right =
            static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), t) -
                                sorted.begin()) *
            inv;
        const double emp_left =
            static_cast<double>(std::lower_bound(sorted.begin(), sorted.end(), t) -
                                sorted.begin()) *
            inv;
        const double cdf_right = angle_cdf(m, t);
        const double cdf_left = cdf_right - angle_point_mass(m, t);
        sup = std::max(sup, std::abs(emp_right - cdf_right));
        sup = std::max(sup, std::abs(emp_left - cdf_left));
    }
    return sup;
}

// #{j : |y_j| < r}
inline int interior_count(std::span<const Complex> points, double r) {
    if (!(r > 0.0) || r >= 1.0) throw std::invalid_argument("radius must lie in (0,1)");
    int count = 0;
    for (const Complex& y : points)
        if (std::abs(y) < r) ++count;
    return count;
}

}  // namespace polycrit
