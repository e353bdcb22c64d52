#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "polycrit/common.hpp"
#include "polycrit/rng.hpp"

namespace polycrit {

enum class MeasureKind { uniform, atomic, arc, mixture };

// A probability law on the unit circle. Angles are always fractions of a
// full turn in [0,1); the angular law on [0,1) is what angle_cdf exposes.
struct CircleMeasure {
    MeasureKind kind = MeasureKind::uniform;

    // atomic
    std::vector<double> atoms;    // angles, pairwise distinct
    // atomic / mixture
    std::vector<double> weights;  // positive, sum to 1
    // arc
    double arc_lo = 0.0;
    double arc_hi = 0.0;
    // mixture (nesting depth at most 1: components may not be mixtures)
    std::vector<CircleMeasure> components;

    static CircleMeasure uniform() { return {}; }

    static CircleMeasure atomic(std::vector<double> angles, std::vector<double> w) {
        CircleMeasure m;
        m.kind = MeasureKind::atomic;
        m.atoms = std::move(angles);
        m.weights = std::move(w);
        return m;
    }

    static CircleMeasure arc(double lo, double hi) {
        CircleMeasure m;
        m.kind = MeasureKind::arc;
        m.arc_lo = lo;
        m.arc_hi = hi;
        return m;
    }

    static CircleMeasure mixture(std::vector<CircleMeasure> parts, std::vector<double> w) {
        CircleMeasure m;
        m.kind = MeasureKind::mixture;
        m.components = std::move(parts);
        m.weights = std::move(w);
        return m;
    }
};

// Moments c_1..c_K of a measure, c_k = E(Z^k).
struct MomentVector {
    std::vector<Complex> entries;  // entries[k-1] = c_k
    int order = 0;

    Complex c(int k) const { return entries.at(static_cast<std::size_t>(k) - 1); }
};

// One i.i.d. draw of n roots. points[j] = exp(2*pi*i*angles[j]).
struct RootSample {
    std::vector<Complex> points;
    std::vector<double> angles;
    std::uint64_t seed = 0;
    std::string measure_tag;
};

namespace detail {

inline void check_weights_normalized(std::vector<double>& weights) {
    double sum = 0.0;
    for (double w : weights) {
        if (!(w > 0.0) || w > 1.0)
            throw std::invalid_argument("measure weights must lie in (0,1]");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("measure weights must sum to 1 (got " +
                                    std::to_string(sum) + ")");
    if (sum != 1.0)
        for (double& w : weights) w /= sum;
}

}  // namespace detail

// Validates a measure description, renormalizing weights that are off by at
// most 1e-9. Throws std::invalid_argument on anything structurally wrong.
inline CircleMeasure validate(CircleMeasure m) {
    switch (m.kind) {
        case MeasureKind::uniform:
            break;
        case MeasureKind::atomic: {
            if (m.atoms.empty())
                throw std::invalid_argument("atomic measure needs at least one atom");
            if (m.atoms.size() != m.weights.size())
                throw std::invalid_argument("atomic measure needs one weight per atom");
            for (double a : m.atoms)
                if (!(a >= 0.0) || a >= 1.0)
                    throw std::invalid_argument("atom angles must lie in [0,1)");
            for (std::size_t i = 0; i < m.atoms.size(); ++i)
                for (std::size_t j = i + 1; j < m.atoms.size(); ++j)
                    if (bit_equal(m.atoms[i], m.atoms[j]))
                        throw std::invalid_argument("duplicate atom angle");
            detail::check_weights_normalized(m.weights);
            break;
        }
        case MeasureKind::arc: {
            if (!(m.arc_lo >= 0.0) || !(m.arc_hi <= 1.0) || !(m.arc_lo < m.arc_hi))
                throw std::invalid_argument("arc needs bounds 0 <= a < b <= 1");
            break;
        }
        case MeasureKind::mixture: {
            if (m.components.empty())
                throw std::invalid_argument("mixture needs at least one component");
            if (m.components.size() != m.weights.size())
                throw std::invalid_argument("mixture needs one weight per component");
            for (auto& c : m.components) {
                if (c.kind == MeasureKind::mixture)
                    throw std::invalid_argument("mixtures may not nest");
                c = validate(std::move(c));
            }
            detail::check_weights_normalized(m.weights);
            break;
        }
    }
    return m;
}

// Exact closed-form moment c_k = E(Z^k), k >= 1.
inline Complex moment(const CircleMeasure& m, int k) {
    if (k < 1) throw std::invalid_argument("moment order must be >= 1");
    switch (m.kind) {
        case MeasureKind::uniform:
            return {0.0, 0.0};
        case MeasureKind::atomic: {
            Complex sum{0.0, 0.0};
            for (std::size_t j = 0; j < m.atoms.size(); ++j)
                sum += m.weights[j] * unit_from_angle(k * m.atoms[j]);
            return sum;
        }
        case MeasureKind::arc: {
            const double span = m.arc_hi - m.arc_lo;
            const Complex num = unit_from_angle(k * m.arc_hi) - unit_from_angle(k * m.arc_lo);
            return num / Complex{0.0, two_pi * k * span};
        }
        case MeasureKind::mixture: {
            Complex sum{0.0, 0.0};
            for (std::size_t j = 0; j < m.components.size(); ++j)
                sum += m.weights[j] * moment(m.components[j], k);
            return sum;
        }
    }
    return {0.0, 0.0};
}

inline MomentVector moments(const CircleMeasure& m, int kmax) {
    MomentVector mv;
    mv.order = kmax;
    mv.entries.reserve(static_cast<std::size_t>(kmax));
    for (int k = 1; k <= kmax; ++k) mv.entries.push_back(moment(m, k));
    return mv;
}

// CDF of the angular law: nu([0, t]) for t in [0, 1].
inline double angle_cdf(const CircleMeasure& m, double t) {
    if (!(t >= 0.0) || !(t <= 1.0))
        throw std::invalid_argument("angle_cdf argument must lie in [0,1]");
    switch (m.kind) {
        case MeasureKind::uniform:
            return t;
        case MeasureKind::atomic: {
            double sum = 0.0;
            for (std::size_t j = 0; j < m.atoms.size(); ++j)
                if (m.atoms[j] <= t) sum += m.weights[j];
            return sum;
        }
        case MeasureKind::arc: {
            if (t <= m.arc_lo) return 0.0;
            if (t >= m.arc_hi) return 1.0;
            return (t - m.arc_lo) / (m.arc_hi - m.arc_lo);
        }
        case MeasureKind::mixture: {
            double sum = 0.0;
            for (std::size_t j = 0; j < m.components.size(); ++j)
                sum += m.weights[j] * angle_cdf(m.components[j], t);
            return sum;
        }
    }
    return 0.0;
}

// Point mass of the angular law at exactly t (nonzero only for atoms).
inline double angle_point_mass(const CircleMeasure& m, double t) {
    switch (m.kind) {
        case MeasureKind::atomic: {
            double sum = 0.0;
            for (std::size_t j = 0; j < m.atoms.size(); ++j)
                if (m.atoms[j] == t) sum += m.weights[j];
            return sum;
        }
        case MeasureKind::mixture: {
            double sum = 0.0;
            for (std::size_t j = 0; j < m.components.size(); ++j)
                sum += m.weights[j] * angle_point_mass(m.components[j], t);
            return sum;
        }
        default:
            return 0.0;
    }
}

namespace detail {

// Draws one angle. Atoms come back as the exact stored double so repeated
// draws of the same atom compare bit-equal; that exactness is what the
// multiplicity-aware code downstream relies on.
inline double sample_angle(const CircleMeasure& m, Xoshiro256& rng) {
    switch (m.kind) {
        case MeasureKind::uniform:
            return rng.uniform01();
        case MeasureKind::atomic: {
            const double u = rng.uniform01();
            double acc = 0.0;
            for (std::size_t j = 0; j + 1 < m.atoms.size(); ++j) {
                acc += m.weights[j];
                if (u < acc) return m.atoms[j];
            }
            return m.atoms.back();
        }
        case MeasureKind::arc: {
            double t = m.arc_lo + rng.uniform01() * (m.arc_hi - m.arc_lo);
            if (t >= m.arc_hi) t = std::nextafter(m.arc_hi, m.arc_lo);
            return t;
        }
        case MeasureKind::mixture: {
            const double u = rng.uniform01();
            double acc = 0.0;
            std::size_t pick = m.components.size() - 1;
            for (std::size_t j = 0; j + 1 < m.components.size(); ++j) {
                acc += m.weights[j];
                if (u < acc) {
                    pick = j;
                    break;
                }
            }
            return sample_angle(m.components[pick], rng);
        }
    }
    return 0.0;
}

}  // namespace detail

inline std::string describe(const CircleMeasure& m);

// n i.i.d. draws from the measure. Pure in (measure, n, seed).
inline RootSample sample(const CircleMeasure& m, int n, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("sample size must be >= 2");
    Xoshiro256 rng(seed);
    RootSample out;
    out.seed = seed;
    out.measure_tag = describe(m);
    out.angles.reserve(static_cast<std::size_t>(n));
    out.points.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double t = detail::sample_angle(m, rng);
        out.angles.push_back(t);
        out.points.push_back(unit_from_angle(t));
    }
    return out;
}

namespace detail {

inline void format_number(std::ostringstream& os, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
}

}  // namespace detail

// Canonical one-line description; parse_measure_expr accepts this syntax back.
inline std::string describe(const CircleMeasure& m) {
    std::ostringstream os;
    switch (m.kind) {
        case MeasureKind::uniform:
            os << "uniform";
            break;
        case MeasureKind::atomic:
            os << "atomic(";
            for (std::size_t j = 0; j < m.atoms.size(); ++j) {
                if (j) os << ",";
                detail::format_number(os, m.atoms[j]);
                os << ":";
                detail::format_number(os, m.weights[j]);
            }
            os << ")";
            break;
        case MeasureKind::arc:
            os << "arc(";
            detail::format_number(os, m.arc_lo);
            os << ",";
            detail::format_number(os, m.arc_hi);
            os << ")";
            break;
        case MeasureKind::mixture:
            os << "mixture(";
            for (std::size_t j = 0; j < m.components.size(); ++j) {
                if (j) os << ",";
                detail::format_number(os, m.weights[j]);
                os << "*" << describe(m.components[j]);
            }
            os << ")";
            break;
    }
    return os.str();
}

}  // namespace polycrit
