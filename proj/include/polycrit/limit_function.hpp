#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "polycrit/circle_measure.hpp"
#include "polycrit/common.hpp"

namespace polycrit {

// Truncation of f(z) = sum_{k>=0} conj(c_{k+1}) z^k with a certified tail
// bound on |z| <= radius, valid because every |c_k| <= 1.
struct LimitFunction {
    MomentVector moments;  // c_1 .. c_K
    int truncation = 0;    // K
    double radius = 0.0;
    double tail_bound = 0.0;  // radius^K / (1 - radius)

    Complex eval(const Complex& z) const {
        // Horner on the stored conjugated moments, highest power first.
        Complex acc{0.0, 0.0};
        for (int k = truncation; k >= 1; --k)
            acc = acc * z + std::conj(moments.c(k));
        return acc;
    }
};

inline LimitFunction make_limit_function(const CircleMeasure& m, double r, double tol) {
    if (!(r >= 0.0) || r >= 1.0) throw std::invalid_argument("radius must lie in [0,1)");
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    // Tail after K terms is at most r^K/(1-r); choose the smallest K below tol.
    int k = 1;
    if (r > 0.0) {
        const double raw = std::ceil(std::log(tol * (1.0 - r)) / std::log(r));
        // Range-check before narrowing: raw can exceed INT_MAX long before
        // the term cap rejects it.
        if (!(raw <= 1000000.0)) throw std::invalid_argument("radius too close to 1");
        if (raw > 1.0) k = static_cast<int>(raw);
    }
    LimitFunction f;
    f.moments = moments(m, k);
    f.truncation = k;
    f.radius = r;
    f.tail_bound = std::pow(r, k) / (1.0 - r);
    return f;
}

// f(z) to within tol, truncating at the radius |z|.
inline Complex eval_f(const CircleMeasure& m, const Complex& z, double tol) {
    const double r = std::abs(z);
    if (r >= 1.0) throw std::invalid_argument("eval_f requires |z| < 1");
    return make_limit_function(m, r, tol).eval(z);
}

struct DiscZeroCount {
    bool identically_zero = false;
    int count = 0;
};

// Zeros of f in |z| < r by the argument principle: accumulate the phase of f
// along the contour |z| = r and read off the winding number. The contour is
// refined by doubling until the total phase sits within 0.1 of a multiple of
// 2*pi. Measures with every moment zero (uniform and its rotations) make
// f identically zero; that case is flagged instead of counted.
inline DiscZeroCount count_zeros_in_disc(const CircleMeasure& m, double r, double tol = 1e-9) {
    if (!(r > 0.0) || r >= 1.0) throw std::invalid_argument("radius must lie in (0,1)");
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

    LimitFunction f = make_limit_function(m, r, tol);
    const int scan = std::max(f.truncation, 64);
    bool all_zero = true;
    for (int k = 1; k <= scan && all_zero; ++k)
        if (std::abs(moment(m, k)) > 1e-14) all_zero = false;
    if (all_zero) return {true, 0};

    // Degenerate-contour guard: f must stay well clear of 0 on |z| = r.
    constexpr int probe = 4096;
    double min_abs = std::numeric_limits<double>::infinity();
    for (int j = 0; j < probe; ++j) {
        const Complex z = r * unit_from_angle(static_cast<double>(j) / probe);
        min_abs = std::min(min_abs, std::abs(f.eval(z)));
    }
    if (!(min_abs > 10.0 * tol))
        throw std::domain_error("contour degenerate, choose different r");

    for (int n = probe; n <= (1 << 22); n *= 2) {
        double total = 0.0;
        Complex prev = f.eval(Complex{r, 0.0});
        for (int j = 1; j <= n; ++j) {
            const Complex cur =
                j == n ? f.eval(Complex{r, 0.0})
                       : f.eval(r * unit_from_angle(static_cast<double>(j) / n));
            // increment in (-pi, pi]; fine sampling keeps each step small
            total += std::arg(cur * std::conj(prev));
            prev = cur;
        }
        const double winding = total / two_pi;
        const double nearest = std::round(winding);
        if (std::abs(total - two_pi * nearest) < 0.1)
            return {false, static_cast<int>(nearest)};
    }
    throw std::runtime_error("winding number failed to stabilize");
}

}  // namespace polycrit
