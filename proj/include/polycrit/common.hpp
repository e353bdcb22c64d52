#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace polycrit {

using Complex = std::complex<double>;

inline constexpr double two_pi = 2.0 * std::numbers::pi_v<double>;

// Bit-level equality. Distinguishes +0.0 from -0.0 and never matches NaN,
// which is what exact-multiplicity bookkeeping needs.
inline bool bit_equal(double a, double b) {
    return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

inline bool bit_equal(const Complex& a, const Complex& b) {
    return bit_equal(a.real(), b.real()) && bit_equal(a.imag(), b.imag());
}

// exp(2*pi*i*t) for an angle t given in turns.
inline Complex unit_from_angle(double t) {
    return {std::cos(two_pi * t), std::sin(two_pi * t)};
}

// Complex reciprocal without the scaled-division libcall. Safe whenever the
// magnitude is far from both overflow and underflow, which holds for all
// unit-disc geometry in this library.
inline Complex reciprocal(const Complex& w) {
    const double s = 1.0 / (w.real() * w.real() + w.imag() * w.imag());
    return {w.real() * s, -w.imag() * s};
}

// z^k for small positive k by binary exponentiation.
inline Complex ipow(Complex z, int k) {
    Complex acc{1.0, 0.0};
    while (k > 0) {
        if (k & 1) acc *= z;
        z *= z;
        k >>= 1;
    }
    return acc;
}

}  // namespace polycrit
