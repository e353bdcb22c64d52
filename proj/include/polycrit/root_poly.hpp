#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "polycrit/common.hpp"

namespace polycrit {

// p(z) = prod (z - zeta_j)^{m_j}, stored by distinct roots and multiplicities.
// Never expanded to coefficients at scale; the coefficient form exists only
// as a small-degree oracle.
struct RootPoly {
    std::vector<Complex> distinct_roots;
    std::vector<int> multiplicities;
    int degree = 0;

    int distinct_count() const { return static_cast<int>(distinct_roots.size()); }

    bool is_root(const Complex& z) const {
        for (const auto& r : distinct_roots)
            if (bit_equal(r, z)) return true;
        return false;
    }
};

namespace detail {

struct ComplexBitsHash {
    std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& key) const {
        std::uint64_t h = key.first * 0x9E3779B97F4A7C15ULL;
        h ^= key.second + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

inline std::pair<std::uint64_t, std::uint64_t> complex_bits(const Complex& z) {
    return {std::bit_cast<std::uint64_t>(z.real()), std::bit_cast<std::uint64_t>(z.imag())};
}

}  // namespace detail

// Groups bit-identical points into (root, multiplicity) pairs, preserving
// first-appearance order.
inline RootPoly from_roots(std::span<const Complex> points) {
    if (points.size() < 2)
        throw std::invalid_argument("polynomial degree must be >= 2");
    RootPoly p;
    p.degree = static_cast<int>(points.size());
    std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, std::size_t,
                       detail::ComplexBitsHash>
        index;
    index.reserve(points.size());
    for (const auto& z : points) {
        auto [it, inserted] = index.try_emplace(detail::complex_bits(z), p.distinct_roots.size());
        if (inserted) {
            p.distinct_roots.push_back(z);
            p.multiplicities.push_back(1);
        } else {
            ++p.multiplicities[it->second];
        }
    }
    return p;
}

// p(z) in log form: p(z) = exp(log_magnitude) * phase, |phase| = 1.
// Log form keeps degree-10^4 products finite. At a root the magnitude flag
// is -infinity.
struct LogEval {
    double log_magnitude = 0.0;
    Complex phase{1.0, 0.0};
};

inline LogEval eval(const RootPoly& p, const Complex& z) {
    double log_mag = 0.0;
    double arg = 0.0;
    for (std::size_t j = 0; j < p.distinct_roots.size(); ++j) {
        const Complex w = z - p.distinct_roots[j];
        if (bit_equal(z, p.distinct_roots[j]))
            return {-std::numeric_limits<double>::infinity(), Complex{1.0, 0.0}};
        const double mj = p.multiplicities[j];
        log_mag += mj * std::log(std::abs(w));
        arg += mj * std::atan2(w.imag(), w.real());
    }
    return {log_mag, Complex{std::cos(arg), std::sin(arg)}};
}

// S(z) = p'(z)/p(z) = sum m_j / (z - zeta_j). The reciprocal is computed
// componentwise so conjugating all inputs conjugates the output exactly.
inline Complex log_derivative(const RootPoly& p, const Complex& z) {
    double sr = 0.0, si = 0.0;
    for (std::size_t j = 0; j < p.distinct_roots.size(); ++j) {
        const double dx = z.real() - p.distinct_roots[j].real();
        const double dy = z.imag() - p.distinct_roots[j].imag();
        const double n2 = dx * dx + dy * dy;
        if (n2 == 0.0)
            throw std::domain_error("log_derivative: evaluate at root");
        const double w = p.multiplicities[j] / n2;
        sr += w * dx;
        si -= w * dy;
    }
    return {sr, si};
}

// S'(z) = -sum m_j / (z - zeta_j)^2.
inline Complex log_derivative_prime(const RootPoly& p, const Complex& z) {
    double sr = 0.0, si = 0.0;
    for (std::size_t j = 0; j < p.distinct_roots.size(); ++j) {
        const double dx = z.real() - p.distinct_roots[j].real();
        const double dy = z.imag() - p.distinct_roots[j].imag();
        const double n2 = dx * dx + dy * dy;
        if (n2 == 0.0)
            throw std::domain_error("log_derivative_prime: evaluate at root");
        const double inv = 1.0 / n2;
        const double tr = dx * inv;
        const double ti = -dy * inv;
        const double mj = p.multiplicities[j];
        sr -= mj * (tr * tr - ti * ti);
        si -= mj * (2.0 * tr * ti);
    }
    return {sr, si};
}

inline constexpr int coefficient_oracle_max_degree = 512;

// Monomial coefficients, ascending, leading coefficient 1. Test oracle only;
// expansion overflows and cancels catastrophically beyond small degrees.
inline std::vector<Complex> coefficients(const RootPoly& p) {
    if (p.degree > coefficient_oracle_max_degree)
        throw std::invalid_argument("coefficient oracle capped at degree 512");
    std::vector<Complex> c{Complex{1.0, 0.0}};
    c.reserve(static_cast<std::size_t>(p.degree) + 1);
    for (std::size_t j = 0; j < p.distinct_roots.size(); ++j) {
        const Complex zeta = p.distinct_roots[j];
        for (int rep = 0; rep < p.multiplicities[j]; ++rep) {
            c.push_back(c.back());
            for (std::size_t i = c.size() - 2; i >= 1; --i)
                c[i] = c[i - 1] - zeta * c[i];
            c[0] = -zeta * c[0];
        }
    }
    return c;
}

}  // namespace polycrit
