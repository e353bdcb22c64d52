#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "polycrit/common.hpp"

namespace polycrit {

inline constexpr int dense_oracle_max_order = 512;

// The critical-point companion matrix of p(z) = prod (z - z_i), held in
// diagonal-plus-rank-one form:
//
//   M = diag(d) + u * 1^T,   d_i = z_i,   u_i = (z_n - z_i) / n,
//
// which reproduces D(I - J/n) + (z_n/n) J entrywise. Eigenvalues of M are
// the n-1 critical points of p; the structure gives O(n) matvecs and
// O(n k^2) power-sum traces.
struct StructuredCompanion {
    std::vector<Complex> diag;
    std::vector<Complex> update;
    int order = 0;
};

inline StructuredCompanion build(std::span<const Complex> points) {
    const int n = static_cast<int>(points.size());
    if (n < 2) throw std::invalid_argument("companion needs at least 2 points");
    StructuredCompanion m;
    m.order = n - 1;
    m.diag.assign(points.begin(), points.end() - 1);
    m.update.resize(static_cast<std::size_t>(n) - 1);
    const Complex zn = points.back();
    for (int i = 0; i < n - 1; ++i)
        m.update[static_cast<std::size_t>(i)] = (zn - m.diag[static_cast<std::size_t>(i)]) / static_cast<double>(n);
    return m;
}

// y = M x = d.*x + u * sum(x), O(order).
inline std::vector<Complex> matvec(const StructuredCompanion& m, std::span<const Complex> x) {
    if (static_cast<int>(x.size()) != m.order)
        throw std::invalid_argument("matvec size mismatch");
    Complex total{0.0, 0.0};
    for (const auto& v : x) total += v;
    std::vector<Complex> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        y[i] = m.diag[i] * x[i] + m.update[i] * total;
    return y;
}

// Row-major dense complex matrix, oracle-sized only.
struct DenseMatrix {
    int order = 0;
    std::vector<Complex> a;

    Complex& at(int i, int j) { return a[static_cast<std::size_t>(i) * order + j]; }
    const Complex& at(int i, int j) const { return a[static_cast<std::size_t>(i) * order + j]; }
};

inline DenseMatrix materialize(const StructuredCompanion& m) {
    if (m.order > dense_oracle_max_order)
        throw std::invalid_argument("dense oracle capped at order 512");
    DenseMatrix dm;
    dm.order = m.order;
    dm.a.resize(static_cast<std::size_t>(m.order) * m.order);
    for (int i = 0; i < m.order; ++i) {
        for (int j = 0; j < m.order; ++j) dm.at(i, j) = m.update[static_cast<std::size_t>(i)];
        dm.at(i, i) += m.diag[static_cast<std::size_t>(i)];
    }
    return dm;
}

// Tr(M^k) for the structured form without forming any matrix power.
//
// Unrolling Tr(M^k) = Tr(M^{k-1} D) + 1^T M^{k-1} u term by term gives
//
//   Tr(M^k) = Tr(D^k) + sum_{j=0}^{k-1} 1^T D^{k-1-j} (M^j u),
//
// so k-1 matvecs produce w_j = M^j u and each summand is a weighted dot
// product against a running power of the diagonal: O(n k^2) total. This is
// algebraically the same value as summing the 3^k expansion terms of
// (D(I - J/n) + (z_n/n)J)^k, without the exponential enumeration.
inline Complex power_sum_trace(const StructuredCompanion& m, int k) {
    if (k < 1) throw std::invalid_argument("power_sum_trace order must be >= 1");
    const std::size_t n = m.diag.size();

    // w_j = M^j u, j = 0..k-1
    std::vector<std::vector<Complex>> w;
    w.reserve(static_cast<std::size_t>(k));
    w.emplace_back(m.update);
    for (int j = 1; j < k; ++j) w.push_back(matvec(m, w.back()));

    Complex trace{0.0, 0.0};
    std::vector<Complex> dpow(n, Complex{1.0, 0.0});  // D^i, i ascending
    for (int i = 0; i < k; ++i) {
        const auto& wj = w[static_cast<std::size_t>(k - 1 - i)];
        Complex dot{0.0, 0.0};
        for (std::size_t t = 0; t < n; ++t) dot += dpow[t] * wj[t];
        trace += dot;
        for (std::size_t t = 0; t < n; ++t) dpow[t] *= m.diag[t];
    }
    for (std::size_t t = 0; t < n; ++t) trace += dpow[t];  // Tr(D^k)
    return trace;
}

// Power-sum averages of the critical points, Tr(M^k)/(n-1) for k=1..kmax.
inline std::vector<Complex> power_sum_averages(std::span<const Complex> points, int kmax) {
    if (kmax < 1) throw std::invalid_argument("kmax must be >= 1");
    const StructuredCompanion m = build(points);
    std::vector<Complex> avg;
    avg.reserve(static_cast<std::size_t>(kmax));
    for (int k = 1; k <= kmax; ++k)
        avg.push_back(power_sum_trace(m, k) / static_cast<double>(m.order));
    return avg;
}

}  // namespace polycrit
