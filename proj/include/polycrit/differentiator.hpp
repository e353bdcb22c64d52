#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#if defined(__AVX512F__)
#include <immintrin.h>
#endif

#include "polycrit/common.hpp"
#include "polycrit/companion.hpp"
#include "polycrit/eig.hpp"
#include "polycrit/rng.hpp"
#include "polycrit/root_poly.hpp"

namespace polycrit {

struct SolverOptions {
    // Convergence requires |S(y)| <= tolerance * d / dist(y, nearest root),
    // i.e. a pole-proximity-normalized residual below `tolerance`.
    double tolerance = 1e-12;
    int max_iterations = 200;  // Aberth sweeps per round
    int restarts = 3;          // re-randomization rounds for stuck iterates
};

enum class SolveMethod { iterative, dense };

// The n-1 critical points of p, multiplicity expanded, plus diagnostics.
struct CriticalSet {
    std::vector<Complex> points;
    SolveMethod method = SolveMethod::iterative;
    int iterations = 0;
    double max_residual = 0.0;  // max over points of |S(y)| * dist(y, roots) / d
    bool converged = false;
};

// Exact Newton step for p' at z, written coefficient-free:
// p'/p'' = S / (S^2 + S') with S the logarithmic derivative.
inline Complex newton_correction(const RootPoly& p, const Complex& z) {
    const Complex s = log_derivative(p, z);
    const Complex sp = log_derivative_prime(p, z);
    const Complex denom = s * s + sp;
    if (denom == Complex{0.0, 0.0})
        throw std::domain_error("newton_correction: derivative-degenerate point");
    return s / denom;
}

namespace detail {

inline constexpr int aberth_block = 8;
inline constexpr int aberth_group = 4;  // poles sharing one division per lane

// State for the simultaneous iteration on the zeros of S. Structure-of-arrays
// so the per-root and per-iterate passes vectorize across a block of
// iterates without reordering any floating-point sum.
struct AberthState {
    // distinct roots
    std::vector<double> zr, zi;    // positions
    std::vector<double> ws;        // multiplicity m_j           (S weights)
    std::vector<double> wd;        // m_j - 1                    (deflated-zero repulsion)
    // iterates
    std::vector<double> xr, xi;
    std::vector<double> residual;  // last measured scaled residual
    std::vector<std::uint8_t> done;
    int d = 0;  // number of distinct roots
    int m = 0;  // number of iterates = d - 1
    bool simple = false;  // every multiplicity is 1: no deflated repulsion
};

// Pass 1: roots. S += m/(x - z), S' -= m/(x - z)^2, deflated repulsion
// A += (m-1)/(x - z), and the squared distance to the nearest root. The
// Simple instantiation drops the weight products and the A sums entirely,
// which is exact when every multiplicity is 1.
template <bool Simple>
inline void aberth_roots_pass(const AberthState& st, const double* bxr, const double* bxi,
                              double* sr, double* si, double* pr, double* pi,
                              double* ar, double* ai, double* smin) {
    const int d = st.d;
    const double* zr = st.zr.data();
    const double* zi = st.zi.data();
    const double* ws = st.ws.data();
    const double* wd = st.wd.data();
    for (int j = 0; j < d; ++j) {
        const double cr = zr[j], ci = zi[j];
        [[maybe_unused]] const double cs = ws[j];
        [[maybe_unused]] const double cd = wd[j];
        for (int v = 0; v < aberth_block; ++v) {
            const double dx = bxr[v] - cr;
            const double dy = bxi[v] - ci;
            const double s2 = dx * dx + dy * dy;
            const double inv = s2 != 0.0 ? 1.0 / s2 : 0.0;
            const double tr = dx * inv;
            const double ti = -dy * inv;
            if constexpr (Simple) {
                sr[v] += tr;
                si[v] += ti;
                pr[v] -= tr * tr - ti * ti;
                pi[v] -= 2.0 * tr * ti;
            } else {
                sr[v] += cs * tr;
                si[v] += cs * ti;
                pr[v] -= cs * (tr * tr - ti * ti);
                pi[v] -= cs * (2.0 * tr * ti);
                ar[v] += cd * tr;
                ai[v] += cd * ti;
            }
            smin[v] = s2 < smin[v] ? s2 : smin[v];
        }
    }
}

// Pass 2: all iterates. A += 1/(x - x_l); the self term has s2 == 0 and
// drops out through the same zero-select as exact collisions.
inline void aberth_repulsion_pass(const AberthState& st, const double* bxr,
                                  const double* bxi, double* ar, double* ai) {
    const int mm = st.m;
    const double* qr = st.xr.data();
    const double* qi = st.xi.data();
    for (int l = 0; l < mm; ++l) {
        const double cr = qr[l], ci = qi[l];
        for (int v = 0; v < aberth_block; ++v) {
            const double dx = bxr[v] - cr;
            const double dy = bxi[v] - ci;
            const double s2 = dx * dx + dy * dy;
            const double inv = s2 != 0.0 ? 1.0 / s2 : 0.0;
            ar[v] += dx * inv;
            ai[v] -= dy * inv;
        }
    }
}

#if defined(__AVX512F__)

static_assert(aberth_block == 8, "vector kernels hold one block per register");

// Reciprocals of a group of squared distances with one division per lane:
// invert the running product, then peel the factors back out. Zero entries
// pass through as zero, which is how collisions and self terms drop out of
// the sums. A product outside the normal range falls back to direct division
// so overflow can never turn a huge distance into a zero reciprocal and fake
// a vanishing residual.
inline void batch_reciprocal_avx512(const __m512d (&s2)[aberth_group],
                                    const __mmask8 (&nz)[aberth_group],
                                    __m512d (&rcp)[aberth_group]) {
    const __m512d one = _mm512_set1_pd(1.0);
    __m512d e[aberth_group];
    for (int g = 0; g < aberth_group; ++g)
        e[g] = _mm512_mask_blend_pd(nz[g], one, s2[g]);
    const __m512d q1 = _mm512_mul_pd(e[0], e[1]);
    const __m512d q2 = _mm512_mul_pd(q1, e[2]);
    const __m512d q3 = _mm512_mul_pd(q2, e[3]);
    const __mmask8 fits =
        _mm512_cmp_pd_mask(q3, _mm512_set1_pd(std::numeric_limits<double>::min()),
                           _CMP_GE_OQ) &
        _mm512_cmp_pd_mask(q3, _mm512_set1_pd(std::numeric_limits<double>::max()),
                           _CMP_LE_OQ);
    if (fits == 0xFF) {
        __m512d r = _mm512_div_pd(one, q3);
        const __m512d i3 = _mm512_mul_pd(q2, r);
        r = _mm512_mul_pd(r, e[3]);
        const __m512d i2 = _mm512_mul_pd(q1, r);
        r = _mm512_mul_pd(r, e[2]);
        rcp[3] = _mm512_maskz_mov_pd(nz[3], i3);
        rcp[2] = _mm512_maskz_mov_pd(nz[2], i2);
        rcp[1] = _mm512_maskz_mov_pd(nz[1], _mm512_mul_pd(e[0], r));
        rcp[0] = _mm512_maskz_mov_pd(nz[0], _mm512_mul_pd(e[1], r));
    } else {
        for (int g = 0; g < aberth_group; ++g)
            rcp[g] = _mm512_maskz_div_pd(nz[g], one, s2[g]);
    }
}

template <bool Simple>
inline void aberth_roots_pass_avx512(const AberthState& st, __m512d bxr, __m512d bxi,
                                     __m512d& sr, __m512d& si, __m512d& pr, __m512d& pi,
                                     __m512d& ar, __m512d& ai, __m512d& smin) {
    const int d = st.d;
    const double* zr = st.zr.data();
    const double* zi = st.zi.data();
    const double* ws = st.ws.data();
    const double* wd = st.wd.data();
    const __m512d one = _mm512_set1_pd(1.0);
    const __m512d zero = _mm512_setzero_pd();

    int j = 0;
    for (; j + aberth_group <= d; j += aberth_group) {
        __m512d dx[aberth_group], dy[aberth_group], s2[aberth_group];
        __mmask8 nz[aberth_group];
        for (int g = 0; g < aberth_group; ++g) {
            dx[g] = _mm512_sub_pd(bxr, _mm512_set1_pd(zr[j + g]));
            dy[g] = _mm512_sub_pd(bxi, _mm512_set1_pd(zi[j + g]));
            s2[g] = _mm512_fmadd_pd(dx[g], dx[g], _mm512_mul_pd(dy[g], dy[g]));
            smin = _mm512_min_pd(s2[g], smin);
            nz[g] = _mm512_cmp_pd_mask(s2[g], zero, _CMP_NEQ_UQ);
        }
        __m512d rcp[aberth_group];
        batch_reciprocal_avx512(s2, nz, rcp);
        for (int g = 0; g < aberth_group; ++g) {
            // t2 = dy/|x-z|^2 carries the sign of -Im t, so every imaginary
            // accumulation below subtracts.
            const __m512d tr = _mm512_mul_pd(dx[g], rcp[g]);
            const __m512d t2 = _mm512_mul_pd(dy[g], rcp[g]);
            const __m512d ur = _mm512_fmsub_pd(tr, tr, _mm512_mul_pd(t2, t2));
            const __m512d trt2 = _mm512_mul_pd(tr, t2);
            if constexpr (Simple) {
                sr = _mm512_add_pd(sr, tr);
                si = _mm512_sub_pd(si, t2);
                pr = _mm512_sub_pd(pr, ur);
                pi = _mm512_fmadd_pd(_mm512_set1_pd(2.0), trt2, pi);
            } else {
                const __m512d cs = _mm512_set1_pd(ws[j + g]);
                const __m512d cd = _mm512_set1_pd(wd[j + g]);
                sr = _mm512_fmadd_pd(cs, tr, sr);
                si = _mm512_fnmadd_pd(cs, t2, si);
                pr = _mm512_fnmadd_pd(cs, ur, pr);
                pi = _mm512_fmadd_pd(_mm512_add_pd(cs, cs), trt2, pi);
                ar = _mm512_fmadd_pd(cd, tr, ar);
                ai = _mm512_fnmadd_pd(cd, t2, ai);
            }
        }
    }
    for (; j < d; ++j) {
        const __m512d dx = _mm512_sub_pd(bxr, _mm512_set1_pd(zr[j]));
        const __m512d dy = _mm512_sub_pd(bxi, _mm512_set1_pd(zi[j]));
        const __m512d s2 = _mm512_fmadd_pd(dx, dx, _mm512_mul_pd(dy, dy));
        smin = _mm512_min_pd(s2, smin);
        const __mmask8 nz = _mm512_cmp_pd_mask(s2, zero, _CMP_NEQ_UQ);
        const __m512d inv = _mm512_maskz_div_pd(nz, one, s2);
        const __m512d tr = _mm512_mul_pd(dx, inv);
        const __m512d t2 = _mm512_mul_pd(dy, inv);
        const __m512d ur = _mm512_fmsub_pd(tr, tr, _mm512_mul_pd(t2, t2));
        const __m512d trt2 = _mm512_mul_pd(tr, t2);
        if constexpr (Simple) {
            sr = _mm512_add_pd(sr, tr);
            si = _mm512_sub_pd(si, t2);
            pr = _mm512_sub_pd(pr, ur);
            pi = _mm512_fmadd_pd(_mm512_set1_pd(2.0), trt2, pi);
        } else {
            const __m512d cs = _mm512_set1_pd(ws[j]);
            const __m512d cd = _mm512_set1_pd(wd[j]);
            sr = _mm512_fmadd_pd(cs, tr, sr);
            si = _mm512_fnmadd_pd(cs, t2, si);
            pr = _mm512_fnmadd_pd(cs, ur, pr);
            pi = _mm512_fmadd_pd(_mm512_add_pd(cs, cs), trt2, pi);
            ar = _mm512_fmadd_pd(cd, tr, ar);
            ai = _mm512_fnmadd_pd(cd, t2, ai);
        }
    }
}

inline void aberth_repulsion_pass_avx512(const AberthState& st, __m512d bxr, __m512d bxi,
                                         __m512d& ar, __m512d& ai) {
    const int mm = st.m;
    const double* qr = st.xr.data();
    const double* qi = st.xi.data();
    const __m512d one = _mm512_set1_pd(1.0);
    const __m512d zero = _mm512_setzero_pd();

    int l = 0;
    for (; l + aberth_group <= mm; l += aberth_group) {
        __m512d dx[aberth_group], dy[aberth_group], s2[aberth_group];
        __mmask8 nz[aberth_group];
        for (int g = 0; g < aberth_group; ++g) {
            dx[g] = _mm512_sub_pd(bxr, _mm512_set1_pd(qr[l + g]));
            dy[g] = _mm512_sub_pd(bxi, _mm512_set1_pd(qi[l + g]));
            s2[g] = _mm512_fmadd_pd(dx[g], dx[g], _mm512_mul_pd(dy[g], dy[g]));
            nz[g] = _mm512_cmp_pd_mask(s2[g], zero, _CMP_NEQ_UQ);
        }
        __m512d rcp[aberth_group];
        batch_reciprocal_avx512(s2, nz, rcp);
        for (int g = 0; g < aberth_group; ++g) {
            ar = _mm512_fmadd_pd(dx[g], rcp[g], ar);
            ai = _mm512_fnmadd_pd(dy[g], rcp[g], ai);
        }
    }
    for (; l < mm; ++l) {
        const __m512d dx = _mm512_sub_pd(bxr, _mm512_set1_pd(qr[l]));
        const __m512d dy = _mm512_sub_pd(bxi, _mm512_set1_pd(qi[l]));
        const __m512d s2 = _mm512_fmadd_pd(dx, dx, _mm512_mul_pd(dy, dy));
        const __mmask8 nz = _mm512_cmp_pd_mask(s2, zero, _CMP_NEQ_UQ);
        const __m512d inv = _mm512_maskz_div_pd(nz, one, s2);
        ar = _mm512_fmadd_pd(dx, inv, ar);
        ai = _mm512_fnmadd_pd(dy, inv, ai);
    }
}

#endif  // __AVX512F__

// One block of up to `aberth_block` iterates advanced together: S, S' and the
// repulsion sums are accumulated per lane, then each lane takes its Aberth
// step. Lanes are independent, so the compiler can vectorize the inner loops.
inline void aberth_advance_block(AberthState& st, const int* idx, int lanes,
                                 double tol2_d2, double eps_step2) {
    alignas(64) double bxr[aberth_block], bxi[aberth_block];
    alignas(64) double sr[aberth_block] = {}, si[aberth_block] = {};
    alignas(64) double pr[aberth_block] = {}, pi[aberth_block] = {};
    alignas(64) double ar[aberth_block] = {}, ai[aberth_block] = {};
    alignas(64) double smin[aberth_block];

    for (int v = 0; v < lanes; ++v) {
        bxr[v] = st.xr[static_cast<std::size_t>(idx[v])];
        bxi[v] = st.xi[static_cast<std::size_t>(idx[v])];
        smin[v] = std::numeric_limits<double>::infinity();
    }
    for (int v = lanes; v < aberth_block; ++v) {
        bxr[v] = 0.0;
        bxi[v] = 0.0;
        smin[v] = 1.0;
    }

#if defined(__AVX512F__)
    const __m512d vbxr = _mm512_load_pd(bxr);
    const __m512d vbxi = _mm512_load_pd(bxi);
    __m512d vsr = _mm512_setzero_pd(), vsi = _mm512_setzero_pd();
    __m512d vpr = _mm512_setzero_pd(), vpi = _mm512_setzero_pd();
    __m512d var = _mm512_setzero_pd(), vai = _mm512_setzero_pd();
    __m512d vsmin = _mm512_load_pd(smin);
    if (st.simple)
        aberth_roots_pass_avx512<true>(st, vbxr, vbxi, vsr, vsi, vpr, vpi, var, vai, vsmin);
    else
        aberth_roots_pass_avx512<false>(st, vbxr, vbxi, vsr, vsi, vpr, vpi, var, vai, vsmin);
    aberth_repulsion_pass_avx512(st, vbxr, vbxi, var, vai);
    _mm512_store_pd(sr, vsr);
    _mm512_store_pd(si, vsi);
    _mm512_store_pd(pr, vpr);
    _mm512_store_pd(pi, vpi);
    _mm512_store_pd(ar, var);
    _mm512_store_pd(ai, vai);
    _mm512_store_pd(smin, vsmin);
#else
    if (st.simple)
        aberth_roots_pass<true>(st, bxr, bxi, sr, si, pr, pi, ar, ai, smin);
    else
        aberth_roots_pass<false>(st, bxr, bxi, sr, si, pr, pi, ar, ai, smin);
    aberth_repulsion_pass(st, bxr, bxi, ar, ai);
#endif

    // Scalar epilogue per lane: freeze or step.
    for (int v = 0; v < lanes; ++v) {
        const int i = idx[v];
        if (smin[v] == 0.0) {
            // sitting exactly on a root: nudge off and keep iterating
            st.xr[static_cast<std::size_t>(i)] = bxr[v] * (1.0 + 1e-8) + 1e-12;
            st.xi[static_cast<std::size_t>(i)] = bxi[v] * (1.0 + 1e-8) + 1e-12;
            continue;
        }
        const double s_norm2 = sr[v] * sr[v] + si[v] * si[v];
        const double res2 = s_norm2 * smin[v];  // (|S| * dist)^2
        st.residual[static_cast<std::size_t>(i)] = std::sqrt(res2) / st.d;
        if (res2 <= tol2_d2) {
            st.done[static_cast<std::size_t>(i)] = 1;
            continue;
        }
        const Complex s{sr[v], si[v]};
        const Complex sp{pr[v], pi[v]};
        const Complex a{ar[v], ai[v]};
        const Complex denom = s * s + sp;
        if (denom == Complex{0.0, 0.0}) {
            st.xr[static_cast<std::size_t>(i)] = bxr[v] * (1.0 + 1e-8) + 1e-12;
            st.xi[static_cast<std::size_t>(i)] = bxi[v] * (1.0 + 1e-8) - 1e-12;
            continue;
        }
        const Complex newton = s * reciprocal(denom);
        const Complex aberth_den = Complex{1.0, 0.0} - newton * a;
        Complex step;
        if (aberth_den == Complex{0.0, 0.0})
            step = newton;  // fall back to the plain Newton step
        else
            step = newton * reciprocal(aberth_den);
        const double x2 = bxr[v] * bxr[v] + bxi[v] * bxi[v];
        const double step2 = step.real() * step.real() + step.imag() * step.imag();
        st.xr[static_cast<std::size_t>(i)] = bxr[v] - step.real();
        st.xi[static_cast<std::size_t>(i)] = bxi[v] - step.imag();
        if (step2 <= eps_step2 * (1.0 + x2)) {
            // stagnated at the rounding floor; stop moving this iterate
            st.done[static_cast<std::size_t>(i)] = 1;
        }
    }
}

inline double wrap_angle(double t) {
    t -= std::floor(t);
    if (t >= 1.0) t = 0.0;
    return t;
}

}  // namespace detail

// All n-1 critical points of p. Roots of multiplicity m contribute m-1 exact
// copies of themselves; the remaining d-1 points are the zeros of
// S(z) = sum m_j/(z - zeta_j), found by a simultaneous Aberth-Ehrlich
// iteration whose Newton correction S/(S^2 + S') never touches coefficients.
inline CriticalSet critical_points(const RootPoly& p, const SolverOptions& opts = {}) {
    if (p.degree < 2) throw std::invalid_argument("critical_points needs degree >= 2");
    if (!(opts.tolerance > 0.0) || opts.max_iterations < 1)
        throw std::invalid_argument("invalid solver options");

    CriticalSet out;
    out.method = SolveMethod::iterative;

    // Exact deflation from multiplicities.
    for (std::size_t j = 0; j < p.distinct_roots.size(); ++j)
        for (int c = 1; c < p.multiplicities[j]; ++c)
            out.points.push_back(p.distinct_roots[j]);

    const int d = p.distinct_count();
    if (d == 1) {
        out.converged = true;
        out.iterations = 0;
        out.max_residual = 0.0;
        return out;
    }

    detail::AberthState st;
    st.d = d;
    st.m = d - 1;
    st.zr.resize(static_cast<std::size_t>(d));
    st.zi.resize(static_cast<std::size_t>(d));
    st.ws.resize(static_cast<std::size_t>(d));
    st.wd.resize(static_cast<std::size_t>(d));
    st.simple = true;
    for (int j = 0; j < d; ++j) {
        st.zr[static_cast<std::size_t>(j)] = p.distinct_roots[static_cast<std::size_t>(j)].real();
        st.zi[static_cast<std::size_t>(j)] = p.distinct_roots[static_cast<std::size_t>(j)].imag();
        st.ws[static_cast<std::size_t>(j)] = p.multiplicities[static_cast<std::size_t>(j)];
        st.wd[static_cast<std::size_t>(j)] = p.multiplicities[static_cast<std::size_t>(j)] - 1;
        if (p.multiplicities[static_cast<std::size_t>(j)] != 1) st.simple = false;
    }

    // Interlacing start: iterates at midpoints of adjacent root angles,
    // shrunk slightly inward so no start coincides with a pole.
    std::vector<double> angles(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j)
        angles[static_cast<std::size_t>(j)] =
            detail::wrap_angle(std::atan2(st.zi[static_cast<std::size_t>(j)],
                                          st.zr[static_cast<std::size_t>(j)]) / two_pi);
    std::sort(angles.begin(), angles.end());
    const double shrink = 1.0 - 1.0 / (2.0 * d);
    st.xr.resize(static_cast<std::size_t>(st.m));
    st.xi.resize(static_cast<std::size_t>(st.m));
    st.residual.assign(static_cast<std::size_t>(st.m),
                       std::numeric_limits<double>::infinity());
    st.done.assign(static_cast<std::size_t>(st.m), 0);
    for (int j = 0; j < st.m; ++j) {
        const double mid = 0.5 * (angles[static_cast<std::size_t>(j)] +
                                  angles[static_cast<std::size_t>(j) + 1]);
        const Complex x = shrink * unit_from_angle(mid);
        st.xr[static_cast<std::size_t>(j)] = x.real();
        st.xi[static_cast<std::size_t>(j)] = x.imag();
    }

    const double tol2_d2 = opts.tolerance * opts.tolerance * static_cast<double>(d) *
                           static_cast<double>(d);
    const double eps = std::numeric_limits<double>::epsilon();
    const double eps_step2 = 16.0 * eps * eps;

    int sweeps = 0;
    bool finished = false;
    std::vector<int> active;
    active.reserve(static_cast<std::size_t>(st.m));

    for (int round = 0; round <= opts.restarts && !finished; ++round) {
        if (round > 0) {
            // Restart policy: re-randomize stuck iterates in the annulus
            // [0.5, 1 - 1/(2d)], deterministic in (d, round).
            Xoshiro256 rng(0xC0FFEE5EEDULL ^ (static_cast<std::uint64_t>(d) << 8) ^
                           static_cast<std::uint64_t>(round));
            for (int i = 0; i < st.m; ++i) {
                if (st.done[static_cast<std::size_t>(i)]) continue;
                const double radius = 0.5 + rng.uniform01() * (shrink - 0.5);
                const Complex x = radius * unit_from_angle(rng.uniform01());
                st.xr[static_cast<std::size_t>(i)] = x.real();
                st.xi[static_cast<std::size_t>(i)] = x.imag();
                st.residual[static_cast<std::size_t>(i)] =
                    std::numeric_limits<double>::infinity();
            }
        }
        for (int it = 0; it < opts.max_iterations; ++it) {
            active.clear();
            for (int i = 0; i < st.m; ++i)
                if (!st.done[static_cast<std::size_t>(i)]) active.push_back(i);
            if (active.empty()) break;
            ++sweeps;
            for (std::size_t base = 0; base < active.size(); base += detail::aberth_block) {
                const int lanes = static_cast<int>(
                    std::min<std::size_t>(detail::aberth_block, active.size() - base));
                detail::aberth_advance_block(st, active.data() + base, lanes, tol2_d2,
                                             eps_step2);
            }
        }
        // Points frozen by stagnation above tolerance reopen for the next
        // restart round; genuinely converged points stay frozen.
        finished = true;
        for (int i = 0; i < st.m; ++i) {
            if (!(st.residual[static_cast<std::size_t>(i)] <= opts.tolerance)) {
                st.done[static_cast<std::size_t>(i)] = 0;
                finished = false;
            }
        }
    }

    out.iterations = sweeps;
    out.max_residual = 0.0;
    out.converged = true;
    for (int i = 0; i < st.m; ++i) {
        out.points.emplace_back(st.xr[static_cast<std::size_t>(i)],
                                st.xi[static_cast<std::size_t>(i)]);
        const double r = st.residual[static_cast<std::size_t>(i)];
        out.max_residual = std::max(out.max_residual, r);
        if (!st.done[static_cast<std::size_t>(i)] || !(r <= opts.tolerance))
            out.converged = false;
    }
    return out;
}

// Dense oracle: eigenvalues of the materialized companion matrix.
inline CriticalSet critical_points_dense(const RootPoly& p) {
    if (p.degree < 2) throw std::invalid_argument("critical_points needs degree >= 2");
    if (p.degree > dense_oracle_max_order)
        throw std::invalid_argument("dense oracle capped at 512");
    std::vector<Complex> pts;
    pts.reserve(static_cast<std::size_t>(p.degree));
    for (std::size_t j = 0; j < p.distinct_roots.size(); ++j)
        for (int c = 0; c < p.multiplicities[j]; ++c) pts.push_back(p.distinct_roots[j]);
    CriticalSet out;
    out.method = SolveMethod::dense;
    out.points = dense_eigenvalues(materialize(build(pts)));
    out.converged = true;
    out.iterations = 0;
    out.max_residual = 0.0;
    return out;
}

}  // namespace polycrit
