#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "polycrit/circle_measure.hpp"
#include "polycrit/config.hpp"
#include "polycrit/differentiator.hpp"
#include "polycrit/empirics.hpp"
#include "polycrit/matching.hpp"
#include "polycrit/rng.hpp"
#include "polycrit/root_poly.hpp"

namespace polycrit {

struct TrialRow {
    int n = 0;
    int trial = 0;
    std::uint64_t seed = 0;
    int iterations = 0;
    bool converged = false;
    double residual = 0.0;  // solver max_residual (pole-scaled |S|)
    double w1 = 0.0;        // circular W1 to a fresh reference sample
    double ks = 0.0;
    std::vector<Complex> root_moments;  // k = 1..k_max
    std::vector<Complex> crit_moments;
    std::vector<double> radial;     // radial_moment(k), k = 1..k_max
    std::vector<Complex> weyl;      // weyl_sum(k)
    std::vector<int> interior;      // per config radius
    double max_abs = 0.0;           // max |y| over the critical set
    double wall_ms = 0.0;           // informational; never in rows.csv
};

struct ExperimentReport {
    ExperimentConfig config;
    std::string measure_text;
    std::vector<Complex> measure_moments;  // c_1..c_k_max
    std::vector<TrialRow> rows;            // index = n_index * trials + trial

    // one representative trial (largest n, trial 0) kept for the scatter plot
    int rep_n = 0;
    std::uint64_t rep_seed = 0;
    std::vector<Complex> rep_roots;
    std::vector<Complex> rep_criticals;

    double cross_check_max = 0.0;  // method=both: worst greedy matching distance

    int nonconverged_count() const {
        int c = 0;
        for (const TrialRow& r : rows)
            if (!r.converged) ++c;
        return c;
    }
};

namespace detail {

// Fresh comparison sample for the W1 column, seeded independently of the
// trial's own roots.
inline constexpr std::uint64_t reference_salt = 0x5D3F0C41B7A9E6D2ULL;

inline std::vector<double> reference_angles(const CircleMeasure& m, int count,
                                            std::uint64_t seed) {
    Xoshiro256 rng(seed);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out.push_back(sample_angle(m, rng));
    return out;
}

inline TrialRow run_trial(const ExperimentConfig& cfg, int n, int trial,
                          std::vector<Complex>* rep_roots,
                          std::vector<Complex>* rep_criticals, double* cross_check) {
    const auto t0 = std::chrono::steady_clock::now();
    TrialRow row;
    row.n = n;
    row.trial = trial;
    row.seed = derive_trial_seed(cfg.seed, n, trial);

    const RootSample roots = sample(cfg.measure, n, row.seed);
    const RootPoly poly = from_roots(roots.points);

    CriticalSet cs;
    if (cfg.method == SolveRoute::dense) {
        cs = critical_points_dense(poly);
    } else {
        cs = critical_points(poly);
        if (cfg.method == SolveRoute::both) {
            const CriticalSet dense = critical_points_dense(poly);
            const double dist = matching_distance_greedy(cs.points, dense.points);
            if (cross_check) *cross_check = dist;
        }
    }
    row.iterations = cs.iterations;
    row.converged = cs.converged;
    row.residual = cs.max_residual;

    const PolarSet polar = to_polar(cs.points);
    std::uint64_t ref_state = row.seed ^ reference_salt;
    const std::vector<double> ref =
        reference_angles(cfg.measure, n - 1, splitmix64(ref_state));

    row.w1 = circular_w1(polar.angles, ref);
    row.ks = ks_distance(polar.angles, cfg.measure);
    row.root_moments.reserve(static_cast<std::size_t>(cfg.k_max));
    row.crit_moments.reserve(static_cast<std::size_t>(cfg.k_max));
    row.radial.reserve(static_cast<std::size_t>(cfg.k_max));
    row.weyl.reserve(static_cast<std::size_t>(cfg.k_max));
    for (int k = 1; k <= cfg.k_max; ++k) {
        row.root_moments.push_back(empirical_moment(roots.points, k));
        row.crit_moments.push_back(empirical_moment(cs.points, k));
        row.radial.push_back(radial_moment(polar, k));
        row.weyl.push_back(weyl_sum(polar, k));
    }
    row.interior.reserve(cfg.radii.size());
    for (double r : cfg.radii) row.interior.push_back(interior_count(cs.points, r));
    for (const Complex& y : cs.points) row.max_abs = std::max(row.max_abs, std::abs(y));

    if (rep_roots) *rep_roots = roots.points;
    if (rep_criticals) *rep_criticals = cs.points;

    row.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    return row;
}

}  // namespace detail

// Runs every (n, trial) cell. Trial contents depend only on the config (each
// cell reseeds independently), so the report is identical for any `jobs`.
inline ExperimentReport run_experiment(const ExperimentConfig& cfg, int jobs = 1) {
    ExperimentReport rep;
    rep.config = cfg;
    rep.measure_text = describe(cfg.measure);
    const MomentVector mv = moments(cfg.measure, cfg.k_max);
    rep.measure_moments = mv.entries;

    const std::size_t total = cfg.n_values.size() * static_cast<std::size_t>(cfg.trials);
    rep.rows.resize(total);
    rep.rep_n = cfg.n_values.back();
    const std::size_t rep_index = (cfg.n_values.size() - 1) *
                                  static_cast<std::size_t>(cfg.trials);

    std::mutex merge_mutex;
    const auto work = [&](std::size_t idx) {
        const int n = cfg.n_values[idx / static_cast<std::size_t>(cfg.trials)];
        const int trial = static_cast<int>(idx % static_cast<std::size_t>(cfg.trials));
        const bool is_rep = idx == rep_index;
        double cross = 0.0;
        rep.rows[idx] = detail::run_trial(
            cfg, n, trial, is_rep ? &rep.rep_roots : nullptr,
            is_rep ? &rep.rep_criticals : nullptr,
            cfg.method == SolveRoute::both ? &cross : nullptr);
        if (is_rep) rep.rep_seed = rep.rows[idx].seed;
        if (cfg.method == SolveRoute::both) {
            std::lock_guard<std::mutex> lock(merge_mutex);
            rep.cross_check_max = std::max(rep.cross_check_max, cross);
        }
    };

    if (jobs <= 1) {
        for (std::size_t idx = 0; idx < total; ++idx) work(idx);
        return rep;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    const int workers = std::min<int>(jobs, static_cast<int>(total));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                const std::size_t idx = next.fetch_add(1);
                if (idx >= total) return;
                try {
                    work(idx);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
    return rep;
}

// Median and interquartile range of the headline metrics, one row per n.
struct AggregateRow {
    int n = 0;
    int trials = 0;
    double median_w1 = 0.0;
    double iqr_w1 = 0.0;
    double median_ks = 0.0;
    double iqr_ks = 0.0;
};

namespace detail {

inline double quantile_sorted(const std::vector<double>& v, double q) {
    if (v.empty()) return 0.0;
    const double pos = q * static_cast<double>(v.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return v[lo] + frac * (v[hi] - v[lo]);
}

}  // namespace detail

inline std::vector<AggregateRow> aggregate_rows(const ExperimentReport& rep) {
    std::vector<AggregateRow> out;
    const int trials = rep.config.trials;
    for (std::size_t ni = 0; ni < rep.config.n_values.size(); ++ni) {
        std::vector<double> w1s, kss;
        w1s.reserve(static_cast<std::size_t>(trials));
        kss.reserve(static_cast<std::size_t>(trials));
        for (int t = 0; t < trials; ++t) {
            const TrialRow& row = rep.rows[ni * static_cast<std::size_t>(trials) +
                                           static_cast<std::size_t>(t)];
            w1s.push_back(row.w1);
            kss.push_back(row.ks);
        }
        std::sort(w1s.begin(), w1s.end());
        std::sort(kss.begin(), kss.end());
        AggregateRow a;
        a.n = rep.config.n_values[ni];
        a.trials = trials;
        a.median_w1 = detail::quantile_sorted(w1s, 0.5);
        a.iqr_w1 = detail::quantile_sorted(w1s, 0.75) - detail::quantile_sorted(w1s, 0.25);
        a.median_ks = detail::quantile_sorted(kss, 0.5);
        a.iqr_ks = detail::quantile_sorted(kss, 0.75) - detail::quantile_sorted(kss, 0.25);
        out.push_back(a);
    }
    return out;
}

}  // namespace polycrit
