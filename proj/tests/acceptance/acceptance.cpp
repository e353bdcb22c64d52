// Acceptance gate for the whole laboratory. Each criterion prints one
// PASS/FAIL line with its measured value, tolerance, and wall time; the
// process exits nonzero if any line fails. Criteria 6 and 9 aggregate over
// every critical set computed by criteria 1-8, so lines are printed after
// all computation finishes.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "polycrit/circle_measure.hpp"
#include "polycrit/companion.hpp"
#include "polycrit/config.hpp"
#include "polycrit/differentiator.hpp"
#include "polycrit/eig.hpp"
#include "polycrit/empirics.hpp"
#include "polycrit/experiment.hpp"
#include "polycrit/limit_function.hpp"
#include "polycrit/report.hpp"
#include "polycrit/rng.hpp"

#include "../support/matching.hpp"

using namespace polycrit;

namespace {

// Every critical set computed anywhere in the suite lands here. The squeeze
// inequality is checked exactly at registration; the largest modulus feeds
// the closed-disc criterion.
struct Registry {
    long sets = 0;
    long squeeze_violations = 0;
    double max_abs = 0.0;

    void add(const std::vector<Complex>& points) {
        ++sets;
        const PolarSet ps = to_polar(points);
        for (double r : ps.radii) max_abs = std::max(max_abs, r);
        for (int k = 1; k <= 8; ++k) {
            const double radial = radial_moment(ps, k);
            if (!(radial <= 1.0)) {
                ++squeeze_violations;
                return;
            }
            for (double eps : {0.1, 0.01}) {
                double near_circle = 0.0;
                for (double r : ps.radii)
                    if (r >= 1.0 - eps) near_circle += 1.0;
                const double frac = near_circle / static_cast<double>(ps.size());
                if (!(std::pow(1.0 - eps, k) * frac <= radial)) {
                    ++squeeze_violations;
                    return;
                }
            }
        }
    }
};

Registry registry;

struct Outcome {
    bool pass = false;
    std::string note;
    double seconds = 0.0;
    double budget = 0.0;
};

template <typename Body>
Outcome timed(double budget_seconds, Body&& body) {
    Outcome out;
    out.budget = budget_seconds;
    const auto t0 = std::chrono::steady_clock::now();
    out.pass = body(out.note);
    out.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (out.seconds >= budget_seconds) {
        out.pass = false;
        out.note += " [over budget]";
    }
    return out;
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

Complex mean_of(const std::vector<Complex>& v) {
    Complex s{0.0, 0.0};
    for (const Complex& z : v) s += z;
    return s / static_cast<double>(v.size());
}

std::string nonconv_suffix(int nonconv, int total) {
    if (nonconv == 0) return "";
    return "; " + std::to_string(nonconv) + "/" + std::to_string(total) +
           " solves below full residual tolerance";
}

const CircleMeasure halves = CircleMeasure::atomic({0.0, 0.5}, {0.5, 0.5});

std::vector<CircleMeasure> mixed_families() {
    return {CircleMeasure::uniform(), halves, CircleMeasure::arc(0.0, 0.5),
            CircleMeasure::mixture(
                {CircleMeasure::arc(0.5, 0.75), CircleMeasure::uniform()},
                {0.3, 0.7})};
}

// 1. The average of the critical points equals the average of the roots.
bool criterion1(std::string& note) {
    const std::vector<CircleMeasure> families = mixed_families();
    const int n_values[] = {10, 100, 1000};
    double worst = 0.0;
    int nonconv = 0;
    for (int t = 0; t < 200; ++t) {
        const int n = n_values[t % 3];
        const CircleMeasure& m = families[static_cast<std::size_t>(t) % families.size()];
        const RootSample s = sample(m, n, 101000 + static_cast<unsigned>(t));
        const CriticalSet cs = critical_points(from_roots(s.points));
        // Nearly touching roots can leave one residual a few ulps above the
        // tolerance (the iterate itself is still at the zero of S to working
        // precision); the mean identity below holds regardless, so count the
        // flag instead of aborting.
        if (!cs.converged) ++nonconv;
        registry.add(cs.points);
        worst = std::max(worst, std::abs(mean_of(cs.points) - mean_of(s.points)));
    }
    note = "max |mean(crit) - mean(roots)| = " + fmt("%.3g", worst) + " (tol 1e-11)" +
             nonconv_suffix(nonconv, 200);
    return worst <= 1e-11;
}

// 2. Iterative critical points match dense eigenvalues after optimal matching.
bool criterion2(std::string& note) {
    const std::vector<CircleMeasure> families = mixed_families();
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const int n = 2 + (t * 5) % 63;  // covers 2..64
        const CircleMeasure& m = families[static_cast<std::size_t>(t) % families.size()];
        const RootSample s = sample(m, n, 202000 + static_cast<unsigned>(t));
        const RootPoly p = from_roots(s.points);
        const CriticalSet fast = critical_points(p);
        const CriticalSet dense = critical_points_dense(p);
        if (!fast.converged) {
            note = "solver failed to converge";
            return false;
        }
        registry.add(fast.points);
        registry.add(dense.points);
        worst = std::max(worst, testsupport::hungarian_max_edge(fast.points, dense.points));
    }
    note = "max matching distance = " + fmt("%.3g", worst) + " (tol 1e-8)";
    return worst <= 1e-8;
}

// 3. The O(n k^2) trace recursion equals dense eigenvalue power sums.
bool criterion3(std::string& note) {
    const std::vector<CircleMeasure> families = mixed_families();
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        const int n = 8 + (t * 192) / 49;  // 8..200
        const CircleMeasure& m = families[static_cast<std::size_t>(t) % families.size()];
        const RootSample s = sample(m, n, 303000 + static_cast<unsigned>(t));
        const StructuredCompanion comp = build(s.points);
        const std::vector<Complex> eig = dense_eigenvalues(materialize(comp));
        registry.add(eig);
        for (int k = 1; k <= 12; ++k) {
            Complex direct{0.0, 0.0};
            for (const Complex& lambda : eig) direct += ipow(lambda, k);
            const double rel =
                std::abs(power_sum_trace(comp, k) - direct) / std::abs(direct);
            worst = std::max(worst, rel);
        }
    }
    note = "max relative error = " + fmt("%.3g", worst) + " (tol 1e-9)";
    return worst <= 1e-9;
}

// 4. Power-sum averages of the companion converge to the measure moments.
bool criterion4(std::string& note) {
    int hits = 0;
    for (unsigned seed = 0; seed < 100; ++seed) {
        bool ok = true;
        for (const auto& [n, tol] : {std::pair{1000, 0.08}, std::pair{10000, 0.03}}) {
            const RootSample s = sample(halves, n, 404000 + seed);
            const std::vector<Complex> avg = power_sum_averages(s.points, 4);
            for (int k = 1; k <= 4; ++k) {
                const double ck = k % 2 == 0 ? 1.0 : 0.0;  // moments of the two atoms
                if (!(std::abs(avg[static_cast<std::size_t>(k) - 1] - Complex{ck, 0.0}) <=
                      tol))
                    ok = false;
            }
        }
        if (ok) ++hits;
    }
    note = "seeds within tolerance: " + std::to_string(hits) + "/100 (need 90)";
    return hits >= 90;
}

// 5. Interior counts: two balanced atoms pin one interior point (matching the
// limit function's zero count); uniform roots leave o(n) points inside r=0.9.
bool criterion5(std::string& note) {
    const DiscZeroCount limit = count_zeros_in_disc(halves, 0.5);
    if (limit.identically_zero || limit.count != 1) {
        note = "disc zero count for the two-atom limit is not 1";
        return false;
    }
    int nonconv = 0;
    for (int n : {100, 1000}) {
        for (unsigned seed = 0; seed < 100; ++seed) {
            const RootSample s = sample(halves, n, 505000 + seed);
            const CriticalSet cs = critical_points(from_roots(s.points));
            if (!cs.converged) ++nonconv;
            registry.add(cs.points);
            if (interior_count(cs.points, 0.5) != limit.count) {
                note = "interior count != " + std::to_string(limit.count) + " at n=" +
                         std::to_string(n) + " seed=" + std::to_string(seed);
                return false;
            }
        }
    }

    int hits = 0;
    double worst_frac = 0.0;
    for (unsigned seed = 0; seed < 100; ++seed) {
        const RootSample s = sample(CircleMeasure::uniform(), 10000, 515000 + seed);
        const CriticalSet cs = critical_points(from_roots(s.points));
        if (!cs.converged) ++nonconv;
        registry.add(cs.points);
        const double frac =
            static_cast<double>(interior_count(cs.points, 0.9)) / (10000.0 - 1.0);
        worst_frac = std::max(worst_frac, frac);
        if (frac <= 0.02) ++hits;
    }
    note = "two-atom interior = 1 everywhere; uniform interior fraction <= 0.02 for " +
             std::to_string(hits) + "/100 seeds (worst " + fmt("%.3g", worst_frac) + ")" +
             nonconv_suffix(nonconv, 300);
    return hits >= 90;
}

// 6. Radial squeeze: exact inequality on every registered set (finalized in
// main), plus near-circle concentration for unevenly weighted atoms.
bool criterion6_dedicated(std::string& note) {
    const std::vector<CircleMeasure> families{
        CircleMeasure::atomic({0.0, 0.5}, {0.7, 0.3}),
        CircleMeasure::atomic({0.0, 0.25, 0.5, 0.75}, {0.4, 0.3, 0.2, 0.1}),
    };
    int hits = 0;
    double worst = 1.0;
    for (unsigned seed = 0; seed < 100; ++seed) {
        bool ok = true;
        for (std::size_t f = 0; f < families.size(); ++f) {
            const RootSample s =
                sample(families[f], 10000, 606000 + seed + 7000 * static_cast<unsigned>(f));
            const CriticalSet cs = critical_points(from_roots(s.points));
            if (!cs.converged) {
                note = "solver failed to converge";
                return false;
            }
            registry.add(cs.points);
            const double radial = radial_moment(to_polar(cs.points), 2);
            worst = std::min(worst, radial);
            if (!(radial >= 0.99)) ok = false;
        }
        if (ok) ++hits;
    }
    note = "radial_moment(2) >= 0.99 for " + std::to_string(hits) +
             "/100 seeds (worst " + fmt("%.6g", worst) + ")";
    return hits >= 90;
}

// 7. Transport distance to fresh reference samples halves (at least) when n
// grows 16x, for three measure families.
bool criterion7(std::string& note) {
    const std::vector<CircleMeasure> families{CircleMeasure::uniform(), halves,
                                              CircleMeasure::arc(0.0, 0.5)};
    const char* names[] = {"uniform", "two atoms", "arc"};
    note.clear();
    bool pass = true;
    int nonconv = 0;
    for (std::size_t f = 0; f < families.size(); ++f) {
        double medians[2] = {0.0, 0.0};
        const int sizes[2] = {100, 1600};
        for (int si = 0; si < 2; ++si) {
            std::vector<double> w1s;
            for (int trial = 0; trial < 50; ++trial) {
                const std::uint64_t seed = derive_trial_seed(
                    707000 + static_cast<std::uint64_t>(f), sizes[si], trial);
                const RootSample s = sample(families[f], sizes[si], seed);
                const CriticalSet cs = critical_points(from_roots(s.points));
                if (!cs.converged) ++nonconv;
                registry.add(cs.points);
                std::uint64_t ref_state = seed ^ detail::reference_salt;
                const std::vector<double> ref = detail::reference_angles(
                    families[f], sizes[si] - 1, splitmix64(ref_state));
                w1s.push_back(circular_w1(to_polar(cs.points).angles, ref));
            }
            std::sort(w1s.begin(), w1s.end());
            medians[si] = detail::quantile_sorted(w1s, 0.5);
        }
        if (!(medians[1] < 0.5 * medians[0])) pass = false;
        if (f) note += ", ";
        note += std::string(names[f]) + " " + fmt("%.4f", medians[0]) + " -> " +
                  fmt("%.4f", medians[1]);
    }
    note += " (need < half)" + nonconv_suffix(nonconv, 300);
    return pass;
}

// 8. Weyl sums of critical angles land on the measure moments.
bool criterion8(std::string& note) {
    const std::vector<CircleMeasure> families{
        CircleMeasure::arc(0.0, 0.5),
        CircleMeasure::atomic({0.0, 0.25, 0.5, 0.75}, {0.4, 0.3, 0.2, 0.1}),
    };
    int hits = 0;
    int nonconv = 0;
    double worst = 0.0;
    for (unsigned seed = 0; seed < 100; ++seed) {
        bool ok = true;
        for (std::size_t f = 0; f < families.size(); ++f) {
            const MomentVector c = moments(families[f], 4);
            const RootSample s =
                sample(families[f], 10000, 808000 + seed + 9000 * static_cast<unsigned>(f));
            const CriticalSet cs = critical_points(from_roots(s.points));
            if (!cs.converged) ++nonconv;
            registry.add(cs.points);
            const PolarSet ps = to_polar(cs.points);
            for (int k = 1; k <= 4; ++k) {
                const double err = std::abs(weyl_sum(ps, k) - c.c(k));
                worst = std::max(worst, err);
                if (!(err <= 0.05)) ok = false;
            }
        }
        if (ok) ++hits;
    }
    note = "seeds with |weyl - c_k| <= 0.05 for k <= 4: " + std::to_string(hits) +
             "/100 (worst this run " + fmt("%.3g", worst) + ")" +
             nonconv_suffix(nonconv, 200);
    return hits >= 90;
}

// 10. Identical configs give identical rows.csv bytes, at any worker count.
bool criterion10(std::string& note) {
    ExperimentConfig cfg;
    cfg.measure = halves;
    cfg.n_values = {16, 32};
    cfg.trials = 3;
    cfg.k_max = 3;
    cfg.radii = {0.5, 0.9};
    cfg.seed = 11;
    cfg.method = SolveRoute::both;

    const std::string first = rows_csv(run_experiment(cfg, 1));
    const std::string rerun = rows_csv(run_experiment(cfg, 1));
    const std::string parallel = rows_csv(run_experiment(cfg, 2));
    if (first != rerun) {
        note = "rerun changed rows.csv";
        return false;
    }
    if (first != parallel) {
        note = "worker count changed rows.csv";
        return false;
    }
    note = "rows.csv bytes stable across rerun and 2 workers";
    return true;
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, Outcome>> lines(10);

    lines[0] = {"mean identity", timed(30.0, criterion1)};
    lines[1] = {"companion oracle equivalence", timed(60.0, criterion2)};
    lines[2] = {"structured trace correctness", timed(60.0, criterion3)};
    lines[3] = {"power-sum convergence", timed(120.0, criterion4)};
    lines[4] = {"interior escape + disc count", timed(120.0, criterion5)};
    Outcome c6 = timed(60.0, criterion6_dedicated);
    lines[6] = {"weak convergence of angles", timed(180.0, criterion7)};
    lines[7] = {"weyl sums", timed(120.0, criterion8)};

    // Squeeze verdict covers every set registered by criteria 1-8.
    if (registry.squeeze_violations > 0) c6.pass = false;
    c6.note += "; squeeze exact on " + std::to_string(registry.sets) + " sets, " +
                 std::to_string(registry.squeeze_violations) + " violations";
    lines[5] = {"radial squeeze", c6};

    Outcome c9;
    c9.budget = 10.0;
    c9.pass = registry.max_abs <= 1.0 + 1e-9;
    c9.note = "max |y| over " + std::to_string(registry.sets) +
                " critical sets = " + fmt("%.12f", registry.max_abs) +
                " (bound 1 + 1e-9)";
    lines[8] = {"closed unit disc containment", c9};

    lines[9] = {"report determinism", timed(60.0, criterion10)};

    bool all = true;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto& [name, out] = lines[i];
        all = all && out.pass;
        std::printf("criterion %2zu %s  %-30s %s [%.1f s / %.0f s]\n", i + 1,
                    out.pass ? "PASS" : "FAIL", name.c_str(), out.note.c_str(),
                    out.seconds, out.budget);
    }
    std::printf("acceptance: %s\n", all ? "PASS" : "FAIL");
    return all ? 0 : 1;
}
