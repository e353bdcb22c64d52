#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "polycrit/circle_measure.hpp"
#include "polycrit/differentiator.hpp"
#include "polycrit/empirics.hpp"
#include "polycrit/rng.hpp"

using namespace polycrit;

namespace {

const CircleMeasure halves = CircleMeasure::atomic({0.0, 0.5}, {0.5, 0.5});

std::vector<double> shifted(std::vector<double> v, double delta) {
    for (double& t : v) t = std::fmod(t + delta, 1.0);
    return v;
}

}  // namespace

TEST_CASE("polar decomposition of reference points") {
    const std::vector<Complex> pts{{1.0, 0.0}, {0.0, -1.0}, {0.0, 0.0}};
    const PolarSet ps = to_polar(pts);
    REQUIRE(ps.size() == 3);
    CHECK(ps.radii[0] == 1.0);
    CHECK(ps.angles[0] == 0.0);
    CHECK(ps.radii[1] == 1.0);
    CHECK(ps.angles[1] == 0.75);
    CHECK(ps.radii[2] == 0.0);
    CHECK(ps.angles[2] == 0.0);
    CHECK(ps.origin_points == 1);
}

TEST_CASE("polar decomposition reproduces the source points") {
    const RootSample s = sample(CircleMeasure::uniform(), 64, 9);
    std::vector<Complex> pts = s.points;
    pts.push_back(Complex{0.25, -0.4});
    const PolarSet ps = to_polar(pts);
    for (std::size_t j = 0; j < pts.size(); ++j) {
        const Complex back = ps.radii[j] * unit_from_angle(ps.angles[j]);
        CHECK(std::abs(back - pts[j]) < 1e-12);
        CHECK(ps.angles[j] >= 0.0);
        CHECK(ps.angles[j] < 1.0);
    }
}

TEST_CASE("empirical moments of symmetric configurations") {
    const std::vector<Complex> pm{{1.0, 0.0}, {-1.0, 0.0}};
    CHECK(empirical_moment(pm, 2) == Complex{1.0, 0.0});

    std::vector<Complex> fifth;
    for (int j = 0; j < 5; ++j)
        fifth.push_back(unit_from_angle(static_cast<double>(j) / 5.0));
    CHECK(std::abs(empirical_moment(fifth, 5) - Complex{1.0, 0.0}) < 1e-14);
    CHECK(std::abs(empirical_moment(fifth, 3)) < 1e-14);

    CHECK_THROWS_AS(empirical_moment(std::vector<Complex>{}, 1), std::invalid_argument);
    CHECK_THROWS_AS(empirical_moment(pm, 0), std::invalid_argument);
}

TEST_CASE("first empirical moment of uniform samples concentrates near zero") {
    int hits = 0;
    for (unsigned seed = 0; seed < 100; ++seed) {
        const RootSample s = sample(CircleMeasure::uniform(), 10000, seed);
        if (std::abs(empirical_moment(s.points, 1)) <= 0.05) ++hits;
    }
    CHECK(hits >= 95);
}

TEST_CASE("radial moments of reference sets") {
    PolarSet origin;
    origin.radii = {0.0};
    origin.angles = {0.0};
    CHECK(radial_moment(origin, 1) == 0.0);
    CHECK(radial_moment(origin, 5) == 0.0);

    PolarSet circle;
    for (int j = 0; j < 7; ++j) {
        circle.radii.push_back(1.0);
        circle.angles.push_back(static_cast<double>(j) / 7.0);
    }
    CHECK(radial_moment(circle, 1) == 1.0);
    CHECK(radial_moment(circle, 8) == 1.0);
}

TEST_CASE("critical sets of two balanced atoms are radially tight") {
    const RootSample s = sample(halves, 10000, 31);
    const CriticalSet cs = critical_points(from_roots(s.points));
    REQUIRE(cs.converged);
    const PolarSet ps = to_polar(cs.points);
    CHECK(radial_moment(ps, 2) >= 0.999);
    CHECK(radial_moment(ps, 2) <= 1.0);
}

TEST_CASE("weyl sums of reference sets") {
    PolarSet one;
    one.radii = {1.0};
    one.angles = {0.0};
    CHECK(weyl_sum(one, 1) == Complex{1.0, 0.0});
    CHECK(weyl_sum(one, 7) == Complex{1.0, 0.0});

    PolarSet grid;
    const int n = 32;
    for (int j = 0; j < n; ++j) {
        grid.radii.push_back(1.0);
        grid.angles.push_back(static_cast<double>(j) / n);
    }
    for (int k = 1; k <= 3; ++k) CHECK(std::abs(weyl_sum(grid, k)) < 1e-12);
}

TEST_CASE("weyl sums of critical angles approach the measure moments") {
    const RootSample s = sample(halves, 4000, 57);
    const CriticalSet cs = critical_points(from_roots(s.points));
    REQUIRE(cs.converged);
    const PolarSet ps = to_polar(cs.points);
    // c_2 of the two balanced atoms is 1.
    CHECK(std::abs(weyl_sum(ps, 2) - Complex{1.0, 0.0}) < 0.05);
}

TEST_CASE("circular transport distance on closed-form pairs") {
    const std::vector<double> zero{0.0};
    CHECK(circular_w1(zero, zero) == 0.0);
    CHECK(circular_w1(zero, std::vector<double>{0.5}) == 0.5);
    CHECK(circular_w1(zero, std::vector<double>{0.75}) == 0.25);

    const std::vector<double> a{0.1, 0.4, 0.9};
    CHECK(circular_w1(a, a) == 0.0);
    CHECK_THROWS_AS(circular_w1(a, std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("circular transport distance accepts different sample sizes") {
    const std::vector<double> a{0.0, 0.5};
    const std::vector<double> b{0.0, 1.0 / 3.0, 2.0 / 3.0};
    const double d = circular_w1(a, b);
    CHECK(d > 0.0);
    CHECK(d <= 0.5);
}

TEST_CASE("circular transport distance is a metric") {
    Xoshiro256 rng(404);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<double> a(5 + rng() % 8), b(5 + rng() % 8),
            c(5 + rng() % 8);
        for (double& t : a) t = rng.uniform01();
        for (double& t : b) t = rng.uniform01();
        for (double& t : c) t = rng.uniform01();

        const double ab = circular_w1(a, b);
        const double ba = circular_w1(b, a);
        const double bc = circular_w1(b, c);
        const double ac = circular_w1(a, c);

        // Swapping arguments negates every signed displacement; the
        // weighted-median tie-break can then land one ulp away.
        CHECK(std::abs(ab - ba) < 1e-12);
        CHECK(ab >= 0.0);
        CHECK(ab <= 0.5);
        CHECK(ac <= ab + bc + 1e-12);

        // Rotating both samples by the same offset changes nothing.
        const double delta = rng.uniform01();
        CHECK(std::abs(circular_w1(shifted(a, delta), shifted(b, delta)) - ab) < 1e-12);
    }
}

TEST_CASE("ks distance on closed-form pairs") {
    const CircleMeasure pm0 = CircleMeasure::atomic({0.0}, {1.0});
    CHECK(ks_distance(std::vector<double>{0.0, 0.0}, pm0) == 0.0);
    CHECK(ks_distance(std::vector<double>{0.5}, pm0) == 1.0);

    // Samples laid out exactly as the atoms with matching frequencies.
    const std::vector<double> exact{0.0, 0.5};
    CHECK(ks_distance(exact, halves) == 0.0);

    CHECK_THROWS_AS(ks_distance(std::vector<double>{}, halves), std::invalid_argument);
}

TEST_CASE("ks distance obeys the DKW envelope on arc samples") {
    const CircleMeasure arc = CircleMeasure::arc(0.0, 0.5);
    int hits = 0;
    for (unsigned seed = 0; seed < 100; ++seed) {
        const RootSample s = sample(arc, 10000, 1000 + seed);
        if (ks_distance(s.angles, arc) <= 0.03) ++hits;
    }
    CHECK(hits >= 95);
}

TEST_CASE("interior counts") {
    CHECK(interior_count(std::vector<Complex>{{0.0, 0.0}}, 0.5) == 1);

    std::vector<Complex> circle;
    for (int j = 0; j < 9; ++j)
        circle.push_back(unit_from_angle(static_cast<double>(j) / 9.0));
    CHECK(interior_count(circle, 0.99) == 0);

    CHECK_THROWS_AS(interior_count(circle, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(interior_count(circle, 1.0), std::invalid_argument);
}

TEST_CASE("two balanced atoms leave exactly one interior critical point") {
    for (int n : {100, 501, 1000}) {
        const RootSample s = sample(halves, n, 7000 + static_cast<unsigned>(n));
        const CriticalSet cs = critical_points(from_roots(s.points));
        REQUIRE(cs.converged);
        CHECK(interior_count(cs.points, 0.5) == 1);
    }
}

TEST_CASE("squeeze and triangle bounds hold on computed critical sets") {
    const std::vector<CircleMeasure> families{
        CircleMeasure::uniform(), halves, CircleMeasure::arc(0.25, 0.8)};
    for (std::size_t f = 0; f < families.size(); ++f) {
        const RootSample s = sample(families[f], 300, 8800 + static_cast<unsigned>(f));
        const CriticalSet cs = critical_points(from_roots(s.points));
        REQUIRE(cs.converged);
        const PolarSet ps = to_polar(cs.points);
        const Complex m1 = empirical_moment(cs.points, 1);
        REQUIRE(std::abs(m1) <= 1.0 + 1e-9);

        for (int k = 1; k <= 8; ++k) {
            const double radial = radial_moment(ps, k);
            CHECK(radial <= 1.0);
            for (double eps : {0.1, 0.01}) {
                double frac = 0.0;
                for (double r : ps.radii)
                    if (r >= 1.0 - eps) frac += 1.0;
                frac /= static_cast<double>(ps.size());
                CHECK(std::pow(1.0 - eps, k) * frac <= radial);
            }
            const std::vector<Complex>& pts = cs.points;
            const double gap = std::abs(weyl_sum(ps, k) - empirical_moment(pts, k));
            CHECK(gap <= 1.0 - radial + 1e-9);
        }
    }
}
