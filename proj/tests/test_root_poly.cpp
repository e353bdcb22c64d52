#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "polycrit/circle_measure.hpp"
#include "polycrit/root_poly.hpp"
#include "support/oracles.hpp"

using namespace polycrit;

namespace {

RootPoly poly_from(std::initializer_list<Complex> pts) {
    std::vector<Complex> v(pts);
    return from_roots(v);
}

}  // namespace

TEST_CASE("from_roots groups bit-identical roots") {
    const RootPoly p = poly_from({{1.0, 0.0}, {-1.0, 0.0}, {1.0, 0.0}});
    REQUIRE(p.degree == 3);
    REQUIRE(p.distinct_count() == 2);
    CHECK(p.distinct_roots[0] == Complex{1.0, 0.0});
    CHECK(p.multiplicities[0] == 2);
    CHECK(p.multiplicities[1] == 1);
    CHECK_THROWS_AS(from_roots(std::vector<Complex>{{1.0, 0.0}}), std::invalid_argument);
}

TEST_CASE("coefficients of small polynomials") {
    const std::vector<Complex> c1 = coefficients(poly_from({{1.0, 0.0}, {-1.0, 0.0}}));
    REQUIRE(c1.size() == 3);  // z^2 - 1
    CHECK(c1[0] == Complex{-1.0, 0.0});
    CHECK(c1[1] == Complex{0.0, 0.0});
    CHECK(c1[2] == Complex{1.0, 0.0});

    const std::vector<Complex> c2 = coefficients(poly_from({{1.0, 0.0}, {1.0, 0.0}}));
    REQUIRE(c2.size() == 3);  // (z-1)^2
    CHECK(c2[0] == Complex{1.0, 0.0});
    CHECK(c2[1] == Complex{-2.0, 0.0});
    CHECK(c2[2] == Complex{1.0, 0.0});
}

TEST_CASE("coefficients of the fifth roots of unity give z^5 - 1") {
    std::vector<Complex> roots;
    for (int j = 0; j < 5; ++j) roots.push_back(unit_from_angle(j / 5.0));
    const std::vector<Complex> c = coefficients(from_roots(roots));
    REQUIRE(c.size() == 6);
    CHECK(std::abs(c[0] - Complex{-1.0, 0.0}) < 1e-14);
    for (int j = 1; j <= 4; ++j) CHECK(std::abs(c[static_cast<std::size_t>(j)]) < 1e-14);
    CHECK(std::abs(c[5] - Complex{1.0, 0.0}) < 1e-14);
}

TEST_CASE("coefficient oracle rejects large degrees") {
    std::vector<Complex> roots(513, Complex{1.0, 0.0});
    CHECK_THROWS_AS(coefficients(from_roots(roots)), std::invalid_argument);
}

TEST_CASE("eval returns log magnitude and phase") {
    const RootPoly p = poly_from({{1.0, 0.0}, {-1.0, 0.0}});
    const Complex z{2.0, 0.0};  // p(2) = 3
    const LogEval e = eval(p, z);
    CHECK(e.log_magnitude == Catch::Approx(std::log(3.0)));
    CHECK(std::abs(e.phase - Complex{1.0, 0.0}) < 1e-12);

    const LogEval at_root = eval(p, Complex{1.0, 0.0});
    CHECK(at_root.log_magnitude == -std::numeric_limits<double>::infinity());
}

TEST_CASE("log_derivative matches the coefficient oracle") {
    Xoshiro256 rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 8 + static_cast<int>(rng.uniform01() * 120);
        const RootSample s = sample(CircleMeasure::uniform(), n, 4000 + trial);
        const RootPoly p = from_roots(s.points);
        for (int probe = 0; probe < 5; ++probe) {
            const double radius = 0.2 + 0.6 * rng.uniform01();
            const Complex z = radius * unit_from_angle(rng.uniform01());
            const Complex mine = log_derivative(p, z);
            const Complex ref = oracles::log_derivative_via_coeffs(p, z);
            CHECK(std::abs(mine - ref) <= 1e-9 * std::abs(ref));
        }
    }
}

TEST_CASE("log_derivative_prime matches finite differences") {
    const RootSample s = sample(CircleMeasure::uniform(), 24, 99);
    const RootPoly p = from_roots(s.points);
    for (int probe = 0; probe < 8; ++probe) {
        const Complex z = 0.5 * unit_from_angle(probe / 8.0 + 0.01);
        const Complex mine = log_derivative_prime(p, z);
        const Complex ref = oracles::fd_log_derivative_prime(p, z);
        CHECK(std::abs(mine - ref) <= 1e-5 * (1.0 + std::abs(ref)));
    }
}

TEST_CASE("log_derivative at a root is rejected") {
    const RootPoly p = poly_from({{1.0, 0.0}, {-1.0, 0.0}});
    CHECK_THROWS_AS(log_derivative(p, Complex{1.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(log_derivative_prime(p, Complex{-1.0, 0.0}), std::domain_error);
}

TEST_CASE("rotation equivariance of the logarithmic derivative") {
    const RootSample s = sample(CircleMeasure::arc(0.1, 0.8), 40, 7);
    const RootPoly p = from_roots(s.points);
    const double alpha = 0.37;
    const Complex rot = unit_from_angle(alpha);
    std::vector<Complex> rotated;
    for (const Complex& z : s.points) rotated.push_back(rot * z);
    const RootPoly q = from_roots(rotated);
    for (int probe = 0; probe < 6; ++probe) {
        const Complex z = 0.6 * unit_from_angle(probe / 6.0 + 0.02);
        const Complex lhs = log_derivative(q, rot * z);
        const Complex rhs = log_derivative(p, z) / rot;
        CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("conjugation equivariance is exact") {
    const RootSample s = sample(CircleMeasure::uniform(), 32, 55);
    const RootPoly p = from_roots(s.points);
    std::vector<Complex> conj_roots;
    for (const Complex& z : s.points) conj_roots.push_back(std::conj(z));
    const RootPoly q = from_roots(conj_roots);
    for (int probe = 0; probe < 10; ++probe) {
        const Complex z = 0.7 * unit_from_angle(probe / 10.0 + 0.003);
        const Complex lhs = log_derivative(q, std::conj(z));
        const Complex rhs = std::conj(log_derivative(p, z));
        CHECK(lhs.real() == rhs.real());
        CHECK(lhs.imag() == rhs.imag());
    }
}
