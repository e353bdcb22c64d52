#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "polycrit/common.hpp"

namespace polycrit {

// Greedy multiset matching: sort both sides by angle then radius and pair
// positionally; returns the largest paired distance. Near-optimal for point
// clouds hugging the circle, and cheap at any size.
inline double matching_distance_greedy(std::span<const Complex> a,
                                       std::span<const Complex> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("matching requires equal multiset sizes");
    auto key = [](const Complex& z) {
        double t = std::atan2(z.imag(), z.real()) / two_pi;
        t -= std::floor(t);
        if (t >= 1.0) t = 0.0;
        return std::pair<double, double>{t, std::abs(z)};
    };
    std::vector<Complex> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    auto by_key = [&](const Complex& x, const Complex& y) { return key(x) < key(y); };
    std::sort(sa.begin(), sa.end(), by_key);
    std::sort(sb.begin(), sb.end(), by_key);
    double worst = 0.0;
    for (std::size_t i = 0; i < sa.size(); ++i)
        worst = std::max(worst, std::abs(sa[i] - sb[i]));
    return worst;
}

}  // namespace polycrit
