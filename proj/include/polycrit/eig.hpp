#pragma once

#include <vector>

#include <Eigen/Dense>

#include "polycrit/companion.hpp"

namespace polycrit {

// All eigenvalues of a dense complex matrix (oracle path).
inline std::vector<Complex> dense_eigenvalues(const DenseMatrix& m) {
    Eigen::MatrixXcd a(m.order, m.order);
    for (int i = 0; i < m.order; ++i)
        for (int j = 0; j < m.order; ++j) a(i, j) = m.at(i, j);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("dense eigenvalue solver failed to converge");
    const auto& ev = solver.eigenvalues();
    return std::vector<Complex>(ev.data(), ev.data() + ev.size());
}

}  // namespace polycrit
