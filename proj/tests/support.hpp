#pragma once

// Generators and dense oracles shared by the unit and acceptance suites.
// Oracles here are deliberately written against the explicit (nd x nd)
// matrices and never call the banded fast paths they check.

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "arlab/ar_model.hpp"

namespace arlab::testing {

inline Eigen::MatrixXd uniform_matrix(std::mt19937_64& gen, Index rows, Index cols, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    Eigen::MatrixXd m(rows, cols);
    for (Index i = 0; i < m.size(); ++i) m.data()[i] = u(gen);
    return m;
}

inline SystemMatrix random_system(std::mt19937_64& gen, Index dim, double lo = -1.2, double hi = 1.2) {
    return SystemMatrix(uniform_matrix(gen, dim, dim, lo, hi));
}

/// Random matrix rescaled so its spectral radius is `radius`.
inline SystemMatrix random_stable(std::mt19937_64& gen, Index dim, double radius) {
    Eigen::MatrixXd m = uniform_matrix(gen, dim, dim, -1.0, 1.0);
    const double rho = m.eigenvalues().cwiseAbs().maxCoeff();
    if (rho > 0.0) m *= radius / rho;
    return SystemMatrix(m);
}

inline Trajectory random_trajectory(std::mt19937_64& gen, Index dim, Index horizon) {
    std::normal_distribution<double> g;
    Eigen::MatrixXd z(dim, horizon);
    for (Index i = 0; i < z.size(); ++i) z.data()[i] = g(gen);
    return Trajectory(z);
}

/// sum_{k=1}^{i} A^{k-1} (A^{k-1})^T by explicit powers.
inline Eigen::MatrixXd power_sum(const Eigen::MatrixXd& a, Index i) {
    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(a.rows(), a.cols());
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(a.rows(), a.cols());
    for (Index k = 1; k <= i; ++k) {
        sum += power * power.transpose();
        power = (power * a).eval();
    }
    return sum;
}

/// log N(x; 0, sigma) via a dense Cholesky factorization.
inline double dense_log_density(const Eigen::MatrixXd& sigma, const Eigen::VectorXd& x) {
    const Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    const Eigen::VectorXd y = llt.matrixL().solve(x);
    const double log_det = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    const double dim = static_cast<double>(x.size());
    return -0.5 * dim * std::log(2.0 * std::numbers::pi) - 0.5 * log_det - 0.5 * y.squaredNorm();
}

inline double dense_log_det(const Eigen::MatrixXd& sigma) {
    const Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

}  // namespace arlab::testing
