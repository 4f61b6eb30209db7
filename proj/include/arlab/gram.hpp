#pragma once

// State covariances P_i = sum_{k=1}^i A^{k-1} (A^{k-1})^T and their sum
// G_n = sum_{i=1}^n P_i, the weighting in the parameter-error functional.

#include <Eigen/Dense>

#include "arlab/ar_model.hpp"

namespace arlab {

struct PrefixCovariance {
    Index index = 0;
    Eigen::MatrixXd matrix;
};

struct GramMatrix {
    Index horizon = 0;
    Eigen::MatrixXd matrix;  // unnormalized: sum of P_1..P_n
};

/// P_1 = I, P_{j+1} = I + A P_j A^T, symmetrized after each step.
/// Throws OverflowError naming the first step with a non-finite entry.
PrefixCovariance prefix_covariance(const SystemMatrix& a, Index i);

/// G_n accumulated alongside the P recursion, O(n d^3).
GramMatrix gram(const SystemMatrix& a, Index horizon);

/// tr((A* - A)^T (A* - A) G) for a precomputed G.
double weighted_trace(const SystemMatrix& astar, const SystemMatrix& a, const Eigen::MatrixXd& g);

/// tr((A* - Â)^T (A* - Â) G_n(A*)) / n.
double weighted_error(const SystemMatrix& astar, const SystemMatrix& ahat, Index horizon);

}  // namespace arlab
