#pragma once

// AR(1) process z_k = A z_{k-1} + w_k, z_1 = w_1, w_k ~ N(0, I), and its
// joint law P_A = N(0, L_A L_A^T) over the stacked trajectory.

#include <iosfwd>
#include <string_view>

#include <Eigen/Dense>

#include "arlab/rng.hpp"

namespace arlab {

using Index = Eigen::Index;

/// Largest n*d for which dense (nd x nd) oracles are assembled.
inline constexpr Index kDenseCap = 2000;

/// Square dynamics matrix with finite entries.
class SystemMatrix {
public:
    explicit SystemMatrix(Eigen::MatrixXd entries);

    static SystemMatrix scalar(double a);
    static SystemMatrix zero(Index dim);
    static SystemMatrix identity(Index dim);
    /// "0.9,0.1;0,0.8" (row-major, ';' between rows).
    static SystemMatrix parse(std::string_view text);

    Index dim() const noexcept { return entries_.rows(); }
    const Eigen::MatrixXd& matrix() const noexcept { return entries_; }
    double operator()(Index i, Index j) const { return entries_(i, j); }

    std::string to_string() const;

    /// Largest absolute entrywise difference.
    double max_abs_diff(const SystemMatrix& other) const;

private:
    Eigen::MatrixXd entries_;
};

/// n states in R^d, stored as the columns of a d x n matrix so the
/// column-major storage is exactly the stacked vector (z_1; ...; z_n).
class Trajectory {
public:
    explicit Trajectory(Eigen::MatrixXd states);

    static Trajectory zeros(Index dim, Index horizon);

    Index dim() const noexcept { return states_.rows(); }
    Index horizon() const noexcept { return states_.cols(); }
    const Eigen::MatrixXd& states() const noexcept { return states_; }
    /// 0-based state index.
    auto state(Index k) const { return states_.col(k); }

    Eigen::Map<const Eigen::VectorXd> stacked() const {
        return {states_.data(), states_.size()};
    }

private:
    Eigen::MatrixXd states_;
};

/// i.i.d. N(0, I_d) vectors w_1..w_n; entry (j, k) is the (k*d + j)-th normal
/// of the stream.
Trajectory draw_noise(Index dim, Index horizon, const SeedSpec& seed);

/// color(draw_noise(A.dim(), n, seed), A). Throws OverflowError on a
/// non-finite state.
Trajectory simulate(const SystemMatrix& a, Index horizon, const SeedSpec& seed);

/// Applies L_A^{-1}: w_1 = z_1, w_k = z_k - A z_{k-1}. O(n d^2).
Trajectory whiten(const Trajectory& traj, const SystemMatrix& a);

/// Applies L_A: z_1 = w_1, z_k = A z_{k-1} + w_k. O(n d^2).
Trajectory color(const Trajectory& noise, const SystemMatrix& a);

/// log N(z; 0, Sigma_A) = -(nd/2) log(2 pi) - ||L_A^{-1} z||^2 / 2.
/// Uses det Sigma_A = 1. No allocation.
double log_density(const Trajectory& traj, const SystemMatrix& a);

/// ||L_A^{-1} z||^2 without materializing the residuals.
double whitened_norm_sq(const Eigen::MatrixXd& states, const Eigen::MatrixXd& a);

/// Dense L_A: identity diagonal blocks, A^{i-j} below. Oracle use only.
Eigen::MatrixXd dense_factor(const SystemMatrix& a, Index horizon);
/// Dense L_A^{-1}: identity diagonal blocks, -A on the first block subdiagonal.
Eigen::MatrixXd dense_inverse_factor(const SystemMatrix& a, Index horizon);
/// Sigma_A = L_A L_A^T. Oracle use only; nd <= kDenseCap.
Eigen::MatrixXd dense_covariance(const SystemMatrix& a, Index horizon);

/// Header `k,z_1,...,z_d`, one row per step, 17 significant digits.
void write_csv(std::ostream& out, const Trajectory& traj);
Trajectory read_csv(std::istream& in);

}  // namespace arlab
