#pragma once

// Finite-class maximum likelihood, the least-squares baseline, plug-in
// selection entropy, Monte-Carlo trial loops and the bound certificates.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "arlab/ar_model.hpp"
#include "arlab/rng.hpp"

namespace arlab {

/// Two members are distinct when their max-abs entry difference exceeds this.
inline constexpr double kMemberTolerance = 1e-12;
/// Constant of the parameter-error bound: 2 x 10^4.
inline constexpr double kErrorBoundConstant = 2e4;
/// Certificates declare a bound held when lhs - kCertSigmas * SE <= rhs.
inline constexpr double kCertSigmas = 3.0;

class HypothesisClass {
public:
    /// Throws ValidationError if empty, of mixed dimension, or not pairwise distinct.
    explicit HypothesisClass(std::vector<SystemMatrix> members);

    Index dim() const noexcept { return members_.front().dim(); }
    Index size() const noexcept { return static_cast<Index>(members_.size()); }
    std::span<const SystemMatrix> members() const noexcept { return members_; }
    const SystemMatrix& operator[](Index i) const { return members_.at(static_cast<std::size_t>(i)); }

    std::optional<Index> truth_index() const noexcept { return truth_index_; }

    /// Index of the member within kMemberTolerance of `a`, if any.
    std::optional<Index> find(const SystemMatrix& a) const;

    /// Copy with `truth` marked as the truth member, appended if absent.
    HypothesisClass with_truth(const SystemMatrix& truth) const;

private:
    struct Trusted {};
    HypothesisClass(std::vector<SystemMatrix> members, Trusted);

    friend HypothesisClass grid_class(const SystemMatrix&, double, Index, double);

    std::vector<SystemMatrix> members_;
    std::optional<Index> truth_index_;
};

/// k equispaced values on [c_ij - radius, c_ij + radius] for each of the d^2
/// entries; members enumerate the Cartesian product with entry (0,0) as the
/// slowest-varying coordinate, then row-major. k = 1 yields {center}.
HypothesisClass grid_class(const SystemMatrix& center, double radius, Index points_per_axis,
                           double size_cap = 1e6);

struct MleResult {
    Index index = 0;
    std::vector<double> log_likelihoods;
};

/// Smallest index attaining max_j log_density(traj, A_j).
MleResult mle_select(const Trajectory& traj, const HypothesisClass& hypotheses);

/// (sum_k z_k z_{k-1}^T)(sum_k z_{k-1} z_{k-1}^T)^+ over k = 2..n.
SystemMatrix ols_fit(const Trajectory& traj);

/// Plug-in entropy (nats) of the empirical selection distribution.
double selection_entropy(std::span<const std::uint64_t> counts);
/// Delta-method standard error of selection_entropy.
double selection_entropy_se(std::span<const std::uint64_t> counts);

struct TrialOptions {
    int workers = 0;
    /// Sample count for the Hellinger estimate when nd exceeds kDenseCap.
    Index hellinger_mc_samples = 10000;
};

struct TrialSummary {
    Index class_size = 0;
    Index horizon = 0;
    Index trials = 0;
    Index truth_index = 0;
    std::vector<std::uint64_t> selection_counts;
    double mean_weighted_error = 0.0;
    double se_weighted_error = 0.0;
    double mean_hellinger_sq = 0.0;
    double se_hellinger_sq = 0.0;
    double misselection_rate = 0.0;
    bool hellinger_sampled = false;
};

/// Trial t observes simulate(A*, n, child_seed(seed, t)) and selects by MLE.
/// Requires A* in the class. Overflow errors name the failing trial.
TrialSummary run_trials(const SystemMatrix& astar, const HypothesisClass& hypotheses, Index horizon, Index trials,
                        const SeedSpec& seed, const TrialOptions& options = {});

struct BoundReport {
    double lhs = 0.0;
    double se_lhs = 0.0;
    double mi_estimate = 0.0;
    double se_mi = 0.0;
    double rhs_mi = 0.0;
    double rhs_log_card = 0.0;
    bool holds_mi = false;
    bool holds_log_card = false;
    double slack_ratio = 0.0;  // rhs_mi / lhs, +inf when lhs = 0
};

BoundReport error_bound_certificate(const TrialSummary& summary, const HypothesisClass& hypotheses);

struct HellingerChainReport {
    double e_h2 = 0.0;
    double se_e_h2 = 0.0;
    double middle_term = 0.0;  // -2 log(1 - e_h2 / 2)
    double rhs = 0.0;          // 2 * selection entropy
    bool holds_left = false;   // e_h2 - 3 SE <= middle_term
    bool holds_right = false;  // middle_term at (e_h2 - 3 SE) <= rhs
    bool holds() const noexcept { return holds_left && holds_right; }
};

/// -2 log(1 - x / 2).
double hellinger_middle_term(double e_h2);

HellingerChainReport hellinger_chain_certificate(const TrialSummary& summary);

}  // namespace arlab
