#include "arlab/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "arlab/divergence.hpp"
#include "arlab/error.hpp"
#include "arlab/gram.hpp"
#include "arlab/kernels.hpp"

namespace arlab {

HypothesisClass::HypothesisClass(std::vector<SystemMatrix> members, Trusted) : members_(std::move(members)) {}

HypothesisClass::HypothesisClass(std::vector<SystemMatrix> members) : members_(std::move(members)) {
    if (members_.empty()) throw ValidationError("hypothesis class must be nonempty");
    const Index d = members_.front().dim();
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (members_[i].dim() != d) {
            throw ValidationError("class member " + std::to_string(i) + " has dimension " +
                                  std::to_string(members_[i].dim()) + ", expected " + std::to_string(d));
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (members_[i].max_abs_diff(members_[j]) <= kMemberTolerance) {
                throw ValidationError("class members " + std::to_string(j) + " and " + std::to_string(i) +
                                      " are not distinct");
            }
        }
    }
}

std::optional<Index> HypothesisClass::find(const SystemMatrix& a) const {
    if (a.dim() != dim()) return std::nullopt;
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (members_[i].max_abs_diff(a) <= kMemberTolerance) return static_cast<Index>(i);
    }
    return std::nullopt;
}

HypothesisClass HypothesisClass::with_truth(const SystemMatrix& truth) const {
    if (truth.dim() != dim()) {
        throw ValidationError("truth dimension " + std::to_string(truth.dim()) + " does not match class dimension " +
                              std::to_string(dim()));
    }
    HypothesisClass out = *this;
    if (const auto idx = find(truth)) {
        out.truth_index_ = *idx;
    } else {
        out.members_.push_back(truth);
        out.truth_index_ = out.size() - 1;
    }
    return out;
}

HypothesisClass grid_class(const SystemMatrix& center, double radius, Index points_per_axis, double size_cap) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw ValidationError("grid radius must be a positive finite number");
    if (points_per_axis < 1) throw ValidationError("points_per_axis must be >= 1");
    const Index d = center.dim();
    const Index axes = d * d;
    const double size = std::pow(static_cast<double>(points_per_axis), static_cast<double>(axes));
    if (size > size_cap) {
        throw ValidationError("grid class of size " + std::to_string(size) + " exceeds cap " + std::to_string(size_cap));
    }
    const double step = points_per_axis > 1 ? 2.0 * radius / static_cast<double>(points_per_axis - 1) : 0.0;
    if (points_per_axis > 1 && !(step > kMemberTolerance)) throw ValidationError("grid spacing below member tolerance");

    const auto count = static_cast<Index>(size);
    std::vector<SystemMatrix> members;
    members.reserve(static_cast<std::size_t>(count));
    std::vector<Index> digits(static_cast<std::size_t>(axes), 0);
    for (Index m = 0; m < count; ++m) {
        Eigen::MatrixXd entries = center.matrix();
        if (points_per_axis > 1) {
            for (Index e = 0; e < axes; ++e) {
                entries(e / d, e % d) += -radius + step * static_cast<double>(digits[e]);
            }
        }
        members.emplace_back(std::move(entries));
        // Increment with entry 0 as the most significant digit.
        for (Index e = axes - 1; e >= 0; --e) {
            if (++digits[e] < points_per_axis) break;
            digits[e] = 0;
        }
    }
    return HypothesisClass(std::move(members), HypothesisClass::Trusted{});
}

MleResult mle_select(const Trajectory& traj, const HypothesisClass& hypotheses) {
    if (traj.dim() != hypotheses.dim()) {
        throw ValidationError("trajectory dimension " + std::to_string(traj.dim()) + " does not match class dimension " +
                              std::to_string(hypotheses.dim()));
    }
    MleResult out;
    out.log_likelihoods.reserve(static_cast<std::size_t>(hypotheses.size()));
    for (const auto& a : hypotheses.members()) out.log_likelihoods.push_back(log_density(traj, a));
    out.index = argmax_first(out.log_likelihoods);
    return out;
}

SystemMatrix ols_fit(const Trajectory& traj) {
    if (traj.horizon() < 2) throw ValidationError("ols_fit needs n >= 2");
    const auto& z = traj.states();
    const Index n = z.cols();
    const auto next = z.rightCols(n - 1);
    const auto prev = z.leftCols(n - 1);
    const Eigen::MatrixXd cross = next * prev.transpose();
    const Eigen::MatrixXd second = prev * prev.transpose();
    return SystemMatrix(cross * second.completeOrthogonalDecomposition().pseudoInverse());
}

namespace {

std::uint64_t total_count(std::span<const std::uint64_t> counts) {
    std::uint64_t total = 0;
    for (const auto c : counts) total += c;
    if (total == 0) throw ValidationError("selection counts are all zero");
    return total;
}

}  // namespace

double selection_entropy(std::span<const std::uint64_t> counts) {
    const double total = static_cast<double>(total_count(counts));
    double h = 0.0;
    for (const auto c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / total;
        h -= p * std::log(p);
    }
    return std::max(h, 0.0);
}

double selection_entropy_se(std::span<const std::uint64_t> counts) {
    const double total = static_cast<double>(total_count(counts));
    const double h = selection_entropy(counts);
    double second = 0.0;
    for (const auto c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / total;
        second += p * std::log(p) * std::log(p);
    }
    return std::sqrt(std::max(second - h * h, 0.0) / total);
}

TrialSummary run_trials(const SystemMatrix& astar, const HypothesisClass& hypotheses, Index horizon, Index trials,
                        const SeedSpec& seed, const TrialOptions& options) {
    if (trials < 1) throw ValidationError("trials must be >= 1");
    if (horizon < 1) throw ValidationError("horizon must be >= 1");
    const auto truth = hypotheses.find(astar);
    if (!truth) throw ValidationError("truth is not a member of the hypothesis class");

    const Eigen::MatrixXd g = gram(astar, horizon).matrix;
    const auto selected = trial_selections(astar, hypotheses.members(), horizon, trials, seed, options.workers);

    TrialSummary out;
    out.class_size = hypotheses.size();
    out.horizon = horizon;
    out.trials = trials;
    out.truth_index = *truth;
    out.selection_counts.assign(static_cast<std::size_t>(hypotheses.size()), 0);
    for (const Index s : selected) ++out.selection_counts[static_cast<std::size_t>(s)];

    // Per-member quantities depend only on the selected matrix.
    std::vector<Index> used;
    for (Index j = 0; j < hypotheses.size(); ++j) {
        if (out.selection_counts[j] > 0 && j != *truth) used.push_back(j);
    }
    std::vector<double> member_error(out.selection_counts.size(), 0.0);
    std::vector<DivergenceEstimate> member_h2(out.selection_counts.size());
    const double n = static_cast<double>(horizon);
    out.hellinger_sampled = astar.dim() * horizon > kDenseCap;
    const SeedSpec h2_seed = child_seed(seed, std::numeric_limits<std::uint64_t>::max());
    parallel_for(static_cast<Index>(used.size()), options.workers, [&](Index u) {
        const Index j = used[u];
        const SystemMatrix& ahat = hypotheses[j];
        member_error[j] = weighted_trace(astar, ahat, g) / n;
        member_h2[j] = out.hellinger_sampled
                           ? hellinger_sq_mc(astar, ahat, horizon, options.hellinger_mc_samples,
                                             child_seed(h2_seed, static_cast<std::uint64_t>(j)), 1)
                           : hellinger_sq_exact(ahat, astar, horizon);
    });

    std::vector<double> errors(selected.size());
    std::vector<double> h2(selected.size());
    for (std::size_t t = 0; t < selected.size(); ++t) {
        errors[t] = member_error[selected[t]];
        h2[t] = member_h2[selected[t]].value;
    }
    const MeanSe e = mean_and_se(errors);
    const MeanSe h = mean_and_se(h2);
    out.mean_weighted_error = e.mean;
    out.se_weighted_error = e.std_error;
    out.mean_hellinger_sq = std::clamp(h.mean, 0.0, 1.0);
    // Sampled per-member values add their own variance, weighted by frequency.
    double extra = 0.0;
    for (const Index j : used) {
        const double w = static_cast<double>(out.selection_counts[j]) / static_cast<double>(trials);
        extra += w * w * member_h2[j].std_error * member_h2[j].std_error;
    }
    out.se_hellinger_sq = std::sqrt(h.std_error * h.std_error + extra);
    out.misselection_rate =
        1.0 - static_cast<double>(out.selection_counts[*truth]) / static_cast<double>(trials);
    return out;
}

BoundReport error_bound_certificate(const TrialSummary& summary, const HypothesisClass& hypotheses) {
    BoundReport r;
    const double n = static_cast<double>(summary.horizon);
    r.lhs = summary.mean_weighted_error;
    r.se_lhs = summary.se_weighted_error;
    r.mi_estimate = selection_entropy(summary.selection_counts);
    r.se_mi = selection_entropy_se(summary.selection_counts);
    r.rhs_mi = kErrorBoundConstant * r.mi_estimate / n;
    r.rhs_log_card = kErrorBoundConstant * std::log(static_cast<double>(hypotheses.size())) / n;
    const double lower = r.lhs - kCertSigmas * r.se_lhs;
    r.holds_mi = lower <= r.rhs_mi;
    r.holds_log_card = lower <= r.rhs_log_card;
    r.slack_ratio = r.lhs > 0.0 ? r.rhs_mi / r.lhs : std::numeric_limits<double>::infinity();
    return r;
}

double hellinger_middle_term(double e_h2) { return -2.0 * std::log1p(-0.5 * e_h2); }

HellingerChainReport hellinger_chain_certificate(const TrialSummary& summary) {
    HellingerChainReport r;
    r.e_h2 = summary.mean_hellinger_sq;
    r.se_e_h2 = summary.se_hellinger_sq;
    r.middle_term = hellinger_middle_term(r.e_h2);
    r.rhs = 2.0 * selection_entropy(summary.selection_counts);
    const double lower = std::max(r.e_h2 - kCertSigmas * r.se_e_h2, 0.0);
    r.holds_left = r.e_h2 - kCertSigmas * r.se_e_h2 <= r.middle_term;
    r.holds_right = hellinger_middle_term(lower) <= r.rhs;
    return r;
}

}  // namespace arlab
