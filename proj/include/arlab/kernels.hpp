#pragma once

// Data-parallel kernels. Each work item i owns the random stream
// child_seed(seed, i) and writes only slot i of the output; reductions happen
// afterwards in index order, so results do not depend on the worker count.
// arlab::reference holds the serial versions the tests compare against.

#include <exception>
#include <span>
#include <vector>

#include <omp.h>

#include "arlab/ar_model.hpp"

namespace arlab {

/// workers <= 0 means omp_get_max_threads().
int resolve_workers(int workers);

/// Runs fn(i) for i in [0, count) on `workers` threads. If any call throws,
/// the exception from the smallest failing index is rethrown.
template <class Fn>
void parallel_for(Index count, int workers, Fn&& fn) {
    Index failed = count;
    std::exception_ptr error;
#pragma omp parallel for schedule(static) num_threads(resolve_workers(workers))
    for (Index i = 0; i < count; ++i) {
        try {
            fn(i);
        } catch (...) {
#pragma omp critical(arlab_parallel_for)
            if (i < failed) {
                failed = i;
                error = std::current_exception();
            }
        }
    }
    if (error) std::rethrow_exception(error);
}

/// r_j = log p_B(z_j) - log p_A(z_j) for z_j = simulate(A, n, child_seed(seed, j)), j < samples.
std::vector<double> log_ratio_samples(const SystemMatrix& a, const SystemMatrix& b, Index horizon,
                                      Index samples, const SeedSpec& seed, int workers);

/// MLE index for trial t, where trial t observes simulate(A*, n, child_seed(seed, t)).
std::vector<Index> trial_selections(const SystemMatrix& astar, std::span<const SystemMatrix> members,
                                    Index horizon, Index trials, const SeedSpec& seed, int workers);

/// Smallest index attaining the maximum of the finite log-likelihoods.
/// Throws NumericError when no member has a finite log-likelihood.
Index argmax_first(std::span<const double> log_likelihoods);

/// Sample mean and standard error (sd / sqrt(m)), accumulated in index order.
struct MeanSe {
    double mean = 0.0;
    double std_error = 0.0;
};
MeanSe mean_and_se(std::span<const double> values);

namespace reference {

std::vector<double> log_ratio_samples(const SystemMatrix& a, const SystemMatrix& b, Index horizon,
                                      Index samples, const SeedSpec& seed);

std::vector<Index> trial_selections(const SystemMatrix& astar, std::span<const SystemMatrix> members,
                                    Index horizon, Index trials, const SeedSpec& seed);

}  // namespace reference

}  // namespace arlab
