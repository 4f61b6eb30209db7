#pragma once

// Per-item bodies shared by the OpenMP kernels and the serial reference.

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "arlab/ar_model.hpp"
#include "arlab/error.hpp"
#include "arlab/kernels.hpp"

namespace arlab::detail {

inline double log_ratio_item(const SystemMatrix& a, const SystemMatrix& b, Index horizon, const SeedSpec& seed,
                             Index item) {
    const Trajectory z = simulate(a, horizon, child_seed(seed, static_cast<std::uint64_t>(item)));
    const double r = 0.5 * (whitened_norm_sq(z.states(), a.matrix()) - whitened_norm_sq(z.states(), b.matrix()));
    if (!std::isfinite(r)) throw OverflowError("non-finite log-likelihood ratio", static_cast<std::size_t>(item + 1));
    return r;
}

inline Index selection_item(const SystemMatrix& astar, std::span<const SystemMatrix> members, Index horizon,
                            const SeedSpec& seed, Index trial, std::vector<double>& scratch) {
    Trajectory z = [&] {
        try {
            return simulate(astar, horizon, child_seed(seed, static_cast<std::uint64_t>(trial)));
        } catch (const OverflowError& e) {
            throw OverflowError(std::string("trial ") + std::to_string(trial) + ": " + e.what(),
                                static_cast<std::size_t>(trial + 1));
        }
    }();
    scratch.resize(members.size());
    for (std::size_t j = 0; j < members.size(); ++j) scratch[j] = log_density(z, members[j]);
    return argmax_first(scratch);
}

}  // namespace arlab::detail
