#pragma once

// Divergences between the trajectory laws P_A and P_B of length-n AR(1)
// processes. Exact forms use det Sigma = 1; Monte-Carlo forms sample z ~ P_A
// through the banded whitening path.

#include "arlab/ar_model.hpp"
#include "arlab/rng.hpp"

namespace arlab {

struct DivergenceEstimate {
    double value = 0.0;
    double std_error = 0.0;  // 0 for exact values
    Index sample_count = 0;  // 0 for exact values
};

/// tr(Sigma_{A*} Sigma_A^{-1} - I) = tr((A* - A)^T (A* - A) G_{n-1}(A*)) for
/// an n-step trajectory (G_0 = 0).
double trace_functional(const SystemMatrix& astar, const SystemMatrix& a, Index horizon);

/// Same quantity from dense matrices: Sigma_{A*} from dense_covariance and
/// the precision Sigma_A^{-1} = L_A^{-T} L_A^{-1} from the explicit banded
/// inverse factor. nd <= kDenseCap.
double trace_functional_dense(const SystemMatrix& astar, const SystemMatrix& a, Index horizon);

/// KL(P_A || P_B) = trace_functional(A, B, n) / 2, exact.
DivergenceEstimate kl(const SystemMatrix& a, const SystemMatrix& b, Index horizon);

/// Sampling estimate of KL(P_A || P_B) as the mean of log p_A - log p_B under P_A.
DivergenceEstimate kl_mc(const SystemMatrix& a, const SystemMatrix& b, Index horizon, Index samples,
                         const SeedSpec& seed, int workers = 0);

/// 1 - det((Sigma_A + Sigma_B)/2)^{-1/2}, log-determinant via Cholesky.
/// nd <= kDenseCap. Throws NumericError if the average is not numerically PD.
DivergenceEstimate hellinger_sq_exact(const SystemMatrix& a, const SystemMatrix& b, Index horizon);

/// 1 - mean_j exp((log p_B(z_j) - log p_A(z_j)) / 2), z_j ~ P_A.
DivergenceEstimate hellinger_sq_mc(const SystemMatrix& a, const SystemMatrix& b, Index horizon, Index samples,
                                   const SeedSpec& seed, int workers = 0);

/// mean_j max(0, 1 - exp(log p_B(z_j) - log p_A(z_j))), z_j ~ P_A.
DivergenceEstimate tv_mc(const SystemMatrix& a, const SystemMatrix& b, Index horizon, Index samples,
                         const SeedSpec& seed, int workers = 0);

/// Donsker-Varadhan objective E_{P_A}[F] - log E_{P_B}[exp F] at
/// F = (log p_A - log p_B) / 2. Never exceeds KL(P_A || P_B). The two
/// expectations use independent sub-streams of `seed`; the standard error
/// combines both by the delta method.
DivergenceEstimate donsker_varadhan_mc(const SystemMatrix& a, const SystemMatrix& b, Index horizon,
                                       Index samples, const SeedSpec& seed, int workers = 0);

}  // namespace arlab
