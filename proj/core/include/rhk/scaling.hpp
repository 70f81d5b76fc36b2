#pragma once

#include <cstdint>
#include <vector>

#include "rhk/grid_path.hpp"
#include "rhk/hawkes.hpp"
#include "rhk/kernels.hpp"

namespace rhk {

// The nearly unstable regime.  a_T and mu_T are defined by the exact
// expressions (not merely asymptotically), which makes v_T = lambda hold to
// machine precision and removes an uncontrolled o(1) from convergence tests:
//   delta = K Gamma(1-alpha) / alpha
//   a_T   = 1 - lambda delta T^-alpha
//   mu_T  = mu_star delta^-1 T^(alpha-1)
//   v_T   = delta^-1 T^alpha (1 - a_T)
//   gamma_T = (mu_T T (1 - a_T))^(-1/2)
struct ScalingRegime {
  double alpha = 0.0;
  double lambda = 0.0;
  double mu_star = 0.0;
  double tail_const = 0.0;  // K
  double horizon = 0.0;     // T
  // derived
  double delta = 0.0;
  double a_T = 0.0;
  double mu_T = 0.0;
  double v_T = 0.0;
  double gamma_T = 0.0;

  // normalization of X^T and Lambda^T: T^alpha mu_star / delta = mu_T * T
  double space_norm() const { return mu_T * horizon; }
};

// Builds the regime; DomainError when T is at or below the admissibility
// boundary (lambda delta)^(1/alpha) where a_T would be <= 0.
ScalingRegime make_regime(double alpha, double lambda, double mu_star, double K,
                          double T);

// Hawkes parameters realizing the regime with the given kernel.
HawkesParams hawkes_params(const ScalingRegime& reg, const KernelSpec& kernel,
                           std::uint64_t max_events = 100'000'000);

// Renewal function psi^T = sum_k (phi^T)^{*k} on a uniform n-cell grid of
// [0, T], solved by product integration with exact kernel cell masses.
struct PsiGrid {
  double step = 0.0;
  std::vector<double> values;  // psi at grid nodes, n+1 entries
  double mass = 0.0;           // int_0^T psi
};

PsiGrid psi_grid(const KernelSpec& kernel, double branching, double T,
                 std::size_t n);
PsiGrid psi_grid(const ScalingRegime& reg, const KernelSpec& kernel,
                 std::size_t n);

// E[N_t] = mu t + mu int_0^t psi(t-s) s ds, deterministic via the renewal grid.
double expected_count(const HawkesParams& p, double t, std::size_t psi_cells = 4096);
double expected_count(const ScalingRegime& reg, const KernelSpec& kernel,
                      double t, std::size_t psi_cells = 4096);

// Renormalized paths on the unit-interval grid t_i = i/n:
//   X^T_t = (1-a_T) N_{Tt} / (mu_T T),  Lambda^T analogous with the
//   compensator, Z^T = sqrt(mu_T T/(1-a_T)) (X^T - Lambda^T).
struct RescaledPaths {
  GridPath X;
  GridPath Lambda;
  GridPath Z;
};

// ConsistencyError if the record was not simulated under `reg`'s parameters.
RescaledPaths rescale_paths(const EventRecord& r, const ScalingRegime& reg,
                            std::size_t n);

// i.i.d. samples of J^T = (1/T) sum_{i=1}^{I} X_i with I geometric(1 - a_T)
// and X_i kernel delays; the law whose density is rho^T.
std::vector<double> sample_JT(const ScalingRegime& reg, const KernelSpec& kernel,
                              std::uint64_t seed, std::size_t n_samples);

}  // namespace rhk
