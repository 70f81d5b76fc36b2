#pragma once

#include <cstdint>
#include <vector>

#include "rhk/grid_path.hpp"
#include "rhk/special_fn.hpp"

namespace rhk {

// Parameters of the limit equations on [0, 1]:
//   Y_t = F^{a,l}(t) + (mu* lambda)^(-1/2) int_0^t f^{a,l}(t-s) sqrt(Y_s) dB_s
//   X_t = int_0^t Y_s ds
// The stochastic simulation requires alpha > 1/2; zero_noise switches the
// diffusion off (Y == F) as a diagnostic mode.
struct LimitParams {
  double alpha = 0.0;
  double lambda = 0.0;
  double mu_star = 0.0;
  std::size_t n = 1024;  // grid cells on [0, 1]
  std::uint64_t seed = 0;
  std::uint64_t path_index = 0;  // substream within the seed
  bool zero_noise = false;

  double diffusion_coeff() const;
};

void validate(const LimitParams& p);

struct VolterraPath {
  GridPath Y;                // raw values; negatives are kept as computed
  std::vector<double> dB;    // Brownian increments used, n entries
};

// Left-point Euler scheme with exact kernel cell masses:
//   Y_i = F(t_i) + c * sum_{j<i} (w_{i-j}/h) sqrt(max(Y_j, 0)) dB_j.
// Truncation applies only inside the square root; raw values are stored.
// For power-of-two n the Brownian increments come from a seed-keyed dyadic
// midpoint tree, so refining n -> 2n aggregates exactly to the coarser
// increments (up to rounding).
VolterraPath simulate_Y(const LimitParams& p);

// Trapezoidal cumulative integral of Y; X(0) = 0.
GridPath integrate_Y_to_X(const GridPath& y);

// Closed-form drift of the integrated equation:
// int_0^t s f(t-s) ds = lambda t^(alpha+1) E_{alpha,alpha+2}(-lambda t^alpha).
double integrated_drift(const FracKernelParams& p, double t);

// Consistency residual of the integrated equation: rebuilds
// Z_i = sum_{j<i} sqrt(Y_j^+) dB_j, evaluates
// rhs(t) = int_0^t s f(t-s) ds + c int_0^t f(t-s) Z_s ds by singular-kernel
// convolution with exact masses, and returns sup_i |X_i - rhs_i|.
double integral_equation_residual(const LimitParams& p, const VolterraPath& ypath,
                     const GridPath& x);

// Brownian increments over n cells of [0,1] from the dyadic midpoint tree
// keyed by (seed, path_index); exposed for refinement tests.
std::vector<double> brownian_increments(std::uint64_t seed,
                                        std::uint64_t path_index, std::size_t n);

}  // namespace rhk
