#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rhk/special_fn.hpp"

namespace rhk {

// A function sampled at t_i = i*h on [0, 1].  values has n+1 entries.
//
// singularity = sigma in (0, 1) declares f(x) ~ C x^(-sigma) at the left
// endpoint; values[0] may then be infinite and operators integrate the
// leading term in closed form instead of trusting the node.
//
// Exact per-cell masses m0_j = int_cell f and first moments
// m1_j = int_cell (u - t_j) f(u) du may be attached when known analytically
// (the f^{alpha,lambda} family); convolution then uses them instead of the
// piecewise-linear model.
struct CellMoments {
  std::vector<double> m0;  // n entries, cell j = [t_j, t_{j+1}]
  std::vector<double> m1;
};

struct GridFn {
  double step = 0.0;
  std::vector<double> values;
  std::optional<double> singularity;
  std::optional<CellMoments> moments;

  std::size_t cells() const { return values.empty() ? 0 : values.size() - 1; }
};

// Sample a callable on the n-cell grid of [0, 1].
template <typename F>
GridFn grid_fn_from(F&& f, std::size_t n) {
  GridFn g;
  g.step = 1.0 / static_cast<double>(n);
  g.values.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    g.values[i] = f(g.step * static_cast<double>(i));
  return g;
}

// f^{alpha,lambda} on the grid, with declared singularity 1-alpha and exact
// cell moments from the closed-form antiderivatives.
GridFn grid_f_frac(const FracKernelParams& p, std::size_t n);

// I^nu f^{alpha,lambda} on the grid (closed form), with declared singularity
// max(1-alpha-nu, 0) and exact moments.
GridFn grid_frac_integ(const FracKernelParams& p, double nu, std::size_t n);

// Riemann-Liouville fractional integral I^nu, nu in (0, 1].  Product
// integration: the (x-t)^(nu-1) weight is integrated exactly against a
// piecewise-linear interpolant of f; a declared left-endpoint singularity is
// split off and integrated via the power-function closed form.
GridFn rl_integral(const GridFn& f, double nu);

// Riemann-Liouville fractional derivative D^nu, nu in (0, 1), computed as the
// grid derivative of I^(1-nu) f with one-sided stencils at the boundaries.
GridFn rl_derivative(const GridFn& f, double nu);

// Volterra convolution (f * g)(t) = int_0^t f(t-s) g(s) ds where f may carry
// a declared singularity and/or exact cell moments and g is continuous.
GridFn conv_singular(const GridFn& f, const GridFn& g);

}  // namespace rhk
