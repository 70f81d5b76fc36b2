#pragma once

#include <cstddef>
#include <vector>

namespace rhk {

// Evaluation request for E_{alpha,beta}(z).
struct MLQuery {
  double alpha = 0.0;   // series parameter, in (0, 1]
  double beta = 0.0;    // second parameter, > 0
  double z = 0.0;       // evaluation point, typically <= 0
  double rel_tol = 1e-10;  // requested relative accuracy, in (0, 1e-3]
};

// Parameters of the heavy-tail limit kernel f^{alpha,lambda}.  alpha = 1 is
// admitted as the exponential edge (f = lambda e^(-lambda x)).
struct FracKernelParams {
  double alpha = 0.0;   // tail index, in (0, 1]
  double lambda = 0.0;  // rate constant, > 0
};

// Mittag-Leffler function E_{alpha,beta}(z) = sum_n z^n / Gamma(alpha n + beta).
//
// Strategy: power series for |z| up to a per-(alpha,beta) switch point, with
// terms generated and accumulated in extended (quad) precision to control the
// alternating-series cancellation on the negative axis; the algebraic
// asymptotic expansion E(-y) ~ sum_k (-1)^(k+1) y^(-k) / Gamma(beta-alpha k)
// beyond the switch point.  The switch point sits where the two truncation
// error bounds cross.  Beyond |z| = ML_Z_MAX only the leading asymptotic term
// survives in double precision.
//
// Throws DomainError for parameters out of range and AccuracyError when
// neither regime attains rel_tol.
double ml_eval(const MLQuery& q);

inline constexpr double ML_Z_MAX = 1e8;

// f^{alpha,lambda}(x) = lambda x^(alpha-1) E_{alpha,alpha}(-lambda x^alpha),
// the Mittag-Leffler probability density; singular at 0, positive on (0, inf).
double f_frac(const FracKernelParams& p, double x);

// F^{alpha,lambda}(t) = 1 - E_{alpha,1}(-lambda t^alpha), its CDF.
double F_frac(const FracKernelParams& p, double t);

// Riemann-Liouville derivative of order nu < alpha, in closed form:
// D^nu f(x) = lambda x^(alpha-1-nu) E_{alpha,alpha-nu}(-lambda x^alpha).
double frac_deriv_f(const FracKernelParams& p, double nu, double x);

// Riemann-Liouville integral of order nu_p > 0, in closed form:
// I^nu f(x) = lambda x^(alpha-1+nu_p) E_{alpha,alpha+nu_p}(-lambda x^alpha).
double frac_integ_f(const FracKernelParams& p, double nu_p, double x);

// int_0^x u f(u) du = x F(x) - I^2 f(x); exact first moments of the kernel.
double f_frac_first_moment(const FracKernelParams& p, double x);

// Exact per-cell masses of f^{alpha,lambda} on a uniform grid:
// w_k = F(k h) - F((k-1) h), k = 1..n.  Positive and telescoping.
std::vector<double> kernel_weights(const FracKernelParams& p, double grid_step,
                                   std::size_t n);

void validate(const MLQuery& q);
void validate(const FracKernelParams& p);

namespace detail {

// Individual regimes, exposed for the crossover-continuity checks.
// Each returns the value and writes an estimated relative error.
double ml_series(double alpha, double beta, double z, double* rel_err);
double ml_asymptotic(double alpha, double beta, double z, double* rel_err);

// Switch point on the negative axis for given (alpha, beta).
double ml_switch_point(double alpha, double beta);

}  // namespace detail

}  // namespace rhk
