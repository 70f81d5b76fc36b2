#pragma once

#include <functional>

namespace rhk {

// Tanh-sinh quadrature on a finite interval.  Nodes cluster doubly
// exponentially at both endpoints, so integrable endpoint singularities
// (x^(a-1) type) converge at full speed without splitting.  Levels are
// doubled until two successive estimates agree to rel_tol; throws
// AccuracyError past max_level.
double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12, int max_level = 12);

// Fixed-order Gauss-Legendre on [a, b] (order 16), for smooth integrands.
double gauss16(const std::function<double(double)>& f, double a, double b);

}  // namespace rhk
