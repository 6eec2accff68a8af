#pragma once

#include <functional>
#include <span>

namespace qplab {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  int segments = 0;
  bool converged = false;
};

/// Adaptive Gauss-Kronrod 7/15 quadrature with worst-segment bisection.
/// Optional interior breakpoints seed the initial segment list (critical
/// points of a peaked exponent, jump locations, ...). Termination when the
/// error sum drops below max(abs_tol, rel_tol*|estimate|) or a roundoff
/// floor proportional to the integral of |f|.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double rel_tol = 1e-12, double abs_tol = 0.0,
                              std::span<const double> breakpoints = {},
                              int max_segments = 2000);

/// Fixed composite 16-point Gauss-Legendre rule on `panels` uniform panels.
/// Deliberately shares no nodes or machinery with the adaptive scheme; used
/// as the independent cross-check.
double integrate_gauss_legendre(const std::function<double(double)>& f, double a, double b,
                                int panels);

}  // namespace qplab
