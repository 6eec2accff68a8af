#pragma once

#include <vector>

#include "qplab/exec.hpp"
#include "qplab/rational.hpp"

namespace qplab::colehopf {

/// Inner-variable scaling of the A_{2n+1} problem, exact rationals:
///   sigma = (2n+1)/(2n+2),  mu = n/(n+1),  kappa = 1/(2n+2).
/// These satisfy -mu = kappa - sigma = 1 - 2*sigma and
/// sigma = kappa + mu = (2n+1)*kappa identically.
struct ScalingExponents {
  Rational sigma;
  Rational mu;
  Rational kappa;
  int n = 1;
};

ScalingExponents scaling_exponents(int n);

/// Leading inner profile of the fold problem,
///   w10(xi, tau) = (2/phi2) * M1/M0,
/// where M_k are the s^k moments of exp(-2 s^4 + tau s^2 - xi s). The scaled
/// moment ratio keeps this finite for tau in the hundreds.
double w10(double xi, double tau, double phi2);

/// w10 on the outer product grid of xis x taus, row-major by tau.
std::vector<double> w10_grid(const std::vector<double>& xis, const std::vector<double>& taus,
                             double phi2, Exec exec = Exec::parallel);

struct InnerPoint {
  double x = 0.0;
  double t = 0.0;
  double eps = 1.0;  // viscosity, > 0
};

/// u_in and its exact derivatives, all through moment ratios of
/// V(x,t,eps) = int exp(-2^(2n)/(n+1) s^(2n+2) + t/eps^mu s^2 - x/eps^sigma s) ds.
/// No numerical differencing anywhere: with W_k = M_k/M_0,
///   u    =  (2 eps^(1-sigma)/phi2) W1
///   u_x  = -(2 eps^(1-2sigma)/phi2) (W2 - W1^2)
///   u_t  =  (2 eps^(1-sigma-mu)/phi2) (W3 - W1 W2)
///   u_xx =  (2 eps^(1-3sigma)/phi2) (W3 - 3 W1 W2 + 2 W1^3)
struct InnerDerivs {
  double u, u_x, u_t, u_xx;
};

InnerDerivs u_inner_all(const InnerPoint& p, int n, double phi2);
double u_inner(const InnerPoint& p, int n, double phi2);
double u_inner_x(const InnerPoint& p, int n, double phi2);
double u_inner_t(const InnerPoint& p, int n, double phi2);
double u_inner_xx(const InnerPoint& p, int n, double phi2);

}  // namespace qplab::colehopf
