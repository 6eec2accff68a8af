#pragma once

#include <functional>
#include <vector>

namespace qplab::specfun {

/// erfc with the normalization used throughout this project:
///     erfc_paper(z) = (1/sqrt(pi)) * int_z^inf exp(-y^2) dy.
/// This is HALF of the conventional std::erfc. Every occurrence of "erfc" in
/// the asymptotic formulas below means this halved version; mixing the two
/// conventions is the single most likely way to corrupt the results, so the
/// factor lives in exactly one place.
double erfc_paper(double z);

/// log(erfc_paper(z)), finite for all finite z. Uses the asymptotic tail
/// expansion once the function itself would underflow.
double log_erfc_paper(double z);

/// Gaussian average h0(sigma, omega) = (1/(2 sqrt(pi omega))) *
/// int nu(s) exp(-(sigma-s)^2/(4 omega)) ds, omega > 0. The kernel is
/// truncated at ten standard widths (|s - sigma| <= 20 sqrt(omega)); the
/// discarded tail mass is below 1e-21 of sup|nu|.
double heat_convolution(double sigma, double omega, const std::function<double(double)>& nu);

/// Step-data heat solution R_{0,0,0}(z) = nu_minus*erfc_paper(z) +
/// nu_plus*erfc_paper(-z).
double r000(double z, double nu_minus, double nu_plus);

/// Parameters of int s^moment exp(-a s^(2n+2) + b s^2 - c s) ds.
struct PhaseIntegralSpec {
  int n = 1;       // singularity index (A_{2n+1}); n >= 1
  double a = 2.0;  // coefficient of s^(2n+2); must be > 0 for convergence
  double b = 0.0;  // coefficient of +s^2
  double c = 0.0;  // coefficient of -s
  int moment = 0;  // integrand factor s^moment; >= 0
};

/// value = mantissa * exp(log_scale). The scale carries the exponent maximum
/// so Cole-Hopf quotients of these integrals never touch exp overflow even
/// when b is in the hundreds.
struct ScaledValue {
  double log_scale = 0.0;
  double mantissa = 0.0;

  double value() const;
  /// num/den as a plain double; the scales cancel in the log domain.
  static double ratio(const ScaledValue& num, const ScaledValue& den);
};

struct QuadControl {
  double rel_tol = 1e-12;
  int max_segments = 2000;
};

/// int s^k exp(p(s)) ds with p(s) = -a s^(2n+2) + b s^2 - c s, returned with
/// log_scale = max_s p(s). The exponent maximum is located through the real
/// roots of p', the range is truncated where p - max p < -45, and segments
/// between critical points seed the adaptive rule.
ScaledValue phase_integral(const PhaseIntegralSpec& spec, const QuadControl& ctl = {});

/// Moments 0..kmax of the same phase, sharing one domain/scale computation.
/// All returned values carry the same log_scale.
std::vector<ScaledValue> phase_moments(const PhaseIntegralSpec& base, int kmax,
                                       const QuadControl& ctl = {});

}  // namespace qplab::specfun
