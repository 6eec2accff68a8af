#include "qplab/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qplab/quadrature.hpp"
#include "qplab/rootfind.hpp"

namespace qplab::specfun {

double erfc_paper(double z) { return 0.5 * std::erfc(z); }

double log_erfc_paper(double z) {
  if (z <= 25.0) return std::log(erfc_paper(z));
  // Asymptotic tail: erfc_paper(z) = exp(-z^2)/(2 sqrt(pi) z) * sum_k
  // (-1)^k (2k-1)!!/(2z^2)^k. Eight terms keep the relative error below
  // 1e-15 for z > 25.
  const double inv2z2 = 1.0 / (2.0 * z * z);
  double term = 1.0, series = 1.0;
  for (int k = 1; k <= 8; ++k) {
    term *= -(2.0 * k - 1.0) * inv2z2;
    series += term;
  }
  return -z * z - std::log(2.0 * std::sqrt(M_PI) * z) + std::log(series);
}

double heat_convolution(double sigma, double omega, const std::function<double(double)>& nu) {
  if (!(omega > 0.0)) throw std::invalid_argument("heat_convolution: omega must be > 0");
  // Substitution s = sigma + 2 sqrt(omega) y maps the kernel to exp(-y^2)/sqrt(pi).
  const double width = 2.0 * std::sqrt(omega);
  auto f = [&](double y) { return nu(sigma + width * y) * std::exp(-y * y); };
  const double bp[] = {-sigma / width};  // s = 0, where step-like data jumps
  QuadResult r = integrate_adaptive(f, -10.0, 10.0, 1e-12, 0.0, bp, 4000);
  return r.value / std::sqrt(M_PI);
}

double r000(double z, double nu_minus, double nu_plus) {
  return nu_minus * erfc_paper(z) + nu_plus * erfc_paper(-z);
}

double ScaledValue::value() const { return mantissa * std::exp(log_scale); }

double ScaledValue::ratio(const ScaledValue& num, const ScaledValue& den) {
  return num.mantissa / den.mantissa * std::exp(num.log_scale - den.log_scale);
}

namespace {

struct Phase {
  int n;
  double a, b, c;
  double operator()(double s) const {
    return -a * std::pow(s, 2 * n + 2) + b * s * s - c * s;
  }
};

void validate(const PhaseIntegralSpec& spec) {
  if (!(spec.a > 0.0))
    throw std::invalid_argument("phase_integral: a must be > 0 (divergent otherwise)");
  if (spec.n < 1) throw std::invalid_argument("phase_integral: n must be >= 1");
  if (spec.moment < 0) throw std::invalid_argument("phase_integral: moment must be >= 0");
  if (!std::isfinite(spec.b) || !std::isfinite(spec.c))
    throw std::invalid_argument("phase_integral: b, c must be finite");
}

// Expand outward from `from` in direction `dir` until p - p_max < -drop, then
// bisect back to a snug cutoff.
double find_cutoff(const Phase& p, double p_max, double from, double dir, double drop) {
  double step = 0.5 * (1.0 + std::fabs(from));
  double inside = from, outside = from + dir * step;
  while (p(outside) - p_max >= -drop) {
    inside = outside;
    step *= 2.0;
    outside = from + dir * step;
  }
  for (int i = 0; i < 40; ++i) {
    const double mid = 0.5 * (inside + outside);
    if (p(mid) - p_max >= -drop)
      inside = mid;
    else
      outside = mid;
  }
  return outside;
}

struct PhaseDomain {
  Phase p;
  double p_max;
  double lo, hi;
  std::vector<double> crit;
};

// Locate the exponent maximum through the real roots of p' and truncate the
// range where the integrand falls 45 e-folds below its peak (~3e-20).
PhaseDomain phase_domain(const PhaseIntegralSpec& spec) {
  const Phase p{spec.n, spec.a, spec.b, spec.c};
  // p'(s) = 0 divided by -a(2n+2) is the odd trinomial s^(2n+1) - T s + X = 0.
  const double denom = spec.a * (2 * spec.n + 2);
  std::vector<double> crit =
      trinomial_real_roots(2 * spec.n + 1, 2.0 * spec.b / denom, spec.c / denom);
  double p_max = p(crit[0]);
  for (double s : crit) p_max = std::max(p_max, p(s));
  const double lo = find_cutoff(p, p_max, crit.front(), -1.0, 45.0);
  const double hi = find_cutoff(p, p_max, crit.back(), +1.0, 45.0);
  return {p, p_max, lo, hi, std::move(crit)};
}

ScaledValue integrate_moment(const PhaseDomain& d, int k, const QuadControl& ctl) {
  auto f = [&](double s) { return std::pow(s, k) * std::exp(d.p(s) - d.p_max); };
  QuadResult r = integrate_adaptive(f, d.lo, d.hi, ctl.rel_tol, 0.0, d.crit, ctl.max_segments);
  return {d.p_max, r.value};
}

}  // namespace

std::vector<ScaledValue> phase_moments(const PhaseIntegralSpec& base, int kmax,
                                       const QuadControl& ctl) {
  validate(base);
  if (kmax < 0) throw std::invalid_argument("phase_moments: kmax must be >= 0");
  const PhaseDomain d = phase_domain(base);
  std::vector<ScaledValue> out;
  out.reserve(kmax + 1);
  for (int k = 0; k <= kmax; ++k) out.push_back(integrate_moment(d, k, ctl));
  return out;
}

ScaledValue phase_integral(const PhaseIntegralSpec& spec, const QuadControl& ctl) {
  validate(spec);
  return integrate_moment(phase_domain(spec), spec.moment, ctl);
}

}  // namespace qplab::specfun
