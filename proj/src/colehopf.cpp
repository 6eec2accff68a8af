#include "qplab/colehopf.hpp"

#include <cmath>
#include <stdexcept>

#include "qplab/specfun.hpp"

namespace qplab::colehopf {

using specfun::PhaseIntegralSpec;
using specfun::ScaledValue;

ScalingExponents scaling_exponents(int n) {
  if (n < 1) throw std::invalid_argument("scaling_exponents: n must be >= 1");
  ScalingExponents e;
  e.n = n;
  e.sigma = Rational(2 * n + 1, 2 * n + 2);
  e.mu = Rational(n, n + 1);
  e.kappa = Rational(1, 2 * n + 2);
  return e;
}

double w10(double xi, double tau, double phi2) {
  if (!(phi2 > 0.0)) throw std::invalid_argument("w10: phi2 must be > 0");
  PhaseIntegralSpec spec{1, 2.0, tau, xi, 0};
  auto m = specfun::phase_moments(spec, 1);
  return 2.0 / phi2 * ScaledValue::ratio(m[1], m[0]);
}

std::vector<double> w10_grid(const std::vector<double>& xis, const std::vector<double>& taus,
                             double phi2, Exec exec) {
  std::vector<double> out(xis.size() * taus.size());
  const std::ptrdiff_t nx = static_cast<std::ptrdiff_t>(xis.size());
  for_each_index(exec, static_cast<std::ptrdiff_t>(out.size()), [&](std::ptrdiff_t idx) {
    out[idx] = w10(xis[idx % nx], taus[idx / nx], phi2);
  });
  return out;
}

namespace {

void validate_point(const InnerPoint& p, int n, double phi2) {
  if (!(p.eps > 0.0)) throw std::invalid_argument("u_inner: eps must be > 0");
  if (n < 1) throw std::invalid_argument("u_inner: n must be >= 1");
  if (!(phi2 > 0.0)) throw std::invalid_argument("u_inner: phi2 must be > 0");
}

}  // namespace

InnerDerivs u_inner_all(const InnerPoint& p, int n, double phi2) {
  validate_point(p, n, phi2);
  const ScalingExponents sc = scaling_exponents(n);
  const double sigma = sc.sigma.value();
  const double mu = sc.mu.value();

  PhaseIntegralSpec spec;
  spec.n = n;
  spec.a = std::ldexp(1.0, 2 * n) / (n + 1);
  spec.b = p.t * std::pow(p.eps, -mu);
  spec.c = p.x * std::pow(p.eps, -sigma);
  auto m = specfun::phase_moments(spec, 3);

  const double w1 = ScaledValue::ratio(m[1], m[0]);
  const double w2 = ScaledValue::ratio(m[2], m[0]);
  const double w3 = ScaledValue::ratio(m[3], m[0]);

  InnerDerivs d;
  d.u = 2.0 * std::pow(p.eps, 1.0 - sigma) / phi2 * w1;
  d.u_x = -2.0 * std::pow(p.eps, 1.0 - 2.0 * sigma) / phi2 * (w2 - w1 * w1);
  d.u_t = 2.0 * std::pow(p.eps, 1.0 - sigma - mu) / phi2 * (w3 - w1 * w2);
  d.u_xx = 2.0 * std::pow(p.eps, 1.0 - 3.0 * sigma) / phi2 * (w3 - 3.0 * w1 * w2 + 2.0 * w1 * w1 * w1);
  return d;
}

double u_inner(const InnerPoint& p, int n, double phi2) {
  validate_point(p, n, phi2);
  const ScalingExponents sc = scaling_exponents(n);
  PhaseIntegralSpec spec;
  spec.n = n;
  spec.a = std::ldexp(1.0, 2 * n) / (n + 1);
  spec.b = p.t * std::pow(p.eps, -sc.mu.value());
  spec.c = p.x * std::pow(p.eps, -sc.sigma.value());
  auto m = specfun::phase_moments(spec, 1);
  return 2.0 * std::pow(p.eps, 1.0 - sc.sigma.value()) / phi2 *
         ScaledValue::ratio(m[1], m[0]);
}

double u_inner_x(const InnerPoint& p, int n, double phi2) { return u_inner_all(p, n, phi2).u_x; }
double u_inner_t(const InnerPoint& p, int n, double phi2) { return u_inner_all(p, n, phi2).u_t; }
double u_inner_xx(const InnerPoint& p, int n, double phi2) { return u_inner_all(p, n, phi2).u_xx; }

}  // namespace qplab::colehopf
