#include "qplab/initial_layer.hpp"

#include <cmath>
#include <stdexcept>

#include "qplab/quadrature.hpp"
#include "qplab/specfun.hpp"

namespace qplab::initial_layer {

void validate(const InitialLayerProblem& prob) {
  if (!(prob.nu_minus > prob.nu_plus))
    throw std::invalid_argument("InitialLayerProblem: requires nu_minus > nu_plus");
  if (!(prob.rho > 0.0 && prob.eps > 0.0))
    throw std::invalid_argument("InitialLayerProblem: rho and eps must be > 0");
  if (!(prob.mu_ratio() < 1.0))
    throw std::invalid_argument(
        "InitialLayerProblem: mu_ratio = rho/eps must be < 1 for asymptotic validity");
  if (!prob.nu) throw std::invalid_argument("InitialLayerProblem: nu is required");
}

InitialLayerProblem smoothed_step_problem(double nu_minus, double nu_plus, double rho,
                                          double eps, FluxModel flux) {
  InitialLayerProblem p;
  const double mid = 0.5 * (nu_minus + nu_plus);
  const double half = 0.5 * (nu_minus - nu_plus);
  p.nu = [mid, half](double s) { return mid - half * std::tanh(s); };
  p.nu_prime = [half](double s) {
    const double c = std::cosh(s);
    return -half / (c * c);
  };
  p.nu_minus = nu_minus;
  p.nu_plus = nu_plus;
  p.rho = rho;
  p.eps = eps;
  p.flux = flux;
  validate(p);
  return p;
}

GammaStep::GammaStep(double nu_minus, double nu_plus, const FluxModel& flux, double theta_max)
    : nu_minus_(nu_minus), nu_plus_(nu_plus), theta_max_(theta_max) {
  if (!(nu_minus > nu_plus)) throw std::invalid_argument("GammaStep: nu_minus > nu_plus required");
  if (!(theta_max > 0.0)) throw std::invalid_argument("GammaStep: theta_max must be > 0");
  if (flux.kind() == FluxModel::Kind::burgers) return;  // closed form, nothing to cache

  const double L = 40.0 + 4.0 * std::max(std::fabs(nu_minus), std::fabs(nu_plus)) * theta_max;
  const double d_eta = 0.05;
  const int nx = 2 * static_cast<int>(std::ceil(L / d_eta)) + 1;
  pde_oracle::GridSpec grid;
  grid.x_min = -L;
  grid.x_max = L;
  grid.nx = nx;
  grid.t0 = 0.0;
  grid.t_end = theta_max;
  grid.nt = std::max(2, static_cast<int>(std::ceil(theta_max / 0.05)) + 1);

  const double cell = 2.0 * L / (nx - 1);
  auto step = [=](double eta) {
    if (eta < -0.5 * cell) return nu_minus;
    if (eta > 0.5 * cell) return nu_plus;
    // mollified over one grid cell (linear ramp between the two levels)
    return 0.5 * (nu_minus + nu_plus) - (nu_minus - nu_plus) * eta / cell;
  };
  pde_oracle::SolveOptions opt;
  opt.substeps = 2;
  field_ = std::make_shared<const pde_oracle::SampledField>(
      pde_oracle::solve(flux, step, 1.0, grid, pde_oracle::Boundary::farfield_dirichlet, opt));
}

double GammaStep::operator()(double eta, double theta) const {
  if (!(theta > 0.0)) throw std::invalid_argument("GammaStep: theta must be > 0");
  if (field_) {
    if (theta > theta_max_)
      throw std::domain_error("GammaStep: theta beyond the cached oracle field");
    return field_->interp(eta, theta);  // throws if eta leaves the cached range
  }

  // Burgers closed form: a convex combination of the two step levels with
  // log-domain weights
  //   ln T_- = -a eta/2 + a^2 theta/4 + ln erfc_paper((eta - a theta)/(2 sqrt th))
  //   ln T_+ = -b eta/2 + b^2 theta/4 + ln erfc_paper(-(eta - b theta)/(2 sqrt th))
  // with a = nu_minus, b = nu_plus.
  const double a = nu_minus_, b = nu_plus_;
  const double rs = 0.5 / std::sqrt(theta);
  const double log_tm =
      -0.5 * a * eta + 0.25 * a * a * theta + specfun::log_erfc_paper((eta - a * theta) * rs);
  const double log_tp =
      -0.5 * b * eta + 0.25 * b * b * theta + specfun::log_erfc_paper(-(eta - b * theta) * rs);
  const double d = log_tp - log_tm;
  if (d <= 0.0) {
    const double w = std::exp(d);
    return (a + b * w) / (1.0 + w);
  }
  const double w = std::exp(-d);
  return (a * w + b) / (w + 1.0);
}

double composite_solution(double x, double t, const InitialLayerProblem& prob,
                          const GammaStep& gamma) {
  validate(prob);
  if (t < 0.0) throw std::invalid_argument("composite_solution: t must be >= 0");
  if (t == 0.0) return prob.nu(x / prob.rho);
  const double sigma = x / prob.rho;
  const double omega = prob.eps * t / (prob.rho * prob.rho);
  const double z = x / (2.0 * std::sqrt(prob.eps * t));
  return specfun::heat_convolution(sigma, omega, prob.nu) -
         specfun::r000(z, prob.nu_minus, prob.nu_plus) + gamma(x / prob.eps, t / prob.eps);
}

double renormalized_solution(double x, double t, const InitialLayerProblem& prob,
                             const GammaStep& gamma) {
  validate(prob);
  if (!(t > 0.0)) throw std::invalid_argument("renormalized_solution: t must be > 0");
  if (!prob.nu_prime) throw std::invalid_argument("renormalized_solution: nu_prime is required");
  const double jump = prob.nu_plus - prob.nu_minus;
  if (std::fabs(jump) < 1e-300)
    throw std::invalid_argument("renormalized_solution: nu_plus == nu_minus is degenerate");

  // Truncate where |nu'| drops below 1e-14 of its peak near the origin.
  double sup = 0.0;
  for (double s = -2.0; s <= 2.0; s += 0.125) sup = std::max(sup, std::fabs(prob.nu_prime(s)));
  if (sup == 0.0) throw std::invalid_argument("renormalized_solution: nu' vanishes near 0");
  const double cut = 1e-14 * sup;
  double bound = 2.0;
  while (bound < 1e6 && (std::fabs(prob.nu_prime(bound)) >= cut ||
                         std::fabs(prob.nu_prime(-bound)) >= cut ||
                         std::fabs(prob.nu_prime(0.5 * bound)) >= cut ||
                         std::fabs(prob.nu_prime(-0.5 * bound)) >= cut))
    bound *= 2.0;

  const double theta = t / prob.eps;
  auto f = [&](double s) { return gamma((x - prob.rho * s) / prob.eps, theta) * prob.nu_prime(s); };
  QuadResult r = integrate_adaptive(f, -bound, bound, 1e-10, 0.0, {}, 4000);
  return r.value / jump;
}

}  // namespace qplab::initial_layer
