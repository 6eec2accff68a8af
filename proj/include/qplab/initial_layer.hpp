#pragma once

#include <functional>
#include <memory>

#include "qplab/flux.hpp"
#include "qplab/pde_oracle.hpp"

namespace qplab::initial_layer {

/// Large-initial-gradient Cauchy data u(x,0) = nu(x/rho) with far-field
/// limits nu_minus (at -inf) and nu_plus (at +inf), nu_minus > nu_plus.
/// mu_ratio = rho/eps is the small parameter and must stay below 1.
struct InitialLayerProblem {
  std::function<double(double)> nu;
  std::function<double(double)> nu_prime;  // used by renormalized_solution
  double nu_minus = 1.0;
  double nu_plus = -1.0;
  double rho = 0.01;
  double eps = 0.1;
  FluxModel flux = FluxModel::burgers();

  double mu_ratio() const { return rho / eps; }
};

void validate(const InitialLayerProblem& prob);

/// nu(s) = mid - half*tanh(s) with the requested limits; nu_prime analytic.
InitialLayerProblem smoothed_step_problem(double nu_minus, double nu_plus, double rho,
                                          double eps, FluxModel flux = FluxModel::burgers());

/// Step-data solution Gamma(eta, theta) of
///     G_theta + phi(G)_eta - G_etaeta = 0,  G(eta,0) = nu_minus (eta<0),
///                                           nu_plus (eta>0).
/// For the Burgers flux this is the closed Cole-Hopf form (two erfc terms
/// combined in the log domain, safe for any eta, theta). For a general flux
/// it is backed by one cached pde_oracle solve on eta in [-L, L],
/// L = 40 + 4*max(|nu_minus|,|nu_plus|)*theta_max, with the step mollified
/// over one grid cell; queries interpolate bilinearly and reject points
/// outside the cached rectangle.
class GammaStep {
 public:
  GammaStep(double nu_minus, double nu_plus, const FluxModel& flux, double theta_max = 20.0);

  double operator()(double eta, double theta) const;  // theta > 0
  bool closed_form() const { return field_ == nullptr; }
  double theta_max() const { return theta_max_; }

 private:
  double nu_minus_, nu_plus_;
  double theta_max_;
  std::shared_ptr<const pde_oracle::SampledField> field_;  // null for Burgers
};

/// Three-term composite formula
///     h0(x/rho, eps t/rho^2) - R000(x/(2 sqrt(eps t))) + Gamma(x/eps, t/eps);
/// at t = 0 returns the initial data nu(x/rho) directly.
double composite_solution(double x, double t, const InitialLayerProblem& prob,
                          const GammaStep& gamma);

/// Renormalized convolution
///     (nu_plus - nu_minus)^{-1} * int Gamma((x - rho s)/eps, t/eps) nu'(s) ds,
/// truncated where |nu'| < 1e-14 sup|nu'|.
double renormalized_solution(double x, double t, const InitialLayerProblem& prob,
                             const GammaStep& gamma);

}  // namespace qplab::initial_layer
