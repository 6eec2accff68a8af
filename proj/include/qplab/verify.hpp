#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qplab/exec.hpp"
#include "qplab/flux.hpp"
#include "qplab/pde_oracle.hpp"
#include "qplab/rational.hpp"

namespace qplab::verify {

enum class RegionKind { omega1, omega2, omega_eps };

/// The three regions of the two theorems:
///   omega1     R^2 minus the strip {|xi| < tau^(gamma1 - 1/2), tau > 0}
///   omega2     {tau > 0, |xi| sqrt(tau) < tau^gamma2}
///   omega_eps  {|x eps^-e| + |t| < K eps^mu(n)}, e = domain_exponent
/// The x-scaling exponent of omega_eps defaults to kappa; dividing the
/// inequality by eps^mu then gives exactly the unit diamond |xi| + |tau| < K
/// in inner variables. It stays configurable.
struct RegionSpec {
  RegionKind kind = RegionKind::omega_eps;
  double gamma1 = 1.0;  // in (0,2)
  double gamma2 = 1.5;  // in (gamma1, 2)
  double K = 1.0;       // > 0
  double eps = 1e-3;
  int n = 1;
  Rational domain_exponent{1, 4};

  static RegionSpec omega1(double gamma1 = 1.0);
  static RegionSpec omega2(double gamma2 = 1.5, double gamma1 = 1.0);
  static RegionSpec omega_eps(int n, double eps, double K = 1.0);
  static RegionSpec omega_eps_with_exponent(int n, double eps, double K, Rational exponent);
};

/// Membership test. The point is (xi, tau) for omega1/omega2 and (x, t) for
/// omega_eps.
bool region_contains(const RegionSpec& region, double first, double second);

struct ResidualEntry {
  double eps;
  double ratio;
};

struct ResidualReport {
  int n = 1;
  std::string flux_id;
  std::vector<ResidualEntry> entries;  // sorted by decreasing eps
  double fitted_order = 0.0;
  Rational predicted_order{1, 4};
  double r_squared = 0.0;
  bool degenerate = false;  // every ratio at quadrature-noise level (< 1e-9)
  // Both sup estimates (numerator and denominator) are taken over the same
  // sampled Omega_eps.
  std::string sup_domain = "omega_eps_numerator_and_denominator";
};

/// sup |u_t + phi'(u) u_x - eps u_xx| over a low-discrepancy sample of
/// Omega_eps (plus compass refinement around the best point), divided by
/// sup (|u_t| + |phi'(u) u_x| + |eps u_xx|) over the same sample. All
/// derivatives analytic via moment ratios.
double residual_ratio(int n, const FluxModel& flux, double eps, const RegionSpec& region,
                      int samples, Exec exec = Exec::parallel);

struct OrderFit {
  double slope = 0.0;
  double r_squared = 0.0;
};

/// Least-squares slope of log(value) against log(eps). Requires >= 3 entries,
/// positive values, distinct eps.
OrderFit fit_order(const std::vector<std::pair<double, double>>& entries);

ResidualReport residual_order_report(int n, const FluxModel& flux,
                                     const std::vector<double>& eps_list,
                                     const RegionSpec& region, int samples,
                                     Exec exec = Exec::parallel);

/// Acceptance band: |fitted - predicted| <= half_width and r^2 >= min_r2.
/// A degenerate (near-exact) report passes by definition.
bool order_within_band(const ResidualReport& r, double half_width = 0.1, double min_r2 = 0.95);

/// JSON object {n, flux_id, entries:[{eps, ratio}], fitted_order,
/// predicted_order, r_squared, ...}.
std::string report_json(const ResidualReport& r);

enum class Norm { sup, l1, l2 };

double compare_fields(const pde_oracle::SampledField& a, const pde_oracle::SampledField& b,
                      Norm norm);
double compare_fields(const pde_oracle::SampledField& a,
                      const std::function<double(double, double)>& b, Norm norm);

}  // namespace qplab::verify
