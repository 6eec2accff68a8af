#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qplab/exec.hpp"
#include "qplab/flux.hpp"

namespace qplab::pde_oracle {

struct GridSpec {
  double x_min = -1.0, x_max = 1.0;
  int nx = 101;  // >= 16
  double t0 = 0.0, t_end = 1.0;
  int nt = 11;  // stored time slices including t0; >= 2
};

/// A solution (or formula) sampled on a rectangular grid. xs may be graded;
/// ts is uniform. values is nt x nx, row-major by time slice.
struct SampledField {
  std::vector<double> xs;
  std::vector<double> ts;
  std::vector<double> values;

  int nx() const { return static_cast<int>(xs.size()); }
  int nt() const { return static_cast<int>(ts.size()); }
  double at(int it, int ix) const { return values[static_cast<size_t>(it) * xs.size() + ix]; }
  double& at(int it, int ix) { return values[static_cast<size_t>(it) * xs.size() + ix]; }
  /// Bilinear interpolation; throws outside the grid rectangle.
  double interp(double x, double t) const;
};

enum class Boundary { farfield_dirichlet };

struct SolveOptions {
  double newton_tol = 1e-12;  // per-step residual tolerance (sup norm)
  int max_newton = 60;
  int substeps = 1;            // internal time steps between stored slices
  int rannacher_substeps = 4;  // leading backward-Euler steps damping step-data ringing
  Exec exec = Exec::parallel;
  double cfl_warn_threshold = 10.0;
};

struct SolveStats {
  long newton_iters_total = 0;
  long picard_steps = 0;  // undamped fallback steps taken
  double max_advective_cfl = 0.0;
  bool cfl_warning = false;
  bool boundary_contaminated = false;  // sentinel band near the ends moved
};

/// Conservative finite-volume solve of u_t + phi(u)_x = eps u_xx with
/// far-field Dirichlet data taken from q at the domain ends.
///
/// Space: MUSCL (minmod) reconstruction with a local Lax-Friedrichs flux,
/// three-point diffusion; second order on resolved profiles, monotone under
/// the usual CFL-quality conditions. Time: trapezoidal rule, damped Newton
/// with the first-order analytic Jacobian, undamped (Picard) fallback when a
/// line search stalls. The grid must resolve the viscous layer (dx <= eps/4
/// wherever the solution varies).
SampledField solve(const FluxModel& flux, const std::function<double(double)>& q, double eps,
                   const GridSpec& grid, Boundary bc = Boundary::farfield_dirichlet,
                   const SolveOptions& opt = {}, SolveStats* stats = nullptr);

/// Same solver on an explicit (possibly graded) node list.
SampledField solve_on_mesh(const FluxModel& flux, const std::function<double(double)>& q,
                           double eps, std::vector<double> xs, double t0, double t_end, int nt,
                           Boundary bc = Boundary::farfield_dirichlet,
                           const SolveOptions& opt = {}, SolveStats* stats = nullptr);

/// Mesh with uniform fine_dx spacing inside |x| <= fine_halfwidth and
/// geometric coarsening outward (adjacent-cell ratio <= ratio, capped at
/// coarse_dx).
std::vector<double> graded_mesh(double x_min, double x_max, double fine_halfwidth,
                                double fine_dx, double coarse_dx, double ratio = 1.1);

/// Per-slice trapezoidal integral of u minus the far-field split profile
/// (first-slice boundary values on each side of x = 0, or of the midpoint
/// when 0 lies outside the grid). Throws if the sentinel bands next to the
/// boundaries moved during the run, i.e. the run is boundary-contaminated.
std::vector<double> conserved_mass(const SampledField& f);

/// (max - min) of conserved_mass across slices, relative to the deviation
/// magnitude scale.
double mass_drift(const SampledField& f);

/// True when the outer three cells on each side stay at their initial values
/// to within tol * (data range) on every slice.
bool boundary_quiet(const SampledField& f, double tol = 1e-8);

/// CSV with header row x,t,u.
void write_csv(const SampledField& f, const std::string& path);
/// Self-describing binary dump: magic "QPF1", int64 nt, nx, then ts, xs,
/// values as little-endian doubles.
void write_binary(const SampledField& f, const std::string& path);
SampledField read_binary(const std::string& path);

}  // namespace qplab::pde_oracle
