#include "qplab/pde_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace qplab::pde_oracle {

double SampledField::interp(double x, double t) const {
  if (xs.size() < 2 || ts.size() < 2) throw std::domain_error("SampledField: degenerate grid");
  const double tol_x = 1e-12 * (std::fabs(xs.front()) + std::fabs(xs.back()) + 1.0);
  const double tol_t = 1e-12 * (std::fabs(ts.front()) + std::fabs(ts.back()) + 1.0);
  if (x < xs.front() - tol_x || x > xs.back() + tol_x || t < ts.front() - tol_t ||
      t > ts.back() + tol_t)
    throw std::domain_error("SampledField::interp: point outside the sampled rectangle");
  x = std::clamp(x, xs.front(), xs.back());
  t = std::clamp(t, ts.front(), ts.back());

  const auto ix_hi = std::upper_bound(xs.begin(), xs.end(), x);
  size_t i1 = std::min<size_t>(std::max<std::ptrdiff_t>(ix_hi - xs.begin(), 1), xs.size() - 1);
  const size_t i0 = i1 - 1;
  const double wx = (x - xs[i0]) / (xs[i1] - xs[i0]);

  const double dt = ts[1] - ts[0];
  size_t j1 = std::min<size_t>(
      std::max<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(std::ceil((t - ts[0]) / dt)), 1),
      ts.size() - 1);
  const size_t j0 = j1 - 1;
  const double wt = (t - ts[j0]) / (ts[j1] - ts[j0]);

  return (1 - wt) * ((1 - wx) * at(j0, i0) + wx * at(j0, i1)) +
         wt * ((1 - wx) * at(j1, i0) + wx * at(j1, i1));
}

namespace {

double minmod(double a, double b) {
  if (a > 0.0 && b > 0.0) return std::min(a, b);
  if (a < 0.0 && b < 0.0) return std::max(a, b);
  return 0.0;
}

// Semi-discrete spatial operator L(u): conservative MUSCL/LLF flux divergence
// minus the three-point diffusion, per unit cell width.
struct SpatialOp {
  const FluxModel* flux;
  double eps;
  std::vector<double> xs;       // cell centers
  std::vector<double> h;        // cell widths (face-to-face)
  std::vector<double> dx;       // xs[i+1]-xs[i], per face
  Exec exec = Exec::serial;

  explicit SpatialOp(const FluxModel& f, double eps_, std::vector<double> nodes, Exec ex)
      : flux(&f), eps(eps_), xs(std::move(nodes)), exec(ex) {
    const size_t n = xs.size();
    dx.resize(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) dx[i] = xs[i + 1] - xs[i];
    h.resize(n);
    h[0] = dx[0];
    h[n - 1] = dx[n - 2];
    for (size_t i = 1; i + 1 < n; ++i) h[i] = 0.5 * (xs[i + 1] - xs[i - 1]);
  }

  // Numerical flux and diffusion gradient per face into F, D.
  void faces(const std::vector<double>& u, std::vector<double>& F, std::vector<double>& D) const {
    const std::ptrdiff_t nf = static_cast<std::ptrdiff_t>(xs.size()) - 1;
    for_each_index(exec, nf, [&](std::ptrdiff_t i) {
      const size_t n = xs.size();
      // minmod slopes of the two adjacent cells (zero in boundary cells)
      auto slope = [&](size_t j) -> double {
        if (j == 0 || j + 1 >= n) return 0.0;
        return minmod((u[j] - u[j - 1]) / dx[j - 1], (u[j + 1] - u[j]) / dx[j]);
      };
      const double xf = 0.5 * (xs[i] + xs[i + 1]);
      const double uL = u[i] + slope(i) * (xf - xs[i]);
      const double uR = u[i + 1] + slope(i + 1) * (xf - xs[i + 1]);
      const double alpha = std::max(std::fabs(flux->dphi(u[i])), std::fabs(flux->dphi(u[i + 1])));
      F[i] = 0.5 * (flux->phi(uL) + flux->phi(uR)) - 0.5 * alpha * (uR - uL);
      D[i] = (u[i + 1] - u[i]) / dx[i];
    });
  }

  void apply(const std::vector<double>& u, std::vector<double>& Lu, std::vector<double>& F,
             std::vector<double>& D) const {
    faces(u, F, D);
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(xs.size());
    for_each_index(exec, n, [&](std::ptrdiff_t i) {
      if (i == 0 || i == n - 1) {
        Lu[i] = 0.0;
        return;
      }
      Lu[i] = (F[i] - F[i - 1]) / h[i] - eps * (D[i] - D[i - 1]) / h[i];
    });
  }
};

// Tridiagonal Thomas solve, in place on rhs.
void thomas(std::vector<double>& lo, std::vector<double>& di, std::vector<double>& up,
            std::vector<double>& rhs) {
  const size_t n = di.size();
  for (size_t i = 1; i < n; ++i) {
    const double w = lo[i] / di[i - 1];
    di[i] -= w * up[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  rhs[n - 1] /= di[n - 1];
  for (size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - up[i] * rhs[i + 1]) / di[i];
}

double sup_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

}  // namespace

std::vector<double> graded_mesh(double x_min, double x_max, double fine_halfwidth,
                                double fine_dx, double coarse_dx, double ratio) {
  if (!(x_min < 0.0 && x_max > 0.0))
    throw std::invalid_argument("graded_mesh: refinement region must contain x = 0");
  if (!(fine_dx > 0.0 && coarse_dx >= fine_dx && ratio > 1.0 && ratio <= 1.1))
    throw std::invalid_argument("graded_mesh: bad spacing parameters");

  // Build from 0 outward, mirroring handled per side.
  auto one_side = [&](double extent) {
    std::vector<double> pts;
    double x = 0.0, dx = fine_dx;
    while (x < extent) {
      if (x >= fine_halfwidth) dx = std::min(dx * ratio, coarse_dx);
      x += dx;
      pts.push_back(std::min(x, extent));
    }
    if (pts.size() >= 2 && pts.back() - pts[pts.size() - 2] < 0.5 * fine_dx)
      pts.erase(pts.end() - 2);  // drop a sliver cell at the end
    return pts;
  };

  std::vector<double> right = one_side(x_max);
  std::vector<double> left = one_side(-x_min);
  std::vector<double> mesh;
  mesh.reserve(left.size() + right.size() + 1);
  for (size_t i = left.size(); i-- > 0;) mesh.push_back(-left[i]);
  mesh.push_back(0.0);
  for (double x : right) mesh.push_back(x);
  return mesh;
}

SampledField solve_on_mesh(const FluxModel& flux, const std::function<double(double)>& q,
                           double eps, std::vector<double> xs, double t0, double t_end, int nt,
                           Boundary bc, const SolveOptions& opt, SolveStats* stats) {
  if (!(eps > 0.0)) throw std::invalid_argument("pde_oracle::solve: eps must be > 0");
  if (static_cast<int>(xs.size()) < 16)
    throw std::invalid_argument("pde_oracle::solve: nx must be >= 16");
  if (nt < 2) throw std::invalid_argument("pde_oracle::solve: nt must be >= 2");
  if (!(t0 < t_end)) throw std::invalid_argument("pde_oracle::solve: t0 < t_end required");
  if (!std::is_sorted(xs.begin(), xs.end()))
    throw std::invalid_argument("pde_oracle::solve: mesh must be ascending");
  if (bc != Boundary::farfield_dirichlet)
    throw std::invalid_argument("pde_oracle::solve: unknown boundary mode");
  if (opt.substeps < 1) throw std::invalid_argument("pde_oracle::solve: substeps must be >= 1");

  const size_t n = xs.size();
  SolveStats local_stats;
  SolveStats& st = stats ? *stats : local_stats;
  st = SolveStats{};

  SampledField out;
  out.ts.resize(nt);
  for (int j = 0; j < nt; ++j) out.ts[j] = t0 + (t_end - t0) * j / (nt - 1);
  out.values.resize(static_cast<size_t>(nt) * n);

  SpatialOp op(flux, eps, std::move(xs), opt.exec);

  std::vector<double> u(n);
  for (size_t i = 0; i < n; ++i) u[i] = q(op.xs[i]);
  const double gL = u.front(), gR = u.back();
  for (size_t i = 0; i < n; ++i) out.values[i] = u[i];

  double min_dx = op.dx[0];
  for (double d : op.dx) min_dx = std::min(min_dx, d);

  const double dt = (t_end - t0) / ((nt - 1) * static_cast<long>(opt.substeps));
  std::vector<double> Lu_old(n), Lv(n), F(n - 1), D(n - 1), R(n), delta(n);
  std::vector<double> jlo(n), jdi(n), jup(n);
  std::vector<double> v(n), v_trial(n);

  long step_index = 0;
  for (int slice = 1; slice < nt; ++slice) {
    for (int sub = 0; sub < opt.substeps; ++sub, ++step_index) {
      // Backward Euler for the first few steps (theta = 1) damps the
      // high-frequency ringing the trapezoidal rule leaves on step-like data.
      const double theta = step_index < opt.rannacher_substeps ? 1.0 : 0.5;

      double amax = 0.0;
      for (size_t i = 0; i < n; ++i) amax = std::max(amax, std::fabs(flux.dphi(u[i])));
      st.max_advective_cfl = std::max(st.max_advective_cfl, amax * dt / min_dx);

      op.apply(u, Lu_old, F, D);
      v = u;

      auto residual = [&](const std::vector<double>& w, std::vector<double>& res) {
        op.apply(w, Lv, F, D);
        res[0] = w[0] - gL;
        res[n - 1] = w[n - 1] - gR;
        for (size_t i = 1; i + 1 < n; ++i)
          res[i] = w[i] - u[i] + dt * (theta * Lv[i] + (1.0 - theta) * Lu_old[i]);
      };

      residual(v, R);
      double rnorm = sup_norm(R);
      const double tol = opt.newton_tol * (1.0 + sup_norm(u));
      int it = 0;
      for (; it < opt.max_newton && rnorm > tol; ++it) {
        // First-order analytic Jacobian (LLF flux without reconstruction,
        // alpha frozen at the current iterate) — enough for the line search;
        // the residual itself is the full high-order scheme.
        for (size_t i = 0; i < n; ++i) {
          if (i == 0 || i == n - 1) {
            jlo[i] = 0.0;
            jdi[i] = 1.0;
            jup[i] = 0.0;
            continue;
          }
          const double am = std::max(std::fabs(flux.dphi(v[i - 1])), std::fabs(flux.dphi(v[i])));
          const double ap = std::max(std::fabs(flux.dphi(v[i])), std::fabs(flux.dphi(v[i + 1])));
          const double c = dt * theta / op.h[i];
          jlo[i] = c * (-0.5 * flux.dphi(v[i - 1]) - 0.5 * am - eps / op.dx[i - 1]);
          jdi[i] = 1.0 + c * (0.5 * (ap + am) + eps / op.dx[i - 1] + eps / op.dx[i]);
          jup[i] = c * (0.5 * flux.dphi(v[i + 1]) - 0.5 * ap - eps / op.dx[i]);
        }
        delta = R;
        thomas(jlo, jdi, jup, delta);

        double lambda = 1.0;
        bool accepted = false;
        for (int ls = 0; ls < 7; ++ls, lambda *= 0.5) {
          for (size_t i = 0; i < n; ++i) v_trial[i] = v[i] - lambda * delta[i];
          residual(v_trial, R);
          const double rtrial = sup_norm(R);
          if (rtrial < (1.0 - 1e-4 * lambda) * rnorm) {
            v.swap(v_trial);
            rnorm = rtrial;
            accepted = true;
            break;
          }
        }
        if (!accepted) {
          // Picard fallback: take the full undamped step and keep iterating.
          for (size_t i = 0; i < n; ++i) v[i] -= delta[i];
          residual(v, R);
          rnorm = sup_norm(R);
          ++st.picard_steps;
        }
      }
      st.newton_iters_total += it;
      if (rnorm > tol) {
        char msg[160];
        std::snprintf(msg, sizeof msg,
                      "pde_oracle::solve: nonlinear step %ld failed to converge "
                      "(residual %.3e, tol %.3e)",
                      step_index, rnorm, tol);
        throw std::runtime_error(msg);
      }
      u.swap(v);
    }
    for (size_t i = 0; i < n; ++i) out.values[static_cast<size_t>(slice) * n + i] = u[i];
  }

  st.cfl_warning = st.max_advective_cfl > opt.cfl_warn_threshold;
  out.xs = op.xs;
  st.boundary_contaminated = !boundary_quiet(out);
  return out;
}

SampledField solve(const FluxModel& flux, const std::function<double(double)>& q, double eps,
                   const GridSpec& grid, Boundary bc, const SolveOptions& opt,
                   SolveStats* stats) {
  if (grid.nx < 16) throw std::invalid_argument("pde_oracle::solve: nx must be >= 16");
  if (!(grid.x_min < grid.x_max))
    throw std::invalid_argument("pde_oracle::solve: x_min < x_max required");
  std::vector<double> xs(grid.nx);
  for (int i = 0; i < grid.nx; ++i)
    xs[i] = grid.x_min + (grid.x_max - grid.x_min) * i / (grid.nx - 1);
  return solve_on_mesh(flux, q, eps, std::move(xs), grid.t0, grid.t_end, grid.nt, bc, opt,
                       stats);
}

bool boundary_quiet(const SampledField& f, double tol) {
  const int nx = f.nx(), nt = f.nt();
  double lo = f.values[0], hi = f.values[0];
  for (int i = 0; i < nx; ++i) {
    lo = std::min(lo, f.at(0, i));
    hi = std::max(hi, f.at(0, i));
  }
  const double band = tol * std::max(hi - lo, 1e-300);
  for (int j = 1; j < nt; ++j)
    for (int i : {0, 1, 2, nx - 3, nx - 2, nx - 1})
      if (std::fabs(f.at(j, i) - f.at(0, i)) > band) return false;
  return true;
}

std::vector<double> conserved_mass(const SampledField& f) {
  if (!boundary_quiet(f))
    throw std::runtime_error("conserved_mass: boundary-contaminated run (sentinel band moved)");
  const int nx = f.nx(), nt = f.nt();
  const double split = (f.xs.front() < 0.0 && f.xs.back() > 0.0)
                           ? 0.0
                           : 0.5 * (f.xs.front() + f.xs.back());
  const double uL = f.at(0, 0), uR = f.at(0, nx - 1);
  std::vector<double> mass(nt, 0.0);
  for (int j = 0; j < nt; ++j) {
    double m = 0.0;
    for (int i = 0; i + 1 < nx; ++i) {
      const double da = f.at(j, i) - (f.xs[i] < split ? uL : uR);
      const double db = f.at(j, i + 1) - (f.xs[i + 1] < split ? uL : uR);
      m += 0.5 * (da + db) * (f.xs[i + 1] - f.xs[i]);
    }
    mass[j] = m;
  }
  return mass;
}

double mass_drift(const SampledField& f) {
  std::vector<double> mass = conserved_mass(f);
  const int nx = f.nx();
  const double split = (f.xs.front() < 0.0 && f.xs.back() > 0.0)
                           ? 0.0
                           : 0.5 * (f.xs.front() + f.xs.back());
  const double uL = f.at(0, 0), uR = f.at(0, nx - 1);
  double scale = 0.0;
  for (int j = 0; j < f.nt(); ++j) {
    double m = 0.0;
    for (int i = 0; i + 1 < nx; ++i) {
      const double da = std::fabs(f.at(j, i) - (f.xs[i] < split ? uL : uR));
      const double db = std::fabs(f.at(j, i + 1) - (f.xs[i + 1] < split ? uL : uR));
      m += 0.5 * (da + db) * (f.xs[i + 1] - f.xs[i]);
    }
    scale = std::max(scale, m);
  }
  const auto [lo, hi] = std::minmax_element(mass.begin(), mass.end());
  return (*hi - *lo) / std::max(scale, 1e-300);
}

void write_csv(const SampledField& f, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_csv: cannot open " + path);
  os << "x,t,u\n";
  char buf[96];
  for (int j = 0; j < f.nt(); ++j)
    for (int i = 0; i < f.nx(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", f.xs[i], f.ts[j], f.at(j, i));
      os << buf;
    }
}

void write_binary(const SampledField& f, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("write_binary: cannot open " + path);
  const char magic[4] = {'Q', 'P', 'F', '1'};
  os.write(magic, 4);
  const std::int64_t nt = f.nt(), nx = f.nx();
  os.write(reinterpret_cast<const char*>(&nt), 8);
  os.write(reinterpret_cast<const char*>(&nx), 8);
  os.write(reinterpret_cast<const char*>(f.ts.data()), 8 * nt);
  os.write(reinterpret_cast<const char*>(f.xs.data()), 8 * nx);
  os.write(reinterpret_cast<const char*>(f.values.data()), 8 * nt * nx);
}

SampledField read_binary(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("read_binary: cannot open " + path);
  char magic[4];
  is.read(magic, 4);
  if (std::memcmp(magic, "QPF1", 4) != 0)
    throw std::runtime_error("read_binary: bad magic in " + path);
  std::int64_t nt = 0, nx = 0;
  is.read(reinterpret_cast<char*>(&nt), 8);
  is.read(reinterpret_cast<char*>(&nx), 8);
  if (nt < 2 || nx < 2 || nt > (1 << 24) || nx > (1 << 24))
    throw std::runtime_error("read_binary: implausible dimensions in " + path);
  SampledField f;
  f.ts.resize(nt);
  f.xs.resize(nx);
  f.values.resize(static_cast<size_t>(nt) * nx);
  is.read(reinterpret_cast<char*>(f.ts.data()), 8 * nt);
  is.read(reinterpret_cast<char*>(f.xs.data()), 8 * nx);
  is.read(reinterpret_cast<char*>(f.values.data()), 8 * nt * nx);
  if (!is) throw std::runtime_error("read_binary: truncated file " + path);
  return f;
}

}  // namespace qplab::pde_oracle
