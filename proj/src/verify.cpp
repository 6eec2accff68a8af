#include "qplab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "qplab/colehopf.hpp"

namespace qplab::verify {

RegionSpec RegionSpec::omega1(double gamma1) {
  if (!(gamma1 > 0.0 && gamma1 < 2.0))
    throw std::invalid_argument("RegionSpec: gamma1 must lie in (0,2)");
  RegionSpec r;
  r.kind = RegionKind::omega1;
  r.gamma1 = gamma1;
  return r;
}

RegionSpec RegionSpec::omega2(double gamma2, double gamma1) {
  if (!(gamma1 > 0.0 && gamma1 < gamma2 && gamma2 < 2.0))
    throw std::invalid_argument("RegionSpec: requires 0 < gamma1 < gamma2 < 2");
  RegionSpec r;
  r.kind = RegionKind::omega2;
  r.gamma1 = gamma1;
  r.gamma2 = gamma2;
  return r;
}

RegionSpec RegionSpec::omega_eps(int n, double eps, double K) {
  return omega_eps_with_exponent(n, eps, K, colehopf::scaling_exponents(n).kappa);
}

RegionSpec RegionSpec::omega_eps_with_exponent(int n, double eps, double K, Rational exponent) {
  if (!(eps > 0.0 && K > 0.0))
    throw std::invalid_argument("RegionSpec: eps and K must be > 0");
  RegionSpec r;
  r.kind = RegionKind::omega_eps;
  r.n = n;
  r.eps = eps;
  r.K = K;
  r.domain_exponent = exponent;
  return r;
}

bool region_contains(const RegionSpec& region, double first, double second) {
  switch (region.kind) {
    case RegionKind::omega1: {
      const double xi = first, tau = second;
      return !(tau > 0.0 && std::fabs(xi) < std::pow(tau, region.gamma1 - 0.5));
    }
    case RegionKind::omega2: {
      const double xi = first, tau = second;
      return tau > 0.0 && std::fabs(xi) * std::sqrt(tau) < std::pow(tau, region.gamma2);
    }
    case RegionKind::omega_eps: {
      const double x = first, t = second;
      const double mu = colehopf::scaling_exponents(region.n).mu.value();
      return std::fabs(x * std::pow(region.eps, -region.domain_exponent.value())) +
                 std::fabs(t) <
             region.K * std::pow(region.eps, mu);
    }
  }
  return false;
}

namespace {

double halton(unsigned long i, unsigned base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * (i % base);
    i /= base;
  }
  return r;
}

struct PointEval {
  double num;
  double den;
};

}  // namespace

double residual_ratio(int n, const FluxModel& flux, double eps, const RegionSpec& region,
                      int samples, Exec exec) {
  if (region.kind != RegionKind::omega_eps)
    throw std::invalid_argument("residual_ratio: region must be omega_eps");
  if (samples < 8) throw std::invalid_argument("residual_ratio: need at least 8 samples");
  if (!(eps > 0.0)) throw std::invalid_argument("residual_ratio: eps must be > 0");

  const auto sc = colehopf::scaling_exponents(n);
  const double phi2 = flux.phi2_at_zero();
  // x = K eps^(mu+e) p1, t = K eps^mu p2 maps the unit diamond |p1|+|p2| < 1
  // onto {|x eps^-e| + |t| < K eps^mu}.
  const double x_scale =
      region.K * std::pow(eps, sc.mu.value() + region.domain_exponent.value());
  const double t_scale = region.K * std::pow(eps, sc.mu.value());

  // Halton points accepted into the open diamond (deterministic sequence).
  std::vector<std::pair<double, double>> pts;
  pts.reserve(samples);
  for (unsigned long i = 1; static_cast<int>(pts.size()) < samples; ++i) {
    const double p1 = 2.0 * halton(i, 2) - 1.0;
    const double p2 = 2.0 * halton(i, 3) - 1.0;
    if (std::fabs(p1) + std::fabs(p2) < 1.0) pts.emplace_back(p1, p2);
  }

  auto eval = [&](double p1, double p2) -> PointEval {
    colehopf::InnerPoint ip{x_scale * p1, t_scale * p2, eps};
    const auto d = colehopf::u_inner_all(ip, n, phi2);
    const double adv = flux.dphi(d.u) * d.u_x;
    const double diff = eps * d.u_xx;
    return {std::fabs(d.u_t + adv - diff),
            std::fabs(d.u_t) + std::fabs(adv) + std::fabs(diff)};
  };

  std::vector<PointEval> vals(pts.size());
  for_each_index(exec, static_cast<std::ptrdiff_t>(pts.size()),
                 [&](std::ptrdiff_t i) { vals[i] = eval(pts[i].first, pts[i].second); });

  size_t best_num = 0, best_den = 0;
  for (size_t i = 1; i < vals.size(); ++i) {
    if (vals[i].num > vals[best_num].num) best_num = i;
    if (vals[i].den > vals[best_den].den) best_den = i;
  }

  // Compass refinement around the best sample, per objective.
  auto refine = [&](size_t start, bool use_num) {
    double cx = pts[start].first, cy = pts[start].second;
    double best = use_num ? vals[start].num : vals[start].den;
    for (double step = 1.0 / 16.0; step > 1e-4; step *= 0.5) {
      bool moved = true;
      while (moved) {
        moved = false;
        const double cand[4][2] = {{cx + step, cy}, {cx - step, cy}, {cx, cy + step},
                                   {cx, cy - step}};
        for (auto& c : cand) {
          if (std::fabs(c[0]) + std::fabs(c[1]) >= 1.0 - 1e-12) continue;
          const PointEval pe = eval(c[0], c[1]);
          const double v = use_num ? pe.num : pe.den;
          if (v > best) {
            best = v;
            cx = c[0];
            cy = c[1];
            moved = true;
          }
        }
      }
    }
    return best;
  };

  const double sup_num = refine(best_num, true);
  const double sup_den = refine(best_den, false);
  if (sup_den < 1e-300)
    throw std::runtime_error("residual_ratio: degenerate region (denominator vanished)");
  return sup_num / sup_den;
}

OrderFit fit_order(const std::vector<std::pair<double, double>>& entries) {
  if (entries.size() < 3) throw std::invalid_argument("fit_order: need at least 3 entries");
  std::vector<double> lx, ly;
  for (auto& [e, v] : entries) {
    if (!(e > 0.0)) throw std::invalid_argument("fit_order: eps values must be > 0");
    if (!(v > 0.0)) throw std::invalid_argument("fit_order: values must be > 0");
    lx.push_back(std::log(e));
    ly.push_back(std::log(v));
  }
  for (size_t i = 0; i < lx.size(); ++i)
    for (size_t j = i + 1; j < lx.size(); ++j)
      if (lx[i] == lx[j]) throw std::invalid_argument("fit_order: eps values must be distinct");

  const double m = static_cast<double>(lx.size());
  double mx = 0, my = 0;
  for (size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  OrderFit fit;
  fit.slope = sxy / sxx;
  double ss_res = 0;
  for (size_t i = 0; i < lx.size(); ++i) {
    const double pred = my + fit.slope * (lx[i] - mx);
    ss_res += (ly[i] - pred) * (ly[i] - pred);
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

ResidualReport residual_order_report(int n, const FluxModel& flux,
                                     const std::vector<double>& eps_list,
                                     const RegionSpec& region, int samples, Exec exec) {
  ResidualReport rep;
  rep.n = n;
  rep.flux_id = flux.id();
  rep.predicted_order = colehopf::scaling_exponents(n).kappa;

  std::vector<double> eps_sorted = eps_list;
  std::sort(eps_sorted.rbegin(), eps_sorted.rend());  // decreasing eps
  for (double e : eps_sorted) {
    RegionSpec r = region;
    r.eps = e;
    r.n = n;
    rep.entries.push_back({e, residual_ratio(n, flux, e, r, samples, exec)});
  }

  rep.degenerate = std::all_of(rep.entries.begin(), rep.entries.end(),
                               [](const ResidualEntry& e) { return e.ratio <= 1e-9; });
  if (!rep.degenerate) {
    std::vector<std::pair<double, double>> pairs;
    for (auto& e : rep.entries) pairs.emplace_back(e.eps, e.ratio);
    const OrderFit fit = fit_order(pairs);
    rep.fitted_order = fit.slope;
    rep.r_squared = fit.r_squared;
  }
  return rep;
}

bool order_within_band(const ResidualReport& r, double half_width, double min_r2) {
  if (r.degenerate) return true;
  return std::fabs(r.fitted_order - r.predicted_order.value()) <= half_width &&
         r.r_squared >= min_r2;
}

std::string report_json(const ResidualReport& r) {
  nlohmann::json j;
  j["n"] = r.n;
  j["flux_id"] = r.flux_id;
  j["entries"] = nlohmann::json::array();
  for (auto& e : r.entries) j["entries"].push_back({{"eps", e.eps}, {"ratio", e.ratio}});
  j["fitted_order"] = r.fitted_order;
  j["predicted_order"] = r.predicted_order.value();
  j["predicted_order_exact"] = r.predicted_order.str();
  j["r_squared"] = r.r_squared;
  j["degenerate"] = r.degenerate;
  j["sup_domain"] = r.sup_domain;
  return j.dump(2) + "\n";
}

namespace {

double norm_reduce(const pde_oracle::SampledField& a, Norm norm,
                   const std::function<double(int, int)>& diff) {
  const int nx = a.nx(), nt = a.nt();
  if (norm == Norm::sup) {
    double m = 0.0;
    for (int j = 0; j < nt; ++j)
      for (int i = 0; i < nx; ++i) m = std::max(m, std::fabs(diff(j, i)));
    return m;
  }
  // trapezoid weights in x and t
  auto wx = [&](int i) {
    if (i == 0) return 0.5 * (a.xs[1] - a.xs[0]);
    if (i == nx - 1) return 0.5 * (a.xs[nx - 1] - a.xs[nx - 2]);
    return 0.5 * (a.xs[i + 1] - a.xs[i - 1]);
  };
  auto wt = [&](int j) {
    if (j == 0) return 0.5 * (a.ts[1] - a.ts[0]);
    if (j == nt - 1) return 0.5 * (a.ts[nt - 1] - a.ts[nt - 2]);
    return 0.5 * (a.ts[j + 1] - a.ts[j - 1]);
  };
  double acc = 0.0;
  for (int j = 0; j < nt; ++j)
    for (int i = 0; i < nx; ++i) {
      const double d = diff(j, i);
      acc += wt(j) * wx(i) * (norm == Norm::l1 ? std::fabs(d) : d * d);
    }
  return norm == Norm::l1 ? acc : std::sqrt(acc);
}

}  // namespace

double compare_fields(const pde_oracle::SampledField& a, const pde_oracle::SampledField& b,
                      Norm norm) {
  if (a.nx() != b.nx() || a.nt() != b.nt())
    throw std::invalid_argument("compare_fields: incompatible grid extents");
  const double tol = 1e-12;
  for (int i = 0; i < a.nx(); ++i)
    if (std::fabs(a.xs[i] - b.xs[i]) > tol * (1.0 + std::fabs(a.xs[i])))
      throw std::invalid_argument("compare_fields: grids differ in x");
  for (int j = 0; j < a.nt(); ++j)
    if (std::fabs(a.ts[j] - b.ts[j]) > tol * (1.0 + std::fabs(a.ts[j])))
      throw std::invalid_argument("compare_fields: grids differ in t");
  return norm_reduce(a, norm, [&](int j, int i) { return a.at(j, i) - b.at(j, i); });
}

double compare_fields(const pde_oracle::SampledField& a,
                      const std::function<double(double, double)>& b, Norm norm) {
  return norm_reduce(a, norm, [&](int j, int i) { return a.at(j, i) - b(a.xs[i], a.ts[j]); });
}

}  // namespace qplab::verify
