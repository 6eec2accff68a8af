#include "qplab/fold.hpp"

#include <cmath>
#include <stdexcept>

#include "qplab/rootfind.hpp"

namespace qplab::fold {

namespace {

void validate(const FoldQuery& q) {
  if (q.n < 1) throw std::invalid_argument("fold: n must be >= 1");
  if (!std::isfinite(q.xi) || !std::isfinite(q.tau))
    throw std::invalid_argument("fold: query must be finite");
}

}  // namespace

double phase_at(const FoldQuery& q, double U) {
  const double a = std::ldexp(1.0, 2 * q.n) / (q.n + 1);  // 2^(2n)/(n+1)
  const double s = 0.5 * U;
  return -a * std::pow(s, 2 * q.n + 2) + q.tau * s * s - q.xi * s;
}

FoldResult fold_root(const FoldQuery& q) {
  validate(q);
  FoldResult res;
  res.all_real_roots = trinomial_real_roots(2 * q.n + 1, q.tau, q.xi);

  double best = res.all_real_roots[0];
  double p_best = phase_at(q, best);
  for (size_t i = 1; i < res.all_real_roots.size(); ++i) {
    const double p = phase_at(q, res.all_real_roots[i]);
    if (p > p_best) {
      p_best = p;
      best = res.all_real_roots[i];
    }
  }
  // A second, distinct maximizer at the same phase level means the point sits
  // on the Maxwell set; keep the negative branch there.
  const double tie_tol = 1e-12 * (1.0 + std::fabs(p_best));
  for (double u : res.all_real_roots) {
    if (std::fabs(u - best) <= 1e-8 * (1.0 + std::fabs(best))) continue;
    if (std::fabs(phase_at(q, u) - p_best) <= tie_tol) {
      res.is_maxwell = true;
      if (u < best) best = u;
    }
  }
  res.root = best;
  return res;
}

double outer_leading(const FoldQuery& q, double phi2) {
  if (!(phi2 > 0.0)) throw std::invalid_argument("outer_leading: phi2 must be > 0");
  return fold_root(q).root / phi2;
}

}  // namespace qplab::fold
