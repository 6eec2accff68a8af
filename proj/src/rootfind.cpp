#include "qplab/rootfind.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <stdexcept>

namespace qplab {

namespace {

double eval_q(int m, double T, double X, double u) { return std::pow(u, m) - T * u + X; }
double eval_dq(int m, double T, double u) { return m * std::pow(u, m - 1) - T; }

// Bisection + Newton polish inside a bracket with q(lo)*q(hi) < 0.
double refine_root(int m, double T, double X, double lo, double hi, double qlo) {
  for (int it = 0; it < 200 && hi - lo > 1e-16 * (1.0 + std::fabs(lo) + std::fabs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double qm = eval_q(m, T, X, mid);
    if (qm == 0.0) return mid;
    if ((qm < 0.0) == (qlo < 0.0)) {
      lo = mid;
      qlo = qm;
    } else {
      hi = mid;
    }
  }
  double u = 0.5 * (lo + hi);
  for (int it = 0; it < 8; ++it) {
    const double q = eval_q(m, T, X, u);
    const double dq = eval_dq(m, T, u);
    if (dq == 0.0) break;
    const double step = q / dq;
    const double next = u - step;
    if (!(next > lo && next < hi)) break;
    u = next;
    if (std::fabs(step) <= 4.0 * DBL_EPSILON * (1.0 + std::fabs(u))) break;
  }
  return u;
}

}  // namespace

std::vector<double> trinomial_real_roots(int m, double T, double X) {
  if (m < 3 || m % 2 == 0)
    throw std::invalid_argument("trinomial_real_roots: m must be odd and >= 3");
  if (!std::isfinite(T) || !std::isfinite(X))
    throw std::invalid_argument("trinomial_real_roots: coefficients must be finite");

  // Dominated interval: outside it |U|^m exceeds |T*U| + |X|.
  const double bound = 1.0 + 2.0 * std::pow(std::fabs(T), 1.0 / (m - 1)) +
                       2.0 * std::pow(std::fabs(X), 1.0 / m);

  std::vector<double> knots{-bound};
  if (T > 0.0) {
    const double r = std::pow(T / m, 1.0 / (m - 1));  // critical points of q at +-r
    knots.push_back(-r);
    knots.push_back(r);
  }
  knots.push_back(bound);

  std::vector<double> roots;
  const double q_scale = std::pow(bound, m) + std::fabs(T) * bound + std::fabs(X) + 1.0;
  for (size_t i = 0; i + 1 < knots.size(); ++i) {
    const double lo = knots[i], hi = knots[i + 1];
    const double qlo = eval_q(m, T, X, lo), qhi = eval_q(m, T, X, hi);
    if (std::fabs(qlo) <= 1e-14 * q_scale) {
      roots.push_back(lo);
      continue;
    }
    if ((qlo < 0.0) != (qhi < 0.0)) roots.push_back(refine_root(m, T, X, lo, hi, qlo));
  }
  if (std::fabs(eval_q(m, T, X, knots.back())) <= 1e-14 * q_scale) roots.push_back(knots.back());

  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double x, double y) {
                            return std::fabs(x - y) <= 1e-9 * (1.0 + std::fabs(x));
                          }),
              roots.end());
  return roots;
}

}  // namespace qplab
