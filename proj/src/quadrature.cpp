#include "qplab/quadrature.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

namespace qplab {

namespace {

// 7-point Gauss / 15-point Kronrod pair, QUADPACK qk15 constants.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b;
  double value;
  double error;
  double resabs;  // integral of |f|
};

// One 15-point Kronrod evaluation with the QUADPACK error estimate.
Segment gk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double hlgth = 0.5 * (b - a);

  double fv1[7], fv2[7];
  const double fc = f(center);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::fabs(resk);
  for (int j = 0; j < 7; ++j) {
    const double absc = hlgth * kXgk[j];
    fv1[j] = f(center - absc);
    fv2[j] = f(center + absc);
    const double fsum = fv1[j] + fv2[j];
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
    resk += kWgk[j] * fsum;
    resabs += kWgk[j] * (std::fabs(fv1[j]) + std::fabs(fv2[j]));
  }
  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::fabs(fc - reskh);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));

  Segment s;
  s.a = a;
  s.b = b;
  s.value = resk * hlgth;
  s.resabs = resabs * std::fabs(hlgth);
  resasc *= std::fabs(hlgth);
  double abserr = std::fabs((resk - resg) * hlgth);
  if (resasc != 0.0 && abserr != 0.0)
    abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
  const double uflow = DBL_MIN / (50.0 * DBL_EPSILON);
  if (s.resabs > uflow) abserr = std::max(DBL_EPSILON * 50.0 * s.resabs, abserr);
  s.error = abserr;
  return s;
}

struct WorstFirst {
  bool operator()(const Segment& x, const Segment& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;  // deterministic tie-break
  }
};

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double rel_tol, double abs_tol,
                              std::span<const double> breakpoints, int max_segments) {
  if (!(a < b)) throw std::invalid_argument("integrate_adaptive: requires a < b");

  std::vector<double> knots;
  knots.push_back(a);
  for (double x : breakpoints)
    if (x > a && x < b) knots.push_back(x);
  knots.push_back(b);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  std::priority_queue<Segment, std::vector<Segment>, WorstFirst> queue;
  std::vector<Segment> frozen;  // too narrow to split further
  double total = 0.0, errsum = 0.0, resabs = 0.0;
  int nseg = 0;
  for (size_t i = 0; i + 1 < knots.size(); ++i) {
    Segment s = gk15(f, knots[i], knots[i + 1]);
    total += s.value;
    errsum += s.error;
    resabs += s.resabs;
    queue.push(s);
    ++nseg;
  }

  auto tolerance = [&]() {
    return std::max({abs_tol, rel_tol * std::fabs(total), 100.0 * DBL_EPSILON * resabs});
  };

  while (errsum > tolerance() && nseg < max_segments && !queue.empty()) {
    Segment worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      frozen.push_back(worst);  // interval at roundoff resolution
      continue;
    }
    Segment left = gk15(f, worst.a, mid);
    Segment right = gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    errsum += left.error + right.error - worst.error;
    resabs += left.resabs + right.resabs - worst.resabs;
    queue.push(left);
    queue.push(right);
    ++nseg;
  }

  // Exact resummation removes the drift of the incremental updates.
  double value = 0.0, error = 0.0;
  for (const Segment& s : frozen) {
    value += s.value;
    error += s.error;
  }
  while (!queue.empty()) {
    value += queue.top().value;
    error += queue.top().error;
    queue.pop();
  }

  QuadResult r;
  r.value = value;
  r.error = error;
  r.segments = nseg;
  r.converged = error <= std::max({abs_tol, rel_tol * std::fabs(value),
                                   100.0 * DBL_EPSILON * resabs});
  return r;
}

double integrate_gauss_legendre(const std::function<double(double)>& f, double a, double b,
                                int panels) {
  if (!(a < b) || panels < 1)
    throw std::invalid_argument("integrate_gauss_legendre: bad interval or panel count");
  // 16-point Gauss-Legendre nodes/weights on [-1,1] (positive half).
  static constexpr double x[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                                  0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                                  0.9445750230732326, 0.9894009349916499};
  static constexpr double w[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                                  0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                                  0.0622535239386479, 0.0271524594117541};
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double c = a + (p + 0.5) * h;
    const double m = 0.5 * h;
    double acc = 0.0;
    for (int j = 0; j < 8; ++j) acc += w[j] * (f(c - m * x[j]) + f(c + m * x[j]));
    sum += acc * m;
  }
  return sum;
}

}  // namespace qplab
