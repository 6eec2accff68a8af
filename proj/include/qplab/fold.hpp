#pragma once

#include <vector>

namespace qplab::fold {

struct FoldQuery {
  double xi = 0.0;   // inner space coordinate (xi or eta)
  double tau = 0.0;  // inner time coordinate (tau or theta)
  int n = 1;         // singularity index; n = 1 is the Whitney fold
};

struct FoldResult {
  double root = 0.0;                   // selected branch (H or U0)
  std::vector<double> all_real_roots;  // ascending, every real solution
  bool is_maxwell = false;             // two global phase maxima tie
};

/// Phase p(s) = -a s^(2n+2) + tau s^2 - xi s with a = 2^(2n)/(n+1),
/// evaluated at s = U/2. Under U = 2s the critical-point equation p'(s) = 0
/// is exactly the root equation U^(2n+1) - tau U + xi = 0, which is what
/// pins the coefficient a.
double phase_at(const FoldQuery& q, double U);

/// Real branch structure of U^(2n+1) - tau*U + xi = 0. `root` is 2 s* where
/// s* is the global maximizer of the phase; on the Maxwell set (xi = 0,
/// tau > 0) two maximizers tie, the negative root is returned by convention
/// and is_maxwell flags the genuine non-uniqueness.
FoldResult fold_root(const FoldQuery& q);

/// Leading outer profile scaled by the flux curvature: fold_root(q).root/phi2.
double outer_leading(const FoldQuery& q, double phi2);

}  // namespace qplab::fold
