#pragma once

#include <vector>

namespace qplab {

/// All real roots, ascending, of the odd-degree trinomial
///     U^m - T*U + X = 0,   m = 2n+1 >= 3.
/// Sign-change bracketing on a dominated interval, bisection, then a
/// safeguarded Newton polish. A tangency (double root) is reported once.
/// There are at most three real roots: the derivative m*U^(m-1) - T has at
/// most two real zeros.
std::vector<double> trinomial_real_roots(int m, double T, double X);

}  // namespace qplab
