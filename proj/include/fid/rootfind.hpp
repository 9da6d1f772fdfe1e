#pragma once

#include <functional>

namespace fid {

// A sign-changing interval for root-finding: lo < hi and the target function
// takes opposite signs at the endpoints.
struct Bracket {
  double lo;
  double hi;
};

/// Root of a strictly monotone f inside the bracket, to absolute tolerance
/// tol in the argument. Brent's method: bisection with inverse-quadratic and
/// secant acceleration.
/// Throws NoSignChange if f(lo) and f(hi) have the same sign, NoConvergence
/// (carrying the best iterate) if max_iter is exhausted.
double solve_monotone(const std::function<double(double)>& f, Bracket bracket,
                      double tol = 1e-10, int max_iter = 200);

}  // namespace fid
