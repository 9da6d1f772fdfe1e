#pragma once

#include <functional>

namespace fid {

/// Adaptive Simpson integral of f over [lo, hi] to the requested relative
/// tolerance. Either endpoint may be +/- infinity; infinite ranges are
/// compactified with the algebraic map x = s/sqrt(1-s^2) (s = tanh t), under
/// which integrands with exponential or Gaussian tails vanish smoothly at the
/// mapped endpoints.
/// Throws NoConvergence if the recursion depth limit is reached.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double tol = 1e-10);

}  // namespace fid
