#pragma once

#include "fid/random.hpp"

namespace fid {

/// Uniform draw in the open interval (0,1).
double sample_uniform(RandomSource& rng);

/// Standard normal draw (Box-Muller; two uniforms per draw, no cached state).
double sample_std_normal(RandomSource& rng);

/// Unit-scale gamma draw, any shape > 0. Marsaglia-Tsang squeeze for
/// shape >= 1, boosted by u^(1/shape) below 1.
double sample_gamma(double shape, RandomSource& rng);

/// Chi-square draw with df >= 1 degrees of freedom.
double sample_chi2(int df, RandomSource& rng);

}  // namespace fid
