#pragma once

// Random step objects used by the experiments and the test suites.

#include "cocyc/group.hpp"
#include "cocyc/random.hpp"
#include "cocyc/rational.hpp"
#include "cocyc/step_kernel.hpp"

#include <vector>

namespace cocyc {

/// k positive part measures that are multiples of 1/denominator (k <= denominator).
std::vector<double> random_grid_parts(int k, int denominator, Rng& rng);

/// k positive part measures from normalized uniforms.
std::vector<double> random_parts(int k, Rng& rng);

/// Random element of W^G_00: on every cell a probability vector over G, with
/// (j,i,-g) mirrored from (i,j,g). Each entry is zeroed with probability
/// zero_prob before renormalizing (at least one entry survives per cell);
/// zero_prob == 0 gives an element of W^G_00<.
StepKernel random_w00(const GroupSpec& group, std::vector<double> parts, Rng& rng, double zero_prob = 0.0);

/// Same construction in exact arithmetic with small denominators.
ExactStepKernel random_w00_exact(const GroupSpec& group, std::vector<Rational> parts, Rng& rng);

/// Symmetric test function with entries uniform in [-scale, scale].
StepTestFunction random_test_function(const GroupSpec& group, std::vector<double> parts, Rng& rng, double scale = 1.0);

/// Symmetric random distribution on G with all probabilities positive.
SymmetricDistribution random_symmetric_distribution(const GroupSpec& group, Rng& rng);

/// Random real step matrix on the given parts, entries uniform in [lo, hi].
StepMatrix random_step_matrix(std::vector<double> parts, Rng& rng, double lo = -1.0, double hi = 1.0);

}  // namespace cocyc
