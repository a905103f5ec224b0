#pragma once

#include "cocyc/random.hpp"
#include "cocyc/step_kernel.hpp"

#include <vector>

namespace cocyc {

/// Largest number of parts for which the exact subset scan is allowed.
inline constexpr int kExactCutNormMaxParts = 24;

/// A rectangle S x T (unions of parts) attaining a cut value.
struct CutWitness {
  double value = 0.0;         // |integral over S x T|
  double signed_value = 0.0;  // integral over S x T
  std::vector<int> rows;      // S, as part indices
  std::vector<int> cols;      // T
  bool exact = false;         // true when value is the maximum, not just a lower bound
};

/// Exact cut norm of a step function.
///
/// Every row set S is visited in Gray-code order; for fixed S the optimal T
/// takes all columns whose weighted partial sum has the chosen sign, so the
/// scan is 2^k * k. Throws std::length_error when k > kExactCutNormMaxParts.
CutWitness cut_norm_exact(const StepMatrix& w);

/// Alternating row/column sign optimization from random starts. The value is
/// attained by the returned rectangle, so it is a certified lower bound.
CutWitness cut_norm_heuristic(const StepMatrix& w, Rng& rng, int restarts = 64);

/// Exact when k <= kExactCutNormMaxParts, heuristic lower bound otherwise.
CutWitness cut_norm_auto(const StepMatrix& w, Rng& rng, int restarts = 64);

/// Integral of w over S x T.
double box_integral(const StepMatrix& w, const std::vector<int>& rows, const std::vector<int>& cols);

}  // namespace cocyc
