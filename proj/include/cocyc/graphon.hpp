#pragma once

#include "cocyc/cut_norm.hpp"
#include "cocyc/group.hpp"
#include "cocyc/random.hpp"
#include "cocyc/rational.hpp"
#include "cocyc/step_kernel.hpp"

#include <cstdint>
#include <limits>
#include <vector>

namespace cocyc {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Norms and distances

/// ||W^G||_cut = sum_g ||W^g||_cut, exact (k <= kExactCutNormMaxParts).
double cut_norm(const StepKernel& w);
double cut_norm(const StepMatrix& w);

/// Sum over g of heuristic lower bounds; for kernels with many parts.
double cut_norm_lower_bound(const StepKernel& w, Rng& rng, int restarts = 64);

struct CutDistanceBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool exhaustive = false;  // every part alignment was tried for the upper bound
};

/// Two-sided bounds on the cut distance.
///
/// upper: smallest ||V - W^sigma||_cut over measure-preserving permutations
/// sigma of W's parts that map onto parts of V of equal measure (all of them
/// when at most 8 parts, otherwise random starts plus pairwise-swap descent),
/// together with the identity alignment on the common refinement.
///
/// lower: alignment-invariant statistics, per group element the larger of
/// |int V^g - int W^g| and (W1 + |mass difference|) / 2 where W1 is the
/// Wasserstein-1 distance between the row-degree (or column-degree)
/// distributions of V^g and W^g.
CutDistanceBounds cut_distance_bounds(const StepKernel& v, const StepKernel& w, std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// Convolution

/// (V*W)^g[i][j] = sum_h sum_t mu_t V^h[i][t] W^{g-h}[t][j], on the common
/// refinement. The result is symmetric when V == W but not in general.
template <class T>
BasicStepKernel<T> convolve(const BasicStepKernel<T>& v_in, const BasicStepKernel<T>& w_in) {
  auto [v, w] = refine_common(v_in, w_in);
  const GroupSpec& group = v.group();
  const int k = v.num_parts();
  const int q = group.order();
  std::vector<T> out(static_cast<std::size_t>(k) * k * q, T(0));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int t = 0; t < k; ++t) {
        const T& mu = v.parts()[t];
        for (int h = 0; h < q; ++h) {
          const T& left = v.at(i, t, h);
          if (left == 0) continue;
          T scaled = mu * left;
          for (int r = 0; r < q; ++r) {
            // r = g - h
            const T& right = w.at(t, j, r);
            if (right == 0) continue;
            out[(static_cast<std::size_t>(i) * k + j) * q + group.add_index(h, r)] += scaled * right;
          }
        }
      }
  return BasicStepKernel<T>(typename BasicStepKernel<T>::Unchecked{}, group, v.parts(), std::move(out));
}

// ---------------------------------------------------------------------------
// Functionals

/// b(W) = <W, log o (W*W)> with 0 log 0 = 0. Returns -infinity when some
/// W^g > 0 on a cell where (W*W)^g == 0. Requires a graphon.
double b_functional(const StepKernel& w);

/// Exact form of b: a rational combination of logs of rationals.
ExactLogSum b_functional_exact(const ExactStepKernel& w);

/// I_nu(W): half the integrated relative entropy of the fibers against nu;
/// +infinity outside W^G_00 (row-sum tolerance 1e-9).
double rate_function(const StepKernel& w, const SymmetricDistribution& nu);

/// H(W) = log|G| - 2 I_uniform(W); -infinity outside W^G_00.
double entropy_h(const StepKernel& w);

/// Z_phi(W) = sum_g int phi^g W^g.
double linear_functional_z(const StepTestFunction& phi, const StepKernel& w);

/// phi_bar(x,y,g) = (phi(x,y,g) + phi(y,x,-g)) / 2.
StepTestFunction symmetrize(const StepTestFunction& phi);

/// Stepping of phi onto the n-grid F_n: value on cell (i,j) is the average of
/// phi over ((i-1)/n, i/n] x ((j-1)/n, j/n]. Returned as an n-part kernel.
StepTestFunction step_onto_grid(const StepTestFunction& phi, int n);

struct MgfValues {
  double finite = 0.0;  // (1/n^2) log E exp(n^2 Z_phi(R_n)) in closed form
  double limit = 0.0;   // 1/2 int log(sum_g nu(g) exp(2 phi))
};

/// Closed form of the normalized log moment generating function of the
/// random cochain graphon at size n, and its n -> infinity limit. phi is
/// symmetrized first (Z_phi == Z_phi_bar).
MgfValues mgf_finite_n(const StepTestFunction& phi, int n, const SymmetricDistribution& nu);
double mgf_limit(const StepTestFunction& phi, const SymmetricDistribution& nu);

/// Z_phi(W) - 1/2 int log(sum_g nu(g) exp(2 phi)).
double dual_rate(const StepTestFunction& phi, const StepKernel& w, const SymmetricDistribution& nu);

struct DualMaximum {
  StepTestFunction phi;
  double value;
};

/// Maximizer phi* = 1/2 log(W / nu) of the dual objective and its value.
/// Throws when W has a zero entry (phi* unbounded) or is not in W^G_00.
DualMaximum dual_maximize(const StepKernel& w, const SymmetricDistribution& nu);

/// W_t = t W + (1 - t) / |G|; requires W in W^G_00.
StepKernel interpolate_to_uniform(const StepKernel& w, double t);

}  // namespace cocyc
