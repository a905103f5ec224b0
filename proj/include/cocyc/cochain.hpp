#pragma once

#include "cocyc/group.hpp"
#include "cocyc/random.hpp"
#include "cocyc/simplex.hpp"
#include "cocyc/step_kernel.hpp"

#include <vector>

namespace cocyc {

/// f in C^1(K_n, G). Only the labels of pairs u < v are stored (as dense
/// group indices, in edge_index order); f(v, u) = -f(u, v) is derived on
/// access, so antisymmetry cannot be violated.
class Cochain {
public:
  Cochain(int n, GroupSpec group, std::vector<int> labels);

  /// f == g on every edge.
  static Cochain constant(int n, const GroupSpec& group, int g);

  int n() const { return n_; }
  const GroupSpec& group() const { return group_; }
  const std::vector<int>& labels() const { return labels_; }

  /// Group index of f(u, v) for u != v.
  int at(int u, int v) const;
  GroupElement value(int u, int v) const { return group_.element_at(at(u, v)); }

  friend bool operator==(const Cochain& a, const Cochain& b) {
    return a.n_ == b.n_ && a.group_ == b.group_ && a.labels_ == b.labels_;
  }

private:
  int n_;
  GroupSpec group_;
  std::vector<int> labels_;
};

Cochain sample_random_cochain(int n, const SymmetricDistribution& nu, Rng& rng);

/// f^pi(u, v) = f(pi(u), pi(v)); pi[u - 1] is the image of u.
Cochain permute(const Cochain& f, const std::vector<int>& pi);

/// P(u, w, g) = #{v not in {u, w} : f(u, v) + f(v, w) = g}.
struct TriangleStat {
  int n = 0;
  int order = 0;
  std::vector<int> counts;  // n x n x |G|, vertices shifted to 0-based

  int at(int u, int w, int g) const {
    return counts[(static_cast<std::size_t>(u - 1) * n + (w - 1)) * order + g];
  }
};

TriangleStat path_counts(const Cochain& f);

/// Y_f: triangles on which the cyclic sum f(u,v) + f(v,w) + f(w,u) vanishes.
/// t_Y is available through TwoComplex::edge_degrees.
TwoComplex coboundary_triangles(const Cochain& f);

/// W^G_f on n equal parts: block (u, v), u != v, is the indicator of
/// g == f(u, v); diagonal blocks are zero.
template <class T>
BasicStepKernel<T> embed_graphon(const Cochain& f) {
  const int n = f.n();
  const int q = f.group().order();
  std::vector<T> parts(n, T(1) / T(n));
  std::vector<T> values(static_cast<std::size_t>(n) * n * q, T(0));
  for (int u = 1; u <= n; ++u)
    for (int v = 1; v <= n; ++v)
      if (u != v) values[(static_cast<std::size_t>(u - 1) * n + (v - 1)) * q + f.at(u, v)] = T(1);
  return BasicStepKernel<T>(f.group(), std::move(parts), std::move(values));
}

}  // namespace cocyc
