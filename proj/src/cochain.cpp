#include "cocyc/cochain.hpp"

#include <stdexcept>
#include <string>

namespace cocyc {

Cochain::Cochain(int n, GroupSpec group, std::vector<int> labels)
    : n_(n), group_(std::move(group)), labels_(std::move(labels)) {
  if (n < 2) throw std::invalid_argument("cochain needs n >= 2");
  if (static_cast<int>(labels_.size()) != num_edges(n))
    throw std::invalid_argument("cochain needs one label per edge of K_n (" + std::to_string(num_edges(n)) + ")");
  for (int g : labels_)
    if (g < 0 || g >= group_.order()) throw std::invalid_argument("cochain label outside the group");
}

Cochain Cochain::constant(int n, const GroupSpec& group, int g) {
  return Cochain(n, group, std::vector<int>(num_edges(n), g));
}

int Cochain::at(int u, int v) const {
  if (u == v) throw std::invalid_argument("cochain is defined on pairs of distinct vertices");
  int g = labels_[edge_index(n_, u, v)];
  return u < v ? g : group_.neg_index(g);
}

Cochain sample_random_cochain(int n, const SymmetricDistribution& nu, Rng& rng) {
  std::vector<int> labels(num_edges(n));
  for (auto& g : labels) g = nu.sample_index(rng);
  return Cochain(n, nu.group(), std::move(labels));
}

Cochain permute(const Cochain& f, const std::vector<int>& pi) {
  const int n = f.n();
  if (static_cast<int>(pi.size()) != n) throw std::invalid_argument("permutation has the wrong length");
  std::vector<char> seen(n + 1, 0);
  for (int x : pi) {
    if (x < 1 || x > n || seen[x]) throw std::invalid_argument("not a permutation of [n]");
    seen[x] = 1;
  }
  std::vector<int> labels(num_edges(n));
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) labels[edge_index(n, u, v)] = f.at(pi[u - 1], pi[v - 1]);
  return Cochain(n, f.group(), std::move(labels));
}

TriangleStat path_counts(const Cochain& f) {
  const int n = f.n();
  const GroupSpec& group = f.group();
  TriangleStat s{n, group.order(), std::vector<int>(static_cast<std::size_t>(n) * n * group.order(), 0)};
  for (int u = 1; u <= n; ++u)
    for (int w = 1; w <= n; ++w) {
      if (u == w) continue;
      for (int v = 1; v <= n; ++v) {
        if (v == u || v == w) continue;
        int g = group.add_index(f.at(u, v), f.at(v, w));
        ++s.counts[(static_cast<std::size_t>(u - 1) * n + (w - 1)) * s.order + g];
      }
    }
  return s;
}

TwoComplex coboundary_triangles(const Cochain& f) {
  const int n = f.n();
  const GroupSpec& group = f.group();
  std::vector<Triangle> y;
  for (const Triangle& t : all_triangles(n)) {
    int s = group.add_index(group.add_index(f.at(t.a, t.b), f.at(t.b, t.c)), f.at(t.c, t.a));
    if (s == GroupSpec::identity_index()) y.push_back(t);
  }
  return TwoComplex(n, std::move(y));
}

}  // namespace cocyc
