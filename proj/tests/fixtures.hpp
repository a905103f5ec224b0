#pragma once

// Shared inputs for the test suites and the acceptance binary.

#include "cocyc/cochain.hpp"
#include "cocyc/random.hpp"
#include "cocyc/simplex.hpp"

#include <vector>

namespace fixture {

// Coboundary of a random potential, then f(1,2) += a and f(2,3) -= a.
// Triangle 123 stays in Y_f and every t_Y is positive, so the one-out
// containment probability lies strictly between 0 and 1 (about 1.4e-3 at n=6,
// the largest value a non-coboundary reaches there).
inline cocyc::Cochain path_perturbed_cochain(int n, const cocyc::GroupSpec& g, int a, cocyc::Rng& rng) {
  using namespace cocyc;
  std::vector<int> pot(n + 1);
  for (int v = 1; v <= n; ++v) pot[v] = static_cast<int>(rng.below(static_cast<std::uint64_t>(g.order())));
  std::vector<int> labels(num_edges(n));
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) labels[edge_index(n, u, v)] = g.sub_index(pot[v], pot[u]);
  labels[edge_index(n, 1, 2)] = g.add_index(labels[edge_index(n, 1, 2)], a);
  labels[edge_index(n, 2, 3)] = g.sub_index(labels[edge_index(n, 2, 3)], a);
  return Cochain(n, g, labels);
}

inline cocyc::TwoComplex rp2() {
  return cocyc::TwoComplex(
      6, {{1, 2, 4}, {1, 2, 6}, {1, 3, 5}, {1, 3, 6}, {1, 4, 5}, {2, 3, 4}, {2, 3, 5}, {2, 5, 6}, {3, 4, 6}, {4, 5, 6}});
}

// Z/2 cochain on K_n (n >= 6) whose restriction to the six-vertex RP^2 on
// {1..6} is a cocycle but not a coboundary; edges leaving {1..6} get 0, and a
// random coboundary is added on top. Y_f then contains RP^2 and misses other
// triangles, so P(T_n(2) in Y_f) lies strictly between 0 and 1.
inline cocyc::Cochain rp2_cocycle(int n, cocyc::Rng& rng) {
  using namespace cocyc;
  static const std::vector<int> base = [] {
    TwoComplex x = rp2();
    std::vector<int> lab(15, 0);
    for (int mask = 1; mask < (1 << 15); ++mask) {
      for (int e = 0; e < 15; ++e) lab[e] = (mask >> e) & 1;
      bool cocycle = true;
      for (const auto& t : x.triangles())
        cocycle = cocycle && (lab[edge_index(6, t.a, t.b)] + lab[edge_index(6, t.a, t.c)] + lab[edge_index(6, t.b, t.c)]) % 2 == 0;
      bool coboundary = true;  // coboundaries are the cut labellings
      for (int u = 2; u <= 6 && coboundary; ++u)
        for (int v = u + 1; v <= 6; ++v)
          coboundary = coboundary && lab[edge_index(6, u, v)] == (lab[edge_index(6, 1, u)] + lab[edge_index(6, 1, v)]) % 2;
      if (cocycle && !coboundary) return lab;
    }
    return lab;
  }();
  std::vector<int> pot(n + 1);
  for (int v = 1; v <= n; ++v) pot[v] = static_cast<int>(rng.below(2));
  std::vector<int> labels(num_edges(n));
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) {
      int own = v <= 6 ? base[edge_index(6, u, v)] : 0;
      labels[edge_index(n, u, v)] = (own + pot[u] + pot[v]) % 2;
    }
  return Cochain(n, GroupSpec({2}), labels);
}

}  // namespace fixture
