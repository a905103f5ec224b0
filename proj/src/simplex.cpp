#include "cocyc/simplex.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cocyc {

std::int64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Triangle Triangle::sorted(int x, int y, int z) {
  std::array<int, 3> v{x, y, z};
  std::sort(v.begin(), v.end());
  if (v[0] == v[1] || v[1] == v[2]) throw std::invalid_argument("triangle vertices must be distinct");
  return Triangle{v[0], v[1], v[2]};
}

int num_edges(int n) { return static_cast<int>(binomial(n, 2)); }

int edge_index(int n, int u, int v) {
  if (u > v) std::swap(u, v);
  if (u < 1 || v > n || u == v) throw std::out_of_range("invalid edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
  // edges (1,*) come first: (u-1) full rows of decreasing length precede row u
  int before = (u - 1) * n - (u - 1) * u / 2;
  return before + (v - u - 1);
}

Edge edge_at(int n, int index) {
  for (int u = 1; u < n; ++u) {
    int row = n - u;
    if (index < row) return Edge{u, u + 1 + index};
    index -= row;
  }
  throw std::out_of_range("edge index out of range");
}

int triangle_index(int n, const Triangle& t) {
  if (!(1 <= t.a && t.a < t.b && t.b < t.c && t.c <= n)) throw std::out_of_range("invalid triangle");
  // count triangles lexicographically smaller than (a, b, c)
  std::int64_t idx = 0;
  for (int a = 1; a < t.a; ++a) idx += binomial(n - a, 2);
  for (int b = t.a + 1; b < t.b; ++b) idx += n - b;
  idx += t.c - t.b - 1;
  return static_cast<int>(idx);
}

std::vector<Triangle> all_triangles(int n) {
  std::vector<Triangle> out;
  out.reserve(static_cast<std::size_t>(binomial(n, 3)));
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      for (int c = b + 1; c <= n; ++c) out.push_back(Triangle{a, b, c});
  return out;
}

TwoComplex::TwoComplex(int n, std::vector<Triangle> triangles) : n_(n), triangles_(std::move(triangles)) {
  if (n < 1) throw std::invalid_argument("complex needs at least one vertex");
  for (const auto& t : triangles_) {
    if (!(1 <= t.a && t.a < t.b && t.b < t.c && t.c <= n))
      throw std::invalid_argument("triangle [" + std::to_string(t.a) + "," + std::to_string(t.b) + "," +
                                  std::to_string(t.c) + "] is not a sorted 3-subset of [n]");
  }
  std::sort(triangles_.begin(), triangles_.end());
  triangles_.erase(std::unique(triangles_.begin(), triangles_.end()), triangles_.end());
}

TwoComplex TwoComplex::full(int n) { return TwoComplex(n, all_triangles(n)); }

bool TwoComplex::contains(const Triangle& t) const {
  return std::binary_search(triangles_.begin(), triangles_.end(), t);
}

std::vector<int> TwoComplex::edge_degrees() const {
  std::vector<int> deg(num_edges(n_), 0);
  for (const auto& t : triangles_) {
    for (const auto& e : t.edges()) ++deg[edge_index(n_, e.u, e.v)];
  }
  return deg;
}

}  // namespace cocyc
