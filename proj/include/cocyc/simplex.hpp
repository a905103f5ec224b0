#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <vector>

namespace cocyc {

// Vertices are 1-based throughout: [n] = {1, ..., n}.

std::int64_t binomial(int n, int k);

/// Unordered pair {u, v} with u < v.
struct Edge {
  int u = 0;
  int v = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// 3-subset {a, b, c} with a < b < c.
struct Triangle {
  int a = 0;
  int b = 0;
  int c = 0;

  static Triangle sorted(int x, int y, int z);
  std::array<Edge, 3> edges() const { return {Edge{a, b}, Edge{a, c}, Edge{b, c}}; }
  bool contains(int v) const { return v == a || v == b || v == c; }

  friend auto operator<=>(const Triangle&, const Triangle&) = default;
};

/// Lexicographic rank of {u, v} among the C(n, 2) edges of K_n.
int edge_index(int n, int u, int v);
Edge edge_at(int n, int index);
int num_edges(int n);

/// Lexicographic rank of a triangle among all C(n, 3) triangles.
int triangle_index(int n, const Triangle& t);
std::vector<Triangle> all_triangles(int n);

/// Two-dimensional complex on [n] whose 1-skeleton is the complete graph.
/// Only the triangular faces are stored, sorted and without duplicates.
class TwoComplex {
public:
  TwoComplex() = default;
  TwoComplex(int n, std::vector<Triangle> triangles);

  static TwoComplex full(int n);
  static TwoComplex faceless(int n) { return TwoComplex(n, {}); }

  int n() const { return n_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  std::size_t size() const { return triangles_.size(); }
  bool contains(const Triangle& t) const;

  /// t_Y(tau): number of faces containing each edge, indexed by edge_index.
  std::vector<int> edge_degrees() const;

  friend bool operator==(const TwoComplex&, const TwoComplex&) = default;

private:
  int n_ = 0;
  std::vector<Triangle> triangles_;
};

}  // namespace cocyc
