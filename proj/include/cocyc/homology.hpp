#pragma once

#include "cocyc/group.hpp"
#include "cocyc/rational.hpp"
#include "cocyc/simplex.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace cocyc {

/// Dense integer matrix with small entries (boundary matrices and friends).
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::int64_t> data;  // row-major

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0) {}

  std::int64_t& at(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  std::int64_t at(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }
  IntMatrix transposed() const;
  static IntMatrix identity(int k);
};

/// d1: edge x vertex (row tau = uv has -1 at u, +1 at v).
/// d2: edge x triangle; for u < v < w the column is +uv, -uw, +vw.
struct BoundaryMatrices {
  IntMatrix d1;
  IntMatrix d2;
};

BoundaryMatrices boundary_matrices(const TwoComplex& x);
/// d2 restricted to the given triangles (columns in the given order).
IntMatrix boundary_d2(int n, const std::vector<Triangle>& triangles);

bool is_prime(std::int64_t p);

/// Rank over F_p; bit-packed rows when p == 2. Throws when p is not prime.
int rank_mod_p(const IntMatrix& m, int p);

/// C(n,2) - (n-1) - rank_p(d2).
int dim_H1_mod_p(const TwoComplex& x, int p);

/// Nonzero invariant factors d_1 | d_2 | ... | d_r of m (r = rank over Q).
std::vector<BigInt> smith_normal_form(const IntMatrix& m);

struct HomologyReport {
  int n = 0;
  std::size_t faces = 0;
  std::optional<int> p;
  int rank_q = 0;           // rank of d2 over Q
  int dim_H1_q = 0;
  std::optional<int> dim_Z1_p;  // cocycles of the cochain complex over F_p
  std::optional<int> dim_H1_p;
  std::vector<BigInt> elementary_divisors;  // divisors > 1 (the torsion part)
  BigInt torsion_order = 1;
  int mg = 0;
  bool torsion_bound_holds = true;
};

HomologyReport homology_report(const TwoComplex& x, std::optional<int> p = std::nullopt);

/// |Z^1(X, G)| = prod_i m_i^{E-r} prod_j gcd(m_i, d_j).
BigInt count_Z1(const TwoComplex& x, const GroupSpec& group);

/// Minimum number of generators of H_1(X, Z): dim H_1(Q) + #{d_j > 1}.
int mg_H1(const TwoComplex& x);

BigInt torsion_order(const TwoComplex& x);

/// |torsion H_1| <= 3^{n^2/4}, decided exactly as torsion^4 <= 3^{n^2}.
bool torsion_bound_check(const TwoComplex& x);

}  // namespace cocyc
