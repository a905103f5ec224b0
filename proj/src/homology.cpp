#include "cocyc/homology.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace cocyc {

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

IntMatrix IntMatrix::identity(int k) {
  IntMatrix m(k, k);
  for (int i = 0; i < k; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix boundary_d2(int n, const std::vector<Triangle>& triangles) {
  IntMatrix d(num_edges(n), static_cast<int>(triangles.size()));
  for (std::size_t c = 0; c < triangles.size(); ++c) {
    const Triangle& t = triangles[c];
    d.at(edge_index(n, t.a, t.b), static_cast<int>(c)) = 1;
    d.at(edge_index(n, t.a, t.c), static_cast<int>(c)) = -1;
    d.at(edge_index(n, t.b, t.c), static_cast<int>(c)) = 1;
  }
  return d;
}

BoundaryMatrices boundary_matrices(const TwoComplex& x) {
  const int n = x.n();
  BoundaryMatrices b;
  b.d1 = IntMatrix(num_edges(n), n);
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) {
      int e = edge_index(n, u, v);
      b.d1.at(e, u - 1) = -1;
      b.d1.at(e, v - 1) = 1;
    }
  b.d2 = boundary_d2(n, x.triangles());
  return b;
}

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

namespace {

int rank_mod_2(const IntMatrix& m) {
  const int words = (m.cols + 63) / 64;
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(m.rows) * words, 0);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (m.at(i, j) & 1) rows[static_cast<std::size_t>(i) * words + j / 64] |= std::uint64_t{1} << (j % 64);
  int rank = 0;
  for (int col = 0; col < m.cols && rank < m.rows; ++col) {
    const int w = col / 64;
    const std::uint64_t bit = std::uint64_t{1} << (col % 64);
    int pivot = -1;
    for (int r = rank; r < m.rows; ++r)
      if (rows[static_cast<std::size_t>(r) * words + w] & bit) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != rank)
      std::swap_ranges(rows.begin() + static_cast<std::ptrdiff_t>(pivot) * words,
                       rows.begin() + static_cast<std::ptrdiff_t>(pivot + 1) * words,
                       rows.begin() + static_cast<std::ptrdiff_t>(rank) * words);
    const std::uint64_t* prow = &rows[static_cast<std::size_t>(rank) * words];
    for (int r = rank + 1; r < m.rows; ++r) {
      std::uint64_t* row = &rows[static_cast<std::size_t>(r) * words];
      if (row[w] & bit)
        for (int t = w; t < words; ++t) row[t] ^= prow[t];
    }
    ++rank;
  }
  return rank;
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

int rank_mod_odd(const IntMatrix& m, std::uint64_t p) {
  std::vector<std::uint64_t> a(m.data.size());
  for (std::size_t t = 0; t < a.size(); ++t) {
    std::int64_t x = m.data[t] % static_cast<std::int64_t>(p);
    a[t] = static_cast<std::uint64_t>(x < 0 ? x + static_cast<std::int64_t>(p) : x);
  }
  auto at = [&](int i, int j) -> std::uint64_t& { return a[static_cast<std::size_t>(i) * m.cols + j]; };
  int rank = 0;
  for (int col = 0; col < m.cols && rank < m.rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < m.rows; ++r)
      if (at(r, col)) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != rank)
      for (int j = col; j < m.cols; ++j) std::swap(at(pivot, j), at(rank, j));
    const std::uint64_t inv = pow_mod(at(rank, col), p - 2, p);
    for (int j = col; j < m.cols; ++j) at(rank, j) = at(rank, j) * inv % p;
    for (int r = rank + 1; r < m.rows; ++r) {
      const std::uint64_t f = at(r, col);
      if (!f) continue;
      for (int j = col; j < m.cols; ++j) at(r, j) = (at(r, j) + (p - f) * at(rank, j)) % p;
    }
    ++rank;
  }
  return rank;
}

int cmpabs(const BigInt& a, const BigInt& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

bool checked_axpy(std::int64_t x, std::int64_t f, std::int64_t y, std::int64_t& out) {
  // out = x - f * y
  std::int64_t prod;
  if (__builtin_mul_overflow(f, y, &prod)) return false;
  return !__builtin_sub_overflow(x, prod, &out);
}

}  // namespace

int rank_mod_p(const IntMatrix& m, int p) {
  if (!is_prime(p)) throw std::invalid_argument("rank_mod_p: " + std::to_string(p) + " is not prime");
  if (p == 2) return rank_mod_2(m);
  return rank_mod_odd(m, static_cast<std::uint64_t>(p));
}

int dim_H1_mod_p(const TwoComplex& x, int p) {
  const int n = x.n();
  return num_edges(n) - (n - 1) - rank_mod_p(boundary_d2(n, x.triangles()), p);
}

std::vector<BigInt> smith_normal_form(const IntMatrix& m) {
  IntMatrix a = m;
  std::vector<int> live_rows(a.rows), live_cols(a.cols);
  for (int i = 0; i < a.rows; ++i) live_rows[i] = i;
  for (int j = 0; j < a.cols; ++j) live_cols[j] = j;

  // Unit pivots in machine integers: each one splits off an invariant factor 1
  // and leaves the Schur complement.
  std::size_t unit_pivots = 0;
  std::vector<std::int64_t> scratch;
  bool overflow = false;
  while (!overflow) {
    int pr = -1, pc = -1;
    for (std::size_t ri = 0; ri < live_rows.size() && pr < 0; ++ri)
      for (std::size_t ci = 0; ci < live_cols.size(); ++ci)
        if (std::abs(a.at(live_rows[ri], live_cols[ci])) == 1) {
          pr = static_cast<int>(ri);
          pc = static_cast<int>(ci);
          break;
        }
    if (pr < 0) break;
    const int p = live_rows[pr], c = live_cols[pc];
    const std::int64_t sign = a.at(p, c);
    for (int r : live_rows) {
      if (r == p || a.at(r, c) == 0) continue;
      const std::int64_t f = a.at(r, c) * sign;
      scratch.resize(live_cols.size());
      for (std::size_t ci = 0; ci < live_cols.size() && !overflow; ++ci)
        overflow = !checked_axpy(a.at(r, live_cols[ci]), f, a.at(p, live_cols[ci]), scratch[ci]);
      if (overflow) break;
      for (std::size_t ci = 0; ci < live_cols.size(); ++ci) a.at(r, live_cols[ci]) = scratch[ci];
    }
    if (overflow) break;
    live_rows.erase(live_rows.begin() + pr);
    live_cols.erase(live_cols.begin() + pc);
    ++unit_pivots;
  }
  // An interrupted pivot left its column partly cleared; that is still a
  // sequence of unimodular row operations, so the remainder is equivalent.

  const int R = static_cast<int>(live_rows.size()), C = static_cast<int>(live_cols.size());
  std::vector<BigInt> b(static_cast<std::size_t>(R) * C);
  for (int i = 0; i < R; ++i)
    for (int j = 0; j < C; ++j) b[static_cast<std::size_t>(i) * C + j] = static_cast<long>(a.at(live_rows[i], live_cols[j]));
  auto at = [&](int i, int j) -> BigInt& { return b[static_cast<std::size_t>(i) * C + j]; };

  std::vector<char> row_done(R, 0), col_done(C, 0);
  std::vector<BigInt> diag;
  BigInt q;
  while (true) {
    int p = -1, c = -1;
    for (int i = 0; i < R; ++i) {
      if (row_done[i]) continue;
      for (int j = 0; j < C; ++j)
        if (!col_done[j] && sgn(at(i, j)) != 0 && (p < 0 || cmpabs(at(i, j), at(p, c)) < 0)) {
          p = i;
          c = j;
        }
    }
    if (p < 0) break;
    while (true) {
      bool clean = true;
      for (int i = 0; i < R; ++i) {
        if (row_done[i] || i == p || sgn(at(i, c)) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), at(i, c).get_mpz_t(), at(p, c).get_mpz_t());
        for (int j = 0; j < C; ++j)
          if (!col_done[j] && sgn(at(p, j)) != 0) at(i, j) -= q * at(p, j);
        if (sgn(at(i, c)) != 0) clean = false;
      }
      for (int j = 0; j < C; ++j) {
        if (col_done[j] || j == c || sgn(at(p, j)) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), at(p, j).get_mpz_t(), at(p, c).get_mpz_t());
        for (int i = 0; i < R; ++i)
          if (!row_done[i] && sgn(at(i, c)) != 0) at(i, j) -= q * at(i, c);
        if (sgn(at(p, j)) != 0) clean = false;
      }
      if (clean) break;
      // a nonzero remainder is smaller than the pivot: move there
      for (int i = 0; i < R; ++i)
        if (!row_done[i] && sgn(at(i, c)) != 0 && cmpabs(at(i, c), at(p, c)) < 0) p = i;
      for (int j = 0; j < C; ++j)
        if (!col_done[j] && sgn(at(p, j)) != 0 && cmpabs(at(p, j), at(p, c)) < 0) c = j;
    }
    diag.push_back(abs(at(p, c)));
    row_done[p] = 1;
    col_done[c] = 1;
  }

  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      BigInt g, l;
      mpz_gcd(g.get_mpz_t(), diag[i].get_mpz_t(), diag[j].get_mpz_t());
      mpz_lcm(l.get_mpz_t(), diag[i].get_mpz_t(), diag[j].get_mpz_t());
      diag[i] = g;
      diag[j] = l;
    }

  std::vector<BigInt> out(unit_pivots, BigInt(1));
  out.insert(out.end(), diag.begin(), diag.end());
  return out;
}

HomologyReport homology_report(const TwoComplex& x, std::optional<int> p) {
  const int n = x.n();
  const int e = num_edges(n);
  HomologyReport r;
  r.n = n;
  r.faces = x.size();
  r.p = p;
  std::vector<BigInt> d = smith_normal_form(boundary_d2(n, x.triangles()));
  r.rank_q = static_cast<int>(d.size());
  r.dim_H1_q = e - (n - 1) - r.rank_q;
  for (const auto& v : d)
    if (v > 1) {
      r.elementary_divisors.push_back(v);
      r.torsion_order *= v;
    }
  r.mg = r.dim_H1_q + static_cast<int>(r.elementary_divisors.size());
  if (p) {
    int rank = rank_mod_p(boundary_d2(n, x.triangles()), *p);
    r.dim_Z1_p = e - rank;
    r.dim_H1_p = e - (n - 1) - rank;
  }
  BigInt lhs, rhs;
  mpz_pow_ui(lhs.get_mpz_t(), r.torsion_order.get_mpz_t(), 4);
  mpz_ui_pow_ui(rhs.get_mpz_t(), 3, static_cast<unsigned long>(n) * n);
  r.torsion_bound_holds = lhs <= rhs;
  return r;
}

BigInt count_Z1(const TwoComplex& x, const GroupSpec& group) {
  const int n = x.n();
  const unsigned long e = static_cast<unsigned long>(num_edges(n));
  const IntMatrix d2 = boundary_d2(n, x.triangles());
  std::optional<std::vector<BigInt>> divisors;
  BigInt total = 1;
  for (int m : group.moduli()) {
    BigInt factor;
    if (is_prime(m)) {
      mpz_ui_pow_ui(factor.get_mpz_t(), static_cast<unsigned long>(m), e - rank_mod_p(d2, m));
    } else {
      if (!divisors) divisors = smith_normal_form(d2);
      mpz_ui_pow_ui(factor.get_mpz_t(), static_cast<unsigned long>(m), e - divisors->size());
      for (const auto& d : *divisors) {
        BigInt g;
        mpz_gcd_ui(g.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(m));
        factor *= g;
      }
    }
    total *= factor;
  }
  return total;
}

int mg_H1(const TwoComplex& x) { return homology_report(x).mg; }

BigInt torsion_order(const TwoComplex& x) { return homology_report(x).torsion_order; }

bool torsion_bound_check(const TwoComplex& x) { return homology_report(x).torsion_bound_holds; }

}  // namespace cocyc
