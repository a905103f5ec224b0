#include "cocyc/complex.hpp"
#include "cocyc/homology.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace cocyc;

namespace {

TwoComplex rp2() {
  return TwoComplex(6, {{1, 2, 4}, {1, 2, 6}, {1, 3, 5}, {1, 3, 6}, {1, 4, 5}, {2, 3, 4}, {2, 3, 5}, {2, 5, 6}, {3, 4, 6}, {4, 5, 6}});
}

IntMatrix random_int_matrix(int r, int c, int range, Rng& rng) {
  IntMatrix m(r, c);
  for (auto& x : m.data) x = static_cast<std::int64_t>(rng.below(2 * range + 1)) - range;
  return m;
}

std::vector<BigInt> nontrivial(const std::vector<BigInt>& d) {
  std::vector<BigInt> out;
  for (const auto& x : d)
    if (x > 1) out.push_back(x);
  return out;
}

}  // namespace

TEST(Boundary, ChainComplexCondition) {
  Rng rng(60);
  for (int n : {3, 5, 8}) {
    BoundaryMatrices b = boundary_matrices(sample_linial_meshulam(n, 2.0, rng));
    BoundaryMatrices full = boundary_matrices(TwoComplex::full(n));
    for (const auto* m : {&b, &full}) {
      ASSERT_EQ(m->d1.rows, n * (n - 1) / 2);
      for (int v = 0; v < n; ++v)
        for (int t = 0; t < m->d2.cols; ++t) {
          std::int64_t s = 0;
          for (int e = 0; e < m->d1.rows; ++e) s += m->d1.at(e, v) * m->d2.at(e, t);
          ASSERT_EQ(s, 0);
        }
    }
  }
}

TEST(RankModP, Examples) {
  EXPECT_EQ(rank_mod_p(IntMatrix(4, 7), 2), 0);
  EXPECT_EQ(rank_mod_p(IntMatrix::identity(9), 5), 9);
  for (int p : {2, 3, 7})
    for (int n : {4, 5, 7}) {
      IntMatrix d2 = boundary_matrices(TwoComplex::full(n)).d2;
      EXPECT_EQ(rank_mod_p(d2, p), (n - 1) * (n - 2) / 2);
    }
  EXPECT_EQ(oracle::rational_rank(boundary_matrices(TwoComplex::full(5)).d2), 6);
  EXPECT_THROW(rank_mod_p(IntMatrix::identity(2), 4), std::invalid_argument);
}

TEST(RankModP, MatchesReferenceElimination) {
  Rng rng(61);
  for (int t = 0; t < 300; ++t) {
    int r = 1 + static_cast<int>(rng.below(70)), c = 1 + static_cast<int>(rng.below(70));
    IntMatrix m = random_int_matrix(r, c, 3, rng);
    for (int row = 0; row < r; ++row)
      if (rng.bernoulli(0.3))
        for (int j = 0; j < c; ++j) m.at(row, j) = m.at(0, j) * 2;  // plant dependencies
    for (int p : {2, 3, 5, 101}) ASSERT_EQ(rank_mod_p(m, p), oracle::modular_rank(m, p)) << r << "x" << c << " p=" << p;
  }
}

TEST(DimH1, Examples) {
  EXPECT_EQ(dim_H1_mod_p(TwoComplex::faceless(5), 2), 6);
  for (int p : {2, 3}) EXPECT_EQ(dim_H1_mod_p(TwoComplex::full(7), p), 0);
  EXPECT_EQ(dim_H1_mod_p(rp2(), 2), 1);
  EXPECT_EQ(dim_H1_mod_p(rp2(), 3), 0);
}

TEST(Snf, Examples) {
  for (const auto& d : smith_normal_form(IntMatrix::identity(5))) EXPECT_EQ(d, 1);
  IntMatrix m(2, 2);
  m.at(0, 0) = 2;
  m.at(1, 1) = 3;
  EXPECT_EQ(smith_normal_form(m), (std::vector<BigInt>{1, 6}));
  std::vector<BigInt> d = smith_normal_form(boundary_d2(6, rp2().triangles()));
  ASSERT_EQ(d.size(), 10u);
  EXPECT_EQ(d.back(), 2);
  EXPECT_EQ(nontrivial(d), std::vector<BigInt>{2});
  EXPECT_EQ(torsion_order(rp2()), 2);
}

TEST(Snf, MatchesDeterminantalDivisors) {
  Rng rng(62);
  for (int t = 0; t < 150; ++t) {
    int r = 1 + static_cast<int>(rng.below(5)), c = 1 + static_cast<int>(rng.below(5));
    IntMatrix m = random_int_matrix(r, c, 6, rng);
    std::vector<BigInt> d = smith_normal_form(m);
    ASSERT_EQ(d, oracle::determinantal_factors(m));
    for (std::size_t i = 1; i < d.size(); ++i) EXPECT_EQ(d[i] % d[i - 1], 0);
  }
}

TEST(Snf, LargeEntriesPromoteToBigIntegers) {
  IntMatrix m(3, 3);
  const std::int64_t big = 3037000493LL;  // prime above sqrt(2^63)
  m.at(0, 0) = big;
  m.at(0, 1) = big - 2;
  m.at(1, 0) = big + 2;
  m.at(1, 1) = big;
  m.at(2, 2) = big;
  std::vector<BigInt> d = smith_normal_form(m);
  EXPECT_EQ(d, oracle::determinantal_factors(m));
}

TEST(Snf, MetamorphicInvariance) {
  Rng rng(63);
  for (int t = 0; t < 40; ++t) {
    TwoComplex x = sample_linial_meshulam(7, 3.0, rng);
    IntMatrix d = boundary_d2(7, x.triangles());
    std::vector<BigInt> base = smith_normal_form(d);
    std::vector<int> rp(d.rows), cp(d.cols);
    std::iota(rp.begin(), rp.end(), 0);
    std::iota(cp.begin(), cp.end(), 0);
    for (int i = d.rows - 1; i > 0; --i) std::swap(rp[i], rp[rng.below(i + 1)]);
    for (int i = d.cols - 1; i > 0; --i) std::swap(cp[i], cp[rng.below(i + 1)]);
    IntMatrix m(d.rows, d.cols);
    for (int i = 0; i < d.rows; ++i)
      for (int j = 0; j < d.cols; ++j) m.at(i, j) = d.at(rp[i], cp[j]);
    for (int i = 0; i < d.rows; ++i)
      if (rng.bernoulli(0.5))
        for (int j = 0; j < d.cols; ++j) m.at(i, j) = -m.at(i, j);
    for (int j = 0; j < d.cols; ++j)
      if (rng.bernoulli(0.5))
        for (int i = 0; i < d.rows; ++i) m.at(i, j) = -m.at(i, j);
    EXPECT_EQ(smith_normal_form(m), base);
    EXPECT_EQ(smith_normal_form(m.transposed()), base);
  }
}

TEST(CountZ1, Examples) {
  EXPECT_EQ(count_Z1(TwoComplex::faceless(4), GroupSpec({2})), 64);
  for (int p : {2, 3, 5}) EXPECT_EQ(count_Z1(TwoComplex::full(4), GroupSpec({p})), BigInt(p * p * p));
  EXPECT_EQ(count_Z1(rp2(), GroupSpec({2})), 64);  // 2^5 coboundaries times |H^1(F_2)| = 2
  EXPECT_EQ(count_Z1(rp2(), GroupSpec({4})), 4 * 4 * 4 * 4 * 4 * 2);
}

TEST(CountZ1, MatchesBruteForce) {
  Rng rng(64);
  for (int t = 0; t < 60; ++t) {
    int n = 4 + static_cast<int>(rng.below(2));
    GroupSpec g = n == 4 ? GroupSpec({2 + static_cast<int>(rng.below(3))}) : GroupSpec({2});
    TwoComplex x = sample_linial_meshulam(n, 1.0 + 2 * rng.uniform01(), rng);
    ASSERT_EQ(count_Z1(x, g), oracle::brute_cocycle_count(x, g));
  }
  TwoComplex x = sample_one_out(4, rng);
  EXPECT_EQ(count_Z1(x, GroupSpec({2, 2})), oracle::brute_cocycle_count(x, GroupSpec({2, 2})));
}

TEST(CountZ1, Multiplicative) {
  Rng rng(65);
  for (int t = 0; t < 30; ++t) {
    TwoComplex x = t == 0 ? rp2() : sample_linial_meshulam(8, 2.5, rng);
    for (auto [a, b] : std::vector<std::pair<int, int>>{{2, 3}, {2, 2}, {4, 6}, {9, 5}})
      EXPECT_EQ(count_Z1(x, GroupSpec({a, b})), count_Z1(x, GroupSpec({a})) * count_Z1(x, GroupSpec({b})));
  }
}

TEST(Mg, ExamplesAndConsistency) {
  EXPECT_EQ(mg_H1(TwoComplex::full(6)), 0);
  EXPECT_EQ(mg_H1(rp2()), 1);
  Rng rng(66);
  for (int t = 0; t < 40; ++t) {
    TwoComplex x = sample_linial_meshulam(7, 2.0 + 3 * rng.uniform01(), rng);
    HomologyReport r = homology_report(x);
    int best = 0;
    std::vector<int> primes = {2, 3, 5, 7};
    for (const auto& d : r.elementary_divisors) {
      BigInt v = d;
      for (int p = 2; v > 1; ++p)
        while (v % p == 0) {
          primes.push_back(p);
          v /= p;
        }
    }
    for (int p : primes) best = std::max(best, dim_H1_mod_p(x, p));
    EXPECT_EQ(mg_H1(x), best);
  }
}

TEST(Report, UniversalCoefficients) {
  Rng rng(67);
  for (int t = 0; t < 60; ++t) {
    TwoComplex x = t == 0 ? rp2() : sample_one_out(5 + static_cast<int>(rng.below(5)), rng);
    for (int p : {2, 3, 5}) {
      HomologyReport r = homology_report(x, p);
      int divisible = 0;
      for (const auto& d : r.elementary_divisors) divisible += d % p == 0;
      EXPECT_EQ(*r.dim_H1_p, r.dim_H1_q + divisible);
      EXPECT_EQ(*r.dim_H1_p, dim_H1_mod_p(x, p));
      BigInt prod = 1;
      for (const auto& d : r.elementary_divisors) prod *= d;
      EXPECT_EQ(prod, r.torsion_order);
    }
  }
  EXPECT_THROW(homology_report(rp2(), 6), std::invalid_argument);
}

TEST(TorsionBound, Examples) {
  EXPECT_TRUE(torsion_bound_check(rp2()));
  EXPECT_TRUE(torsion_bound_check(TwoComplex::faceless(9)));
  for (const auto& h : enumerate_hypertrees(6)) ASSERT_TRUE(torsion_bound_check(h.complex));
}
