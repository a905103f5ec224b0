#include "cocyc/cochain.hpp"
#include "cocyc/graphon.hpp"
#include "cocyc/instances.hpp"
#include "cocyc/regularity.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace cocyc;

namespace {

Partition random_partition(int k, Rng& rng) {
  int blocks = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
  Partition p;
  p.blocks.resize(blocks);
  for (int i = 0; i < blocks; ++i) p.blocks[i].push_back(i);  // keep every block nonempty
  for (int i = blocks; i < k; ++i) p.blocks[rng.below(static_cast<std::uint64_t>(blocks))].push_back(i);
  for (auto& b : p.blocks) std::sort(b.begin(), b.end());
  // shuffle which indices seed the blocks
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = k - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(static_cast<std::uint64_t>(i) + 1)]);
  for (auto& b : p.blocks) {
    for (auto& x : b) x = perm[x];
    std::sort(b.begin(), b.end());
  }
  return p;
}

std::vector<double> random_matrix(int n, Rng& rng) {
  std::vector<double> m(static_cast<std::size_t>(n) * n);
  for (auto& x : m) x = 2 * rng.uniform01() - 1;
  return m;
}

}  // namespace

TEST(Stepping, SingletonsAndSingleBlock) {
  Rng rng(40);
  StepMatrix w = random_step_matrix(random_parts(5, rng), rng);
  StepMatrix same = step(w, Partition::singletons(5));
  for (std::size_t i = 0; i < w.values.size(); ++i) EXPECT_NEAR(same.values[i], w.values[i], 1e-15);
  StepMatrix flat = step(w, Partition::single_block(5));
  for (double v : flat.values) EXPECT_NEAR(v, w.integral(), 1e-14);
}

TEST(Stepping, ProjectionProperties) {
  Rng rng(41);
  for (int t = 0; t < 300; ++t) {
    int k = 1 + static_cast<int>(rng.below(8));
    StepMatrix w = random_step_matrix(random_parts(k, rng), rng);
    Partition p = random_partition(k, rng);
    StepMatrix s = step(w, p);
    StepMatrix s2 = step(s, p);
    for (std::size_t i = 0; i < s.values.size(); ++i) ASSERT_NEAR(s2.values[i], s.values[i], 1e-14);
    EXPECT_NEAR(s.integral(), w.integral(), 1e-14);
    EXPECT_LE(cut_norm(s), cut_norm(w) + 1e-14);
    EXPECT_LE(s.l2_norm_squared(), w.l2_norm_squared() + 1e-14);
  }
}

TEST(Stepping, CochainGraphonStaysSymmetricGraphon) {
  Rng rng(42);
  for (int t = 0; t < 50; ++t) {
    int n = 3 + static_cast<int>(rng.below(6));
    GroupSpec g({3});
    StepKernel w = embed_graphon<double>(sample_random_cochain(n, SymmetricDistribution::uniform(g), rng));
    StepKernel s = step(w, random_partition(n, rng));
    EXPECT_TRUE(s.is_symmetric());
    EXPECT_TRUE(s.is_graphon());
  }
}

TEST(Stepping, RejectsBadPartitions) {
  Rng rng(43);
  StepMatrix w = random_step_matrix(random_parts(4, rng), rng);
  Partition overlap{{{0, 1}, {1, 2, 3}}};
  Partition missing{{{0, 1}, {2}}};
  Partition empty{{{0, 1, 2, 3}, {}}};
  EXPECT_THROW(step(w, overlap), std::invalid_argument);
  EXPECT_THROW(step(w, missing), std::invalid_argument);
  EXPECT_THROW(step(w, empty), std::invalid_argument);
}

TEST(MatrixCutNorm, Examples) {
  for (int n : {3, 7}) {
    MatrixCutNorm ones = step_cut_norm(n, std::vector<double>(n * n, 1.0));
    EXPECT_NEAR(ones.value, 1.0, 1e-15);
    EXPECT_TRUE(ones.exact);
  }
  // rank one sign matrix
  std::vector<int> u = {1, -1, -1, 1, 1}, v = {-1, 1, 1, 1, -1};
  std::vector<double> m;
  for (int a : u)
    for (int b : v) m.push_back(a * b);
  EXPECT_NEAR(step_cut_norm(5, m).value, oracle::exhaustive_matrix_cut_norm(5, m), 1e-15);
}

TEST(MatrixCutNorm, EqualsGraphonCutNorm) {
  Rng rng(44);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> m = random_matrix(6, rng);
    double direct = oracle::exhaustive_matrix_cut_norm(6, m);
    EXPECT_NEAR(step_cut_norm(6, m).value, direct, 1e-14);
    EXPECT_NEAR(cut_norm(StepMatrix::from_matrix(6, m)), direct, 1e-14);
  }
}

TEST(Fk, AlreadyMeasurableInput) {
  // constant on a 2x2 block pattern over 8 rows
  std::vector<double> m(64);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) m[i * 8 + j] = (i < 3) == (j < 5) ? 0.9 : -0.4;
  FkResult r = fk_decompose(StepMatrix::from_matrix(8, m), 0.05);
  EXPECT_TRUE(r.residual_exact);
  EXPECT_NEAR(r.residual, 0.0, 1e-12);
  EXPECT_LE(r.partition.size(), 4);
}

TEST(Fk, PlantedBlocks) {
  Rng rng(45);
  const int n = 20;
  std::vector<double> m(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double base = (i < 8 && j < 8) || (i >= 8 && j >= 8) ? 0.8 : 0.1;
      m[i * n + j] = base + 0.1 * (rng.uniform01() - 0.5);
    }
  StepMatrix w = StepMatrix::from_matrix(n, m);
  FkResult r = fk_decompose(w, 0.1);
  ASSERT_TRUE(r.residual_exact);
  StepMatrix diff = w - step(w, r.partition);
  EXPECT_LE(step_cut_norm(n, diff.values).value, 0.1 * w.sup_norm() + 1e-12);
  EXPECT_NEAR(step_cut_norm(n, diff.values).value, r.residual, 1e-12);
}

TEST(Fk, EnergyIncrementsAndPartCap) {
  Rng rng(46);
  for (int t = 0; t < 20; ++t) {
    const int n = 12;
    StepMatrix w = StepMatrix::from_matrix(n, random_matrix(n, rng));
    const double eps = 0.15;
    FkResult r = fk_decompose(w, eps, t);
    double prev = r.initial_energy;
    for (const auto& round : r.trace) {
      EXPECT_GE(round.energy - prev, eps * eps - 1e-12);
      prev = round.energy;
    }
    EXPECT_LE(static_cast<int>(r.trace.size()), static_cast<int>(std::ceil(1 / (eps * eps))));
    EXPECT_LE(std::log(static_cast<double>(r.partition.size())), std::ceil(1 / (eps * eps)) * std::log(4.0));
  }
}

TEST(Fk, CochainGraphonSlices) {
  Rng rng(47);
  GroupSpec g({3});
  StepKernel w = embed_graphon<double>(sample_random_cochain(9, SymmetricDistribution::uniform(g), rng));
  const double eps = 0.3;
  FkResult r = fk_decompose(w, eps, 3);
  EXPECT_TRUE(r.residual_exact);
  EXPECT_LE(r.residual, eps * r.scale + 1e-12);
  StepKernel s = step(w, r.partition);
  double direct = 0.0;
  for (int x = 0; x < 3; ++x) direct += cut_norm(w.slice(x) - s.slice(x));
  EXPECT_NEAR(direct, r.residual, 1e-12);
  EXPECT_LE(std::log(static_cast<double>(r.partition.size())), std::ceil(1 / (eps * eps)) * 3 * std::log(4.0));
}

TEST(Fk, RejectsNonPositiveEps) {
  StepMatrix w = StepMatrix::from_matrix(2, {1, 0, 0, 1});
  EXPECT_THROW(fk_decompose(w, 0.0), std::invalid_argument);
  EXPECT_THROW(fk_decompose(w, -1.0), std::invalid_argument);
}

TEST(FactorTwo, Examples) {
  Rng rng(48);
  StepMatrix w1 = random_step_matrix(random_parts(6, rng), rng);
  Partition p = random_partition(6, rng);
  FactorTwo same = factor_two_check(w1, step(w1, p), p);
  EXPECT_TRUE(same.holds);
  EXPECT_LE(same.lhs, 0.5 * same.rhs + 1e-12);  // factor one suffices here
  StepMatrix measurable = step(w1, p);
  FactorTwo zero = factor_two_check(measurable, step(random_step_matrix(measurable.parts, rng), p), p);
  EXPECT_NEAR(zero.lhs, 0.0, 1e-14);
  EXPECT_THROW(factor_two_check(w1, random_step_matrix(w1.parts, rng), Partition::single_block(6)), std::invalid_argument);
}

TEST(FactorTwo, HoldsOnRandomTriples) {
  Rng rng(49);
  for (int t = 0; t < 1000; ++t) {
    int k = 1 + static_cast<int>(rng.below(10));
    std::vector<double> parts = random_parts(k, rng);
    Partition p = random_partition(k, rng);
    StepMatrix w1 = random_step_matrix(parts, rng);
    StepMatrix w2 = step(random_step_matrix(parts, rng), p);
    ASSERT_TRUE(factor_two_check(w1, w2, p).holds) << t;
  }
}
