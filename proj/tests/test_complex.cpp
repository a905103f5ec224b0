#include "cocyc/cochain.hpp"
#include "cocyc/complex.hpp"
#include "cocyc/homology.hpp"

#include "fixtures.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <map>

using namespace cocyc;

namespace {

std::vector<int> triangle_ids(const TwoComplex& x) {
  std::vector<int> ids;
  for (const auto& t : x.triangles()) ids.push_back(triangle_index(x.n(), t));
  return ids;
}

// 10^4 hypertrees at n=5 for the chi-square test.
const std::vector<TwoComplex>& n5_samples() {
  static const std::vector<TwoComplex> samples = [] {
    ProjectionKernel k = build_kernel(5);
    Rng rng(77);
    std::vector<TwoComplex> out;
    for (int i = 0; i < 10000; ++i) out.push_back(sample_hypertree(k, rng));
    return out;
  }();
  return samples;
}

}  // namespace

TEST(OneOut, SmallCases) {
  Rng rng(70);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(sample_one_out(3, rng), TwoComplex::full(3));
  for (int i = 0; i < 200; ++i) {
    int n = 4 + static_cast<int>(rng.below(10));
    TwoComplex x = sample_one_out(n, rng);
    EXPECT_LE(static_cast<std::int64_t>(x.size()), binomial(n, 2));
    for (int d : x.edge_degrees()) ASSERT_GE(d, 1);  // every edge chose a face
  }
  EXPECT_THROW(sample_one_out(2, rng), std::invalid_argument);
}

TEST(OneOut, ExpectedFaceCountAtFour) {
  // each triangle is missed by its three edges with probability 1/8
  const double expected = 4 * (1 - 1.0 / 8);
  Rng rng(71);
  const int samples = 10000;
  double sum = 0, sum_sq = 0;
  for (int i = 0; i < samples; ++i) {
    double c = static_cast<double>(sample_one_out(4, rng).size());
    sum += c;
    sum_sq += c * c;
  }
  double mean = sum / samples;
  double se = std::sqrt((sum_sq / samples - mean * mean) / samples);
  EXPECT_NEAR(mean, expected, 3 * se);
}

TEST(OneOut, ContainmentProductFormulaExactAtFive) {
  // every one of the 3^10 choice vectors at n=5
  Rng rng(72);
  const int n = 5;
  for (const GroupSpec& g : {GroupSpec({2}), GroupSpec({3})}) {
    Cochain f = fixture::path_perturbed_cochain(n, g, 1, rng);
    TwoComplex y = coboundary_triangles(f);
    std::int64_t hits = 0, total = 0;
    std::vector<int> choice(num_edges(n), 0);
    while (true) {
      bool inside = true;
      for (int e = 0; e < num_edges(n) && inside; ++e) {
        Edge uv = edge_at(n, e);
        int w = 0;
        for (int c = 1, skip = choice[e]; c <= n; ++c) {
          if (c == uv.u || c == uv.v) continue;
          if (skip-- == 0) {
            w = c;
            break;
          }
        }
        inside = y.contains(Triangle::sorted(uv.u, uv.v, w));
      }
      hits += inside;
      ++total;
      int i = 0;
      while (i < num_edges(n) && ++choice[i] == n - 2) choice[i++] = 0;
      if (i == num_edges(n)) break;
    }
    EXPECT_EQ(one_out_containment_probability(y), ratio(hits, total));
  }
}

TEST(OneOut, ContainmentProductFormulaMonteCarlo) {
  Rng rng(73);
  const int n = 6, samples = 100000;
  for (const GroupSpec& g : {GroupSpec({2}), GroupSpec({3})}) {
    Cochain f = fixture::path_perturbed_cochain(n, g, 1, rng);
    TwoComplex y = coboundary_triangles(f);
    double p = one_out_containment_probability(y).get_d();
    ASSERT_GT(p, 0.0);
    ASSERT_LT(p, 1.0);
    int hits = 0;
    for (int i = 0; i < samples; ++i) {
      TwoComplex s = sample_one_out(n, rng);
      bool inside = true;
      for (const auto& t : s.triangles()) inside = inside && y.contains(t);
      hits += inside;
    }
    EXPECT_NEAR(static_cast<double>(hits) / samples, p, 3 * std::sqrt(p * (1 - p) / samples));
  }
}

TEST(LinialMeshulam, ExtremesAndMean) {
  Rng rng(74);
  EXPECT_EQ(sample_linial_meshulam(8, 0.0, rng).size(), 0u);
  EXPECT_EQ(sample_linial_meshulam(8, 8.0, rng), TwoComplex::full(8));
  EXPECT_THROW(sample_linial_meshulam(8, 9.0, rng), std::invalid_argument);
  EXPECT_THROW(sample_linial_meshulam(8, -0.5, rng), std::invalid_argument);
  const int samples = 10000;
  const double p = 0.2, trials = static_cast<double>(binomial(10, 3));
  double sum = 0;
  for (int i = 0; i < samples; ++i) sum += static_cast<double>(sample_linial_meshulam(10, 2.0, rng).size());
  EXPECT_NEAR(sum / samples, trials * p, 3 * std::sqrt(trials * p * (1 - p) / samples));
}

TEST(Kernel, ProjectionOfExpectedRank) {
  for (int n : {3, 4, 5, 7, 9}) {
    ProjectionKernel k = build_kernel(n);
    const double rank = static_cast<double>(binomial(n - 1, 2));
    ASSERT_EQ(k.K.rows(), binomial(n, 3));
    EXPECT_EQ(k.rank(), binomial(n - 1, 2));
    EXPECT_NEAR(k.K.trace(), rank, 1e-8);
    EXPECT_LE((k.K * k.K - k.K).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LE((k.K - k.K.transpose()).cwiseAbs().maxCoeff(), 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k.K);
    for (double ev : es.eigenvalues()) EXPECT_TRUE(std::abs(ev) < 1e-8 || std::abs(ev - 1) < 1e-8) << ev;
    // every triangle is equally likely
    for (int i = 0; i < k.K.rows(); ++i) EXPECT_NEAR(k.K(i, i), 3.0 / n, 1e-10);
  }
  EXPECT_EQ(build_kernel(5).ground, all_triangles(5));
  EXPECT_THROW(build_kernel(kMaxKernelVertices + 1), std::invalid_argument);
}

TEST(Kernel, SubsetProbabilitiesMatchEnumerationAtFive) {
  ProjectionKernel k = build_kernel(5);
  std::map<std::vector<int>, double> law;
  for (const auto& h : enumerate_hypertrees(5)) law[triangle_ids(h.complex)] = BigInt(h.h1_order * h.h1_order).get_d() / 125.0;
  int subsets = 0;
  std::vector<int> s = {0, 1, 2, 3, 4, 5};
  while (true) {
    auto it = law.find(s);
    double expected = it == law.end() ? 0.0 : it->second;
    EXPECT_NEAR(kernel_subset_probability(k.K, s), expected, 1e-10);
    ++subsets;
    int i = 5;
    while (i >= 0 && s[i] == 10 - 6 + i) --i;
    if (i < 0) break;
    ++s[i];
    for (int j = i + 1; j < 6; ++j) s[j] = s[j - 1] + 1;
  }
  EXPECT_EQ(subsets, 210);
}

TEST(Kernel, OrientationInvariance) {
  const int n = 6;
  ProjectionKernel base = build_kernel(n);
  std::vector<Triangle> all = all_triangles(n);
  for (int flip : {0, 7, 19}) {
    IntMatrix d2 = boundary_d2(n, all);
    for (int e = 0; e < d2.rows; ++e) d2.at(e, flip) = -d2.at(e, flip);
    ProjectionKernel k = kernel_from_boundary(n, d2);
    // K itself changes sign in row and column `flip`; |K| and principal minors do not
    EXPECT_LE((k.K.cwiseAbs() - base.K.cwiseAbs()).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LE((k.K.diagonal() - base.K.diagonal()).cwiseAbs().maxCoeff(), 1e-10);
    Rng rng(75 + flip);
    for (int t = 0; t < 50; ++t) {
      std::vector<int> s;
      for (int i = 0; i < k.K.rows(); ++i)
        if (rng.bernoulli(0.3)) s.push_back(i);
      EXPECT_NEAR(kernel_subset_probability(k.K, s), kernel_subset_probability(base.K, s), 1e-10);
    }
  }
}

TEST(Hypertree, FixedSizeAndFiniteHomology) {
  for (int n = 5; n <= 10; ++n) {
    ProjectionKernel k = build_kernel(n);
    Rng rng(80 + n);
    const int samples = n <= 7 ? 1000 : 200;
    for (int i = 0; i < samples; ++i) {
      TwoComplex x = sample_hypertree(k, rng);
      ASSERT_EQ(static_cast<std::int64_t>(x.size()), binomial(n - 1, 2));
      ASSERT_EQ(homology_report(x).dim_H1_q, 0) << "n=" << n;
    }
  }
}

TEST(Hypertree, ChiSquareAgainstExactLawAtFive) {
  std::map<std::vector<int>, int> index;
  std::vector<double> prob;
  for (const auto& h : enumerate_hypertrees(5)) {
    index[triangle_ids(h.complex)] = static_cast<int>(prob.size());
    prob.push_back(BigInt(h.h1_order * h.h1_order).get_d() / 125.0);
  }
  std::vector<int> counts(prob.size(), 0);
  for (const auto& x : n5_samples()) {
    auto it = index.find(triangle_ids(x));
    ASSERT_NE(it, index.end()) << "sample outside the support";
    ++counts[it->second];
  }
  const double total = static_cast<double>(n5_samples().size());
  double stat = 0;
  for (std::size_t i = 0; i < prob.size(); ++i) {
    double e = total * prob[i];
    stat += (counts[i] - e) * (counts[i] - e) / e;
  }
  boost::math::chi_squared dist(static_cast<double>(prob.size() - 1));
  EXPECT_GT(boost::math::cdf(boost::math::complement(dist, stat)), 0.01) << stat;
}

TEST(Hypertree, InclusionMomentsMatchKernel) {
  ProjectionKernel k = build_kernel(6);
  Rng rng(90);
  const int samples = 20000;
  const int m = static_cast<int>(k.K.rows());
  std::vector<int> single(m, 0);
  std::vector<std::pair<int, int>> pairs = {{0, 1}, {0, 19}, {3, 4}, {5, 14}, {2, 17}};
  std::vector<int> joint(pairs.size(), 0);
  for (int s = 0; s < samples; ++s) {
    std::vector<bool> in(m, false);
    for (int id : triangle_ids(sample_hypertree(k, rng))) in[id] = true;
    for (int i = 0; i < m; ++i) single[i] += in[i];
    for (std::size_t j = 0; j < pairs.size(); ++j) joint[j] += in[pairs[j].first] && in[pairs[j].second];
  }
  for (int i = 0; i < m; ++i) {
    double p = k.K(i, i);
    EXPECT_NEAR(single[i] / static_cast<double>(samples), p, 3 * std::sqrt(p * (1 - p) / samples)) << i;
  }
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    auto [a, b] = pairs[j];
    double p = k.K(a, a) * k.K(b, b) - k.K(a, b) * k.K(b, a);
    EXPECT_LE(p, k.K(a, a) * k.K(b, b) + 1e-12);  // negative association
    EXPECT_NEAR(joint[j] / static_cast<double>(samples), p, 3 * std::sqrt(p * (1 - p) / samples)) << a << "," << b;
  }
}

TEST(Avoidance, Extremes) {
  for (int n : {3, 5, 7}) {
    ProjectionKernel k = build_kernel(n);
    EXPECT_NEAR(avoidance_probability(k, TwoComplex::full(n)), 1.0, 1e-10);
    EXPECT_NEAR(avoidance_probability_complement(k, TwoComplex::full(n)), 1.0, 1e-10);
    EXPECT_EQ(avoidance_probability_exact(TwoComplex::full(n)), 1);
    EXPECT_NEAR(avoidance_probability(k, TwoComplex::faceless(n)), 0.0, 1e-10);
    EXPECT_NEAR(avoidance_probability_complement(k, TwoComplex::faceless(n)), 0.0, 1e-10);
    EXPECT_EQ(avoidance_probability_exact(TwoComplex::faceless(n)), 0);
  }
}

TEST(Avoidance, MatchesEnumerationSumAtFive) {
  std::vector<Hypertree> trees = enumerate_hypertrees(5);
  ProjectionKernel k = build_kernel(5);
  Rng rng(91);
  const std::vector<GroupSpec> groups = {GroupSpec({2}), GroupSpec({3})};
  for (int t = 0; t < 60; ++t) {
    const GroupSpec& g = groups[t % 2];
    Cochain f = t % 3 == 0 ? fixture::path_perturbed_cochain(5, g, 1, rng)  // probability 0
                           : sample_random_cochain(5, SymmetricDistribution::uniform(g), rng);
    TwoComplex y = t % 5 == 0 ? sample_linial_meshulam(5, 4.0, rng) : coboundary_triangles(f);
    Rational expected = 0;
    for (const auto& h : trees) {
      bool inside = true;
      for (const auto& tri : h.complex.triangles()) inside = inside && y.contains(tri);
      if (inside) expected += Rational(h.h1_order * h.h1_order) / 125;
    }
    EXPECT_EQ(avoidance_probability_exact(y), expected);
    EXPECT_NEAR(avoidance_probability(k, y), expected.get_d(), 1e-10);
    EXPECT_NEAR(avoidance_probability_complement(k, y), expected.get_d(), 1e-10);
  }
}

TEST(Avoidance, RoutesAgreeAndRespectBound) {
  Rng rng(92);
  for (int n = 6; n <= 8; ++n) {
    ProjectionKernel k = build_kernel(n);
    for (int t = 0; t < 40; ++t) {
      GroupSpec g({2 + static_cast<int>(rng.below(2))});
      Cochain f = t % 2 == 0 ? fixture::rp2_cocycle(n, rng)
                             : sample_random_cochain(n, SymmetricDistribution::uniform(g), rng);
      TwoComplex y = coboundary_triangles(f);
      double exact = avoidance_probability_exact(y).get_d();
      if (t % 2 == 0) {
        EXPECT_GT(exact, 0.0);
        EXPECT_LT(exact, 1.0);
      }
      EXPECT_NEAR(avoidance_probability(k, y), exact, 1e-10 + 1e-8 * exact);
      EXPECT_NEAR(avoidance_probability_complement(k, y), exact, 1e-10 + 1e-8 * exact);
      double bound = upperb_bound(n, y);
      if (exact > 0) EXPECT_LE(std::log(exact), bound + 1e-9);
      if (bound == -INFINITY) EXPECT_EQ(exact, 0.0);
    }
  }
}

TEST(Avoidance, CauchyBinetMatchesDeterminantAtNine) {
  ProjectionKernel k = build_kernel(9);
  Rng rng(93);
  for (int t = 0; t < 5; ++t) {
    TwoComplex y = coboundary_triangles(fixture::rp2_cocycle(9, rng));
    double exact = avoidance_probability_exact(y).get_d();
    ASSERT_GT(exact, 0.0);
    EXPECT_NEAR(std::log(avoidance_probability(k, y)), std::log(exact), 1e-8);
  }
}

TEST(Enumeration, KalaiSums) {
  for (int n : {4, 5, 6}) {
    std::vector<Hypertree> trees = enumerate_hypertrees(n);
    BigInt sum = 0;
    for (const auto& h : trees) {
      ASSERT_EQ(static_cast<std::int64_t>(h.complex.size()), binomial(n - 1, 2));
      ASSERT_EQ(h.h1_order, torsion_order(h.complex));
      sum += h.h1_order * h.h1_order;
    }
    BigInt expected = 1;
    for (std::int64_t i = 0; i < binomial(n - 2, 2); ++i) expected *= n;
    EXPECT_EQ(sum, expected) << "n=" << n;
    if (n == 4) {
      EXPECT_EQ(trees.size(), 4u);
      for (const auto& h : trees) EXPECT_EQ(h.h1_order, 1);
    }
  }
  TwoComplex rp2 = fixture::rp2();
  bool found = false;
  for (const auto& h : enumerate_hypertrees(6))
    if (h.complex == rp2) {
      found = true;
      EXPECT_EQ(h.h1_order, 2);
    }
  EXPECT_TRUE(found);
  EXPECT_THROW(enumerate_hypertrees(kMaxEnumerationVertices + 1), std::invalid_argument);
}

TEST(UpperBound, Examples) {
  for (int n : {4, 6, 9}) {
    double expected = (n - 2) * std::log(n) + binomial(n, 2) * (1 - 2.0 / n) * std::log((n - 2.0) / n);
    EXPECT_NEAR(upperb_bound(n, TwoComplex::full(n)), expected, 1e-12);
    // full complex: P = 1, so the bound is nonnegative
    EXPECT_GE(upperb_bound(n, TwoComplex::full(n)), -1e-12);
  }
  std::vector<Triangle> missing_12;
  for (const auto& t : all_triangles(6))
    if (!(t.a == 1 && t.b == 2)) missing_12.push_back(t);
  EXPECT_EQ(upperb_bound(6, TwoComplex(6, missing_12)), -INFINITY);
  EXPECT_EQ(avoidance_probability_exact(TwoComplex(6, missing_12)), 0);
}
