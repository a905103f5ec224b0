#include "cocyc/complex.hpp"
#include "cocyc/homology.hpp"
#include "cocyc/lab.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>

using namespace cocyc;

namespace {

std::vector<double> column(const Table& t, const std::string& name) {
  auto it = std::find(t.columns.begin(), t.columns.end(), name);
  if (it == t.columns.end()) throw std::out_of_range("no column " + name);
  std::size_t c = static_cast<std::size_t>(it - t.columns.begin());
  std::vector<double> out;
  for (const auto& row : t.rows) {
    const Cell& x = row[c];
    if (const auto* i = std::get_if<std::int64_t>(&x)) out.push_back(static_cast<double>(*i));
    else if (const auto* d = std::get_if<double>(&x)) out.push_back(*d);
    else out.push_back(std::stod(std::get<std::string>(x)));
  }
  return out;
}

ExperimentConfig config(Model m, std::vector<int> ns, int samples, std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.model = m;
  cfg.ns = std::move(ns);
  cfg.samples = samples;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST(Table, CsvAndJson) {
  Table t;
  t.columns = {"name", "count", "value"};
  t.add({std::string("plain"), std::int64_t{3}, 0.5});
  t.add({std::string("has,comma \"q\""), std::int64_t{-1}, -INFINITY});
  EXPECT_EQ(t.to_csv(), "name,count,value\nplain,3,0.5\n\"has,comma \"\"q\"\"\",-1,-inf\n");
  Json j = t.to_json();
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0]["count"], 3);
  EXPECT_EQ(j[1]["value"], "-inf");
  EXPECT_THROW(t.add({std::int64_t{1}}), std::logic_error);
}

TEST(Config, ModelsAndValidation) {
  for (Model m : {Model::Hypertree, Model::OneOut, Model::LinialMeshulam, Model::Full, Model::Faceless})
    EXPECT_EQ(parse_model(model_name(m)), m);
  EXPECT_THROW(parse_model("cube"), std::invalid_argument);
  ExperimentConfig cfg = config(Model::OneOut, {6, 8}, 10, 1);
  EXPECT_NO_THROW(cfg.validate());
  cfg.samples = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = config(Model::OneOut, {}, 10, 1);
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = config(Model::OneOut, {2}, 10, 1);
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(Trend, ViolationRule) {
  EXPECT_EQ(count_trend_violations({3, 2, 1}, {0, 0, 0}), 0);
  EXPECT_EQ(count_trend_violations({1, 2, 3}, {0, 0, 0}), 2);
  // a rise of 0.25 against combined SE sqrt(0.1^2 + 0.1^2) = 0.141: 0.25 < 0.283
  EXPECT_EQ(count_trend_violations({1, 1.25}, {0.1, 0.1}), 0);
  EXPECT_EQ(count_trend_violations({1, 1.3}, {0.1, 0.1}), 1);
  EXPECT_EQ(count_trend_violations({5}, {1}), 0);
}

TEST(Replicas, StreamsDependOnlyOnSeedAndIndex) {
  auto draw = [](int, Rng& rng) { return rng.below(1000000); };
  auto a = run_replicas(9, 5, draw);
  auto b = run_replicas(9, 8, draw);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(a[i], b[i]);
  EXPECT_NE(run_replicas(10, 5, draw), a);
}

TEST(Ez1Trend, DeterministicExtremes) {
  for (int q : {2, 3}) {
    ExperimentConfig cfg = config(Model::Full, {4, 6, 8}, 3, 1);
    cfg.group = GroupSpec({q});
    TrendResult full = run_ez1_trend(cfg);
    std::vector<double> ns = column(full.table, "n"), mean = column(full.table, "mean_Z1");
    for (std::size_t i = 0; i < ns.size(); ++i) EXPECT_DOUBLE_EQ(mean[i], std::pow(q, ns[i] - 1));  // coboundaries only
    EXPECT_TRUE(full.passed);

    cfg.model = Model::Faceless;
    TrendResult faceless = run_ez1_trend(cfg);
    mean = column(faceless.table, "mean_Z1");
    for (std::size_t i = 0; i < ns.size(); ++i) EXPECT_DOUBLE_EQ(mean[i], std::pow(q, ns[i] * (ns[i] - 1) / 2));
    EXPECT_FALSE(faceless.passed);  // log(mean)/n^2 rises with n
  }
}

TEST(Ez1Trend, HypertreeMeanMatchesEnumerationAtSix) {
  // E|Z^1(T_6, Z/2)| = sum over hypertrees of |H_1|^2/6^6 times |Z^1(S, Z/2)|
  GroupSpec g({2});
  Rational exact = 0;
  for (const auto& h : enumerate_hypertrees(6)) exact += Rational(BigInt(h.h1_order * h.h1_order) * count_Z1(h.complex, g)) / 46656;
  ExperimentConfig cfg = config(Model::Hypertree, {6}, 4000, 21);
  TrendResult r = run_ez1_trend(cfg);
  double mean = column(r.table, "mean_Z1")[0];
  double se = column(r.table, "rel_se_mean")[0] * mean;
  ASSERT_GT(se, 0.0);
  EXPECT_NEAR(mean, exact.get_d(), 3 * se);
  EXPECT_GT(exact, 32);  // RP^2-like hypertrees carry extra Z/2 cocycles
}

TEST(Ez1Trend, OneOutDecreasesAndIsReproducible) {
  ExperimentConfig cfg = config(Model::OneOut, {6, 8, 10, 12, 14}, 200, 5);
  TrendResult a = run_ez1_trend(cfg);
  TrendResult b = run_ez1_trend(cfg);
  EXPECT_EQ(a.table.to_csv(), b.table.to_csv());
  EXPECT_LE(a.violations, 1);
  EXPECT_TRUE(a.passed);
  cfg.seed = 6;
  EXPECT_NE(run_ez1_trend(cfg).table.to_csv(), a.table.to_csv());
}

TEST(BettiTrend, Extremes) {
  ExperimentConfig cfg = config(Model::Full, {5, 7}, 5, 2);
  cfg.primes = {2, 3};
  TrendResult full = run_betti_trend(cfg);
  for (double x : column(full.table, "median_dim_H1_over_n2")) EXPECT_EQ(x, 0.0);
  cfg.model = Model::Faceless;
  TrendResult faceless = run_betti_trend(cfg);
  std::vector<double> ns = column(faceless.table, "n"), med = column(faceless.table, "median_dim_H1_over_n2");
  ASSERT_EQ(ns.size(), 4u);  // one row per (n, p)
  for (std::size_t i = 0; i < ns.size(); ++i) EXPECT_DOUBLE_EQ(med[i], (ns[i] - 1) * (ns[i] - 2) / 2 / (ns[i] * ns[i]));
  for (double s : column(faceless.table, "se_median")) EXPECT_EQ(s, 0.0);
}

TEST(BettiTrend, HypertreesHaveNoRationalHomology) {
  ExperimentConfig cfg = config(Model::Hypertree, {5, 6, 7, 8}, 40, 3);
  TrendResult r = run_betti_trend(cfg);
  // dim H_1(F_2) counts only 2-torsion, rare at these sizes
  for (double q : column(r.table, "q90_dim_H1_over_n2")) EXPECT_LE(q, 1.0 / 25);
  EXPECT_TRUE(r.passed);
}

TEST(LayerAudit, FrequenciesAndChecks) {
  ExperimentConfig cfg = config(Model::Hypertree, {5, 6}, 60, 4);
  cfg.layers = 6;
  LayerAudit a = run_layer_audit(cfg);
  EXPECT_TRUE(a.passed());
  EXPECT_EQ(a.samples.rows.size(), 120u);
  std::vector<double> n = column(a.layers, "n"), freq = column(a.layers, "frequency");
  std::map<int, double> total;
  for (std::size_t i = 0; i < n.size(); ++i) total[static_cast<int>(n[i])] += freq[i];
  for (auto [k, v] : total) EXPECT_NEAR(v, 1.0, 1e-12) << k;
  std::vector<double> layer = column(a.samples, "layer"), b = column(a.samples, "b");
  const double eps = std::log(2.0) / 6;
  for (std::size_t i = 0; i < layer.size(); ++i) {
    if (b[i] == -INFINITY) EXPECT_EQ(layer[i], 6);
    else EXPECT_EQ(layer[i], std::min(6.0, std::floor(-b[i] / eps)));
  }
  cfg.ns = {9};
  EXPECT_THROW(run_layer_audit(cfg), std::invalid_argument);
}

TEST(Ldp, NumericsPass) {
  LdpReport r = run_ldp_numerics(GroupSpec({2}), 11);
  EXPECT_TRUE(r.passed()) << r.to_json().dump();
  EXPECT_GE(r.gap_ratio, 0.3);
  EXPECT_LE(r.gap_ratio, 0.7);
  EXPECT_LE(r.max_gibbs, 1e-12);
  EXPECT_EQ(column(r.mgf, "n"), (std::vector<double>{4, 8, 16, 32}));
}

TEST(Certification, AllChecksPass) {
  CertificationReport rep = run_certification(20240601);
  EXPECT_TRUE(rep.passed()) << rep.to_json().dump(1);
  EXPECT_EQ(rep.checks.size(), 11u);
  EXPECT_EQ(rep.to_table().rows.size(), rep.checks.size());
}

TEST(Certification, KernelCertificateDetectsCorruption) {
  Eigen::MatrixXd k = build_kernel(5).K;
  EXPECT_LE(kernel_certificate_error(k), 1e-8);
  k(0, 1) += 0.05;
  k(1, 0) += 0.05;
  EXPECT_GT(kernel_certificate_error(k), 1e-3);
}
