#include "cocyc/lab.hpp"

#include "cocyc/cochain.hpp"
#include "cocyc/graphon.hpp"
#include "cocyc/homology.hpp"
#include "cocyc/instances.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cocyc {

// ---------------------------------------------------------------------------
// tables

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("table row has the wrong width");
  rows.push_back(std::move(row));
}

namespace {

std::string cell_text(const Cell& c) {
  if (auto i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (auto d = std::get_if<double>(&c)) return format_double(*d);
  return std::get<std::string>(c);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string Table::to_csv() const {
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) out += (c ? "," : "") + csv_escape(columns[c]);
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + csv_escape(cell_text(row[c]));
    out += "\n";
  }
  return out;
}

Json Table::to_json() const {
  Json arr = Json::array();
  for (const auto& row : rows) {
    Json obj = Json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (auto i = std::get_if<std::int64_t>(&row[c])) obj[columns[c]] = *i;
      else if (auto d = std::get_if<double>(&row[c])) obj[columns[c]] = json_number(*d);
      else obj[columns[c]] = std::get<std::string>(row[c]);
    }
    arr.push_back(obj);
  }
  return arr;
}

// ---------------------------------------------------------------------------
// configuration and sampling

Model parse_model(const std::string& name) {
  if (name == "hypertree") return Model::Hypertree;
  if (name == "one-out") return Model::OneOut;
  if (name == "lm") return Model::LinialMeshulam;
  if (name == "full") return Model::Full;
  if (name == "faceless") return Model::Faceless;
  throw std::invalid_argument("unknown model '" + name + "' (hypertree, one-out, lm, full, faceless)");
}

std::string model_name(Model m) {
  switch (m) {
    case Model::Hypertree: return "hypertree";
    case Model::OneOut: return "one-out";
    case Model::LinialMeshulam: return "lm";
    case Model::Full: return "full";
    case Model::Faceless: return "faceless";
  }
  return "?";
}

void ExperimentConfig::validate() const {
  if (ns.empty()) throw std::invalid_argument("no values of n given");
  for (int n : ns) {
    if (n < 3) throw std::invalid_argument("n must be >= 3");
    if (model == Model::Hypertree && n > kMaxKernelVertices)
      throw std::invalid_argument("hypertree sampling supports n <= " + std::to_string(kMaxKernelVertices));
  }
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (primes.empty()) throw std::invalid_argument("no primes given");
  for (int p : primes)
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  if (layers < 1) throw std::invalid_argument("layers must be >= 1");
}

TwoComplex sample_complex(Model model, int n, double c, const ProjectionKernel* kernel, Rng& rng) {
  switch (model) {
    case Model::Hypertree:
      if (!kernel || kernel->n != n) throw std::invalid_argument("hypertree sampling needs the kernel for this n");
      return sample_hypertree(*kernel, rng);
    case Model::OneOut: return sample_one_out(n, rng);
    case Model::LinialMeshulam: return sample_linial_meshulam(n, c, rng);
    case Model::Full: return TwoComplex::full(n);
    case Model::Faceless: return TwoComplex::faceless(n);
  }
  throw std::logic_error("unreachable");
}

int count_trend_violations(const std::vector<double>& v, const std::vector<double>& se) {
  int bad = 0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    if (v[i + 1] > v[i] + 2.0 * std::sqrt(se[i] * se[i] + se[i + 1] * se[i + 1])) ++bad;
  return bad;
}

namespace {

std::uint64_t stream_for(std::uint64_t seed, int n) { return replica_seed(seed, static_cast<std::uint64_t>(n)); }

std::optional<ProjectionKernel> kernel_if_needed(Model m, int n) {
  if (m == Model::Hypertree) return build_kernel(n);
  return std::nullopt;
}

double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  if (v.size() == 1) return v[0];
  double pos = q * static_cast<double>(v.size() - 1);
  std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

double sample_sd(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  // shifted by v[0] so a constant sample gives exactly 0
  double mean = 0.0;
  for (double x : v) mean += x - v[0];
  mean /= static_cast<double>(v.size());
  double s = 0.0;
  for (double x : v) s += (x - v[0] - mean) * (x - v[0] - mean);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

double bootstrap_median_se(const std::vector<double>& v, std::uint64_t seed, int resamples = 400) {
  Rng rng(seed);
  std::vector<double> meds, draw(v.size());
  meds.reserve(resamples);
  for (int b = 0; b < resamples; ++b) {
    for (auto& x : draw) x = v[rng.below(v.size())];
    meds.push_back(quantile(draw, 0.5));
  }
  return sample_sd(meds);
}

double log_rational(const Rational& q) {
  if (q <= 0) return -kInfinity;
  return log_bigint(q.get_num()) - log_bigint(q.get_den());
}

}  // namespace

// ---------------------------------------------------------------------------
// E|Z^1| trend

TrendResult run_ez1_trend(const ExperimentConfig& cfg) {
  cfg.validate();
  TrendResult res;
  res.table.columns = {"model", "n", "group", "samples", "sum_Z1", "mean_Z1", "eq_ezint_normalized_log",
                       "se_normalized_log", "rel_se_mean", "skewness", "full_skeleton_control"};
  std::string group_text = to_json(cfg.group).dump();
  const double log_g = std::log(static_cast<double>(cfg.group.order()));
  std::vector<double> values, errors;
  for (int n : cfg.ns) {
    auto kernel = kernel_if_needed(cfg.model, n);
    const ProjectionKernel* kp = kernel ? &*kernel : nullptr;
    std::vector<BigInt> counts = run_replicas(stream_for(cfg.seed, n), cfg.samples, [&](int, Rng& rng) {
      return count_Z1(sample_complex(cfg.model, n, cfg.c, kp, rng), cfg.group);
    });
    BigInt sum = 0;
    for (const auto& c : counts) sum += c;
    Rational mean(sum, BigInt(cfg.samples));
    mean.canonicalize();
    std::vector<double> ratio;
    for (const auto& c : counts) ratio.push_back(Rational(c / mean).get_d());
    const double sd = sample_sd(ratio);
    const double rel_se = sd / std::sqrt(static_cast<double>(cfg.samples));
    double skew = 0.0;
    if (sd > 0.0) {
      double m3 = 0.0, m2 = 0.0;
      for (double x : ratio) {
        m2 += (x - 1.0) * (x - 1.0);
        m3 += (x - 1.0) * (x - 1.0) * (x - 1.0);
      }
      m2 /= static_cast<double>(ratio.size());
      m3 /= static_cast<double>(ratio.size());
      skew = m3 / std::pow(m2, 1.5);
    }
    const double n2 = static_cast<double>(n) * n;
    const double normalized = log_rational(mean) / n2;
    const double se = rel_se / n2;
    values.push_back(normalized);
    errors.push_back(se);
    res.table.add({model_name(cfg.model), std::int64_t{n}, group_text, std::int64_t{cfg.samples}, sum.get_str(),
                   mean.get_d(), normalized, se, rel_se, skew, (n - 1) * log_g / n2});
  }
  res.violations = count_trend_violations(values, errors);
  res.passed = res.violations <= 1;
  return res;
}

// ---------------------------------------------------------------------------
// Betti numbers

TrendResult run_betti_trend(const ExperimentConfig& cfg) {
  cfg.validate();
  TrendResult res;
  res.table.columns = {"model", "n", "p", "samples", "median_dim_H1_over_n2", "q10_dim_H1_over_n2",
                       "q90_dim_H1_over_n2", "mean_dim_H1_over_n2", "se_median", "median_mg_over_n2"};
  std::vector<double> medians, errors;
  for (int n : cfg.ns) {
    auto kernel = kernel_if_needed(cfg.model, n);
    const ProjectionKernel* kp = kernel ? &*kernel : nullptr;
    struct Sample {
      std::vector<int> dims;
      int mg;
    };
    std::vector<Sample> samples = run_replicas(stream_for(cfg.seed, n), cfg.samples, [&](int, Rng& rng) {
      TwoComplex x = sample_complex(cfg.model, n, cfg.c, kp, rng);
      Sample s;
      for (int p : cfg.primes) s.dims.push_back(dim_H1_mod_p(x, p));
      s.mg = mg_H1(x);
      return s;
    });
    const double n2 = static_cast<double>(n) * n;
    std::vector<double> mg;
    for (const auto& s : samples) mg.push_back(s.mg / n2);
    for (std::size_t pi = 0; pi < cfg.primes.size(); ++pi) {
      std::vector<double> d;
      for (const auto& s : samples) d.push_back(s.dims[pi] / n2);
      const double med = quantile(d, 0.5);
      const double mean = std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(d.size());
      // bootstrap: the values are multiples of 1/n^2, so the normal
      // approximation for a median badly understates its spread
      const double se = bootstrap_median_se(d, replica_seed(stream_for(cfg.seed, n), 1000003u + pi));
      if (pi == 0) {
        medians.push_back(med);
        errors.push_back(se);
      }
      res.table.add({model_name(cfg.model), std::int64_t{n}, std::int64_t{cfg.primes[pi]}, std::int64_t{cfg.samples}, med,
                     quantile(d, 0.1), quantile(d, 0.9), mean, se, quantile(mg, 0.5)});
    }
  }
  res.violations = count_trend_violations(medians, errors);
  res.passed = res.violations <= 1;
  return res;
}

// ---------------------------------------------------------------------------
// layered counting audit

LayerAudit run_layer_audit(const ExperimentConfig& cfg) {
  cfg.validate();
  for (int n : cfg.ns)
    if (n > 8) throw std::invalid_argument("layer audit compares against exact determinants and needs n <= 8");
  LayerAudit out;
  out.samples.columns = {"n", "replica", "b", "layer", "log_prob", "log_prob_det", "eq_upperbf_bound",
                         "eq_upperbf_slack", "edge_log_identity_exact"};
  out.layers.columns = {"n", "layer", "count", "frequency", "neg_inf_count", "log_count_estimate", "eq_pbound",
                        "eq_gli_bound", "log_contribution"};
  const int k = cfg.layers;
  const double log_g = std::log(static_cast<double>(cfg.group.order()));
  const double eps = log_g / k;
  const SymmetricDistribution uniform = SymmetricDistribution::uniform(cfg.group);

  for (int n : cfg.ns) {
    const ProjectionKernel kernel = build_kernel(n);
    const double n2 = static_cast<double>(n) * n;
    struct Row {
      double b, log_p, log_p_det, bound;
      int layer;
      bool identity_ok, route_ok;
    };
    std::vector<Row> rows = run_replicas(stream_for(cfg.seed, n), cfg.samples, [&](int, Rng& rng) {
      Cochain f = sample_random_cochain(n, uniform, rng);
      Row r;
      r.b = b_functional(embed_graphon<double>(f));
      TwoComplex y = coboundary_triangles(f);
      Rational p = avoidance_probability_exact(y);
      double p_det = avoidance_probability_complement(kernel, y);
      r.route_ok = std::abs(p_det - p.get_d()) <= 1e-12 + 1e-8 * p.get_d();
      r.log_p = log_rational(p);
      r.log_p_det = p == 0 ? -kInfinity : std::log(p_det);
      r.bound = (n - 2) * std::log(static_cast<double>(n)) + n2 / 2.0 * (1.0 - 2.0 / n) * r.b;

      ExactLogSum lhs;
      for (int t : y.edge_degrees()) {
        if (t == 0) {
          lhs = ExactLogSum::negative_infinity();
          break;
        }
        lhs.add_term(1, ratio(t, n));
      }
      ExactLogSum rhs = b_functional_exact(embed_graphon<Rational>(f)).scaled(ratio(n * n, 2));
      r.identity_ok = lhs == rhs;

      if (r.b == -kInfinity) r.layer = k;
      else r.layer = std::min(k, static_cast<int>(std::floor(-r.b / eps)));
      return r;
    });

    std::vector<std::int64_t> count(k + 1, 0), neg_inf(k + 1, 0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Row& r = rows[i];
      // -inf on both sides is no violation; use the determinant route as the primary value
      double slack = r.log_p_det == -kInfinity ? kInfinity : r.bound - r.log_p_det;
      if (!(slack >= -1e-9)) ++out.bound_violations;
      if (r.log_p != -kInfinity && !(r.bound - r.log_p >= -1e-9)) ++out.bound_violations;
      if (!r.identity_ok) ++out.identity_failures;
      if (!r.route_ok) ++out.route_mismatches;
      ++count[r.layer];
      if (r.b == -kInfinity) ++neg_inf[r.layer];
      out.samples.add({std::int64_t{n}, static_cast<std::int64_t>(i), r.b, std::int64_t{r.layer}, r.log_p, r.log_p_det, r.bound,
                       slack, std::string(r.identity_ok ? "1" : "0")});
    }
    std::int64_t total = std::accumulate(count.begin(), count.end(), std::int64_t{0});
    if (total != cfg.samples) out.counts_consistent = false;
    const double log_all = static_cast<double>(num_edges(n)) * log_g;
    for (int i = 0; i <= k; ++i) {
      const double freq = static_cast<double>(count[i]) / static_cast<double>(total);
      const double log_count = count[i] == 0 ? -kInfinity : std::log(freq) + log_all;
      const double pbound = n2 * (1 - i) * eps / 2.0;
      const double gli = n2 * (i + 2) * eps / 2.0;
      out.layers.add({std::int64_t{n}, std::int64_t{i}, count[i], freq, neg_inf[i], log_count, pbound, gli,
                      count[i] == 0 ? -kInfinity : log_count + pbound});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// large deviation numerics

namespace {

const std::vector<GroupSpec>& small_groups() {
  static const std::vector<GroupSpec> groups = {GroupSpec({2}), GroupSpec({3}), GroupSpec({4}), GroupSpec({5}),
                                                GroupSpec({6}), GroupSpec({2, 2}), GroupSpec({2, 3})};
  return groups;
}

}  // namespace

bool LdpReport::passed() const {
  return gap_ratio >= 0.3 && gap_ratio <= 0.7 && max_dual_gap <= 1e-10 && max_weak_duality_excess <= 1e-12 &&
         max_gibbs <= 1e-12 && std::abs(gibbs_at_uniform) <= 1e-12;
}

Json LdpReport::to_json() const {
  return {{"mgf", mgf.to_json()},
          {"mgf_gap_ratio_16_32", json_number(gap_ratio)},
          {"mgf_gap_ratio_range", {0.3, 0.7}},
          {"dual_instances", dual_instances},
          {"max_dual_gap", json_number(max_dual_gap)},
          {"dual_gap_tolerance", 1e-10},
          {"weak_duality_pairs", weak_pairs},
          {"max_weak_duality_excess", json_number(max_weak_duality_excess)},
          {"weak_duality_tolerance", 1e-12},
          {"gibbs_instances", gibbs_instances},
          {"max_gibbs_b_plus_H", json_number(max_gibbs)},
          {"gibbs_at_uniform", json_number(gibbs_at_uniform)},
          {"gibbs_tolerance", 1e-12},
          {"passed", passed()}};
}

LdpReport run_ldp_numerics(const GroupSpec& group, std::uint64_t seed) {
  LdpReport rep;
  Rng rng(replica_seed(seed, 0));

  // phi on parts that are multiples of 1/16, so the 16- and 32-grids refine it
  // and the finite-n gap is exactly the diagonal strip term
  StepTestFunction phi = random_test_function(group, random_grid_parts(4, 16, rng), rng);
  SymmetricDistribution nu = random_symmetric_distribution(group, rng);
  rep.mgf.columns = {"n", "finite", "limit", "gap"};
  double gap16 = 0, gap32 = 0;
  for (int n : {4, 8, 16, 32}) {
    MgfValues m = mgf_finite_n(phi, n, nu);
    const double gap = m.limit - m.finite;
    if (n == 16) gap16 = gap;
    if (n == 32) gap32 = gap;
    rep.mgf.add({std::int64_t{n}, m.finite, m.limit, gap});
  }
  rep.gap_ratio = gap32 / gap16;

  Rng dual_rng(replica_seed(seed, 1));
  for (int t = 0; t < rep.dual_instances; ++t) {
    const GroupSpec& g = small_groups()[dual_rng.below(small_groups().size())];
    int k = 1 + static_cast<int>(dual_rng.below(6));
    StepKernel w = random_w00(g, random_parts(k, dual_rng), dual_rng);
    SymmetricDistribution mu = random_symmetric_distribution(g, dual_rng);
    DualMaximum d = dual_maximize(w, mu);
    rep.max_dual_gap = std::max(rep.max_dual_gap, std::abs(d.value - rate_function(w, mu)));
  }

  Rng weak_rng(replica_seed(seed, 2));
  rep.max_weak_duality_excess = -kInfinity;
  for (int t = 0; t < rep.weak_pairs; ++t) {
    const GroupSpec& g = small_groups()[weak_rng.below(small_groups().size())];
    StepKernel w = random_w00(g, random_parts(1 + static_cast<int>(weak_rng.below(6)), weak_rng), weak_rng, 0.3);
    StepTestFunction f = random_test_function(g, random_parts(1 + static_cast<int>(weak_rng.below(6)), weak_rng), weak_rng, 2.0);
    SymmetricDistribution mu = random_symmetric_distribution(g, weak_rng);
    rep.max_weak_duality_excess = std::max(rep.max_weak_duality_excess, dual_rate(f, w, mu) - rate_function(w, mu));
  }

  Rng gibbs_rng(replica_seed(seed, 3));
  rep.max_gibbs = -kInfinity;
  for (int t = 0; t < rep.gibbs_instances; ++t) {
    const GroupSpec& g = small_groups()[gibbs_rng.below(small_groups().size())];
    int k = 1 + static_cast<int>(gibbs_rng.below(6));
    StepKernel w = random_w00(g, random_parts(k, gibbs_rng), gibbs_rng, t % 2 ? 0.3 : 0.0);
    rep.max_gibbs = std::max(rep.max_gibbs, b_functional(w) + entropy_h(w));
  }
  StepKernel u = StepKernel::uniform(group);
  rep.gibbs_at_uniform = b_functional(u) + entropy_h(u);
  return rep;
}

// ---------------------------------------------------------------------------
// certification

bool CertificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

Json CertificationReport::to_json() const {
  Json arr = Json::array();
  for (const auto& c : checks)
    arr.push_back({{"name", c.name},
                   {"passed", c.passed},
                   {"value", json_number(c.value)},
                   {"tolerance", json_number(c.tolerance)},
                   {"detail", c.detail}});
  return {{"passed", passed()}, {"checks", arr}};
}

Table CertificationReport::to_table() const {
  Table t;
  t.columns = {"check", "passed", "value", "tolerance", "detail"};
  for (const auto& c : checks) t.add({c.name, std::string(c.passed ? "1" : "0"), c.value, c.tolerance, c.detail});
  return t;
}

double kernel_certificate_error(const Eigen::MatrixXd& K) {
  const int n = 5;
  std::map<std::vector<Triangle>, double> law;
  for (const auto& h : enumerate_hypertrees(n)) law[h.complex.triangles()] = BigInt(h.h1_order * h.h1_order).get_d() / 125.0;
  const std::vector<Triangle> ground = all_triangles(n);
  const int t = static_cast<int>(ground.size());
  const int r = static_cast<int>(binomial(n - 1, 2));
  double worst = 0.0;
  std::vector<int> pick(r);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    std::vector<Triangle> faces;
    for (int j : pick) faces.push_back(ground[j]);
    auto it = law.find(faces);
    double target = it == law.end() ? 0.0 : it->second;
    worst = std::max(worst, std::abs(kernel_subset_probability(K, pick) - target));
    int i = r - 1;
    while (i >= 0 && pick[i] == t - r + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < r; ++j) pick[j] = pick[j - 1] + 1;
  }
  return worst;
}

namespace {

Check kalai_check(int n) {
  BigInt sum = 0;
  auto trees = enumerate_hypertrees(n);
  for (const auto& h : trees) sum += h.h1_order * h.h1_order;
  BigInt target;
  mpz_ui_pow_ui(target.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(binomial(n - 2, 2)));
  Check c{"kalai_n" + std::to_string(n), sum == target, sum.get_d(), 0.0,
          std::to_string(trees.size()) + " hypertrees, sum |H1|^2 = " + sum.get_str() + ", n^C(n-2,2) = " + target.get_str()};
  return c;
}

TwoComplex rp2_six() {
  return TwoComplex(6, {{1, 2, 4}, {1, 2, 6}, {1, 3, 5}, {1, 3, 6}, {1, 4, 5}, {2, 3, 4}, {2, 3, 5}, {2, 5, 6}, {3, 4, 6}, {4, 5, 6}});
}

Check chi_square_check(std::uint64_t seed) {
  const int n = 5, draws = 10000;
  std::map<std::vector<Triangle>, int> cell;
  std::vector<double> prob;
  for (const auto& h : enumerate_hypertrees(n)) {
    cell[h.complex.triangles()] = static_cast<int>(prob.size());
    prob.push_back(BigInt(h.h1_order * h.h1_order).get_d() / 125.0);
  }
  ProjectionKernel kernel = build_kernel(n);
  std::vector<int> observed(prob.size(), 0);
  int outside = 0;
  Rng rng(seed);
  for (int s = 0; s < draws; ++s) {
    auto it = cell.find(sample_hypertree(kernel, rng).triangles());
    if (it == cell.end()) ++outside;
    else ++observed[it->second];
  }
  double stat = 0.0;
  for (std::size_t i = 0; i < prob.size(); ++i) {
    double e = prob[i] * draws;
    stat += (observed[i] - e) * (observed[i] - e) / e;
  }
  boost::math::chi_squared_distribution<double> dist(static_cast<double>(prob.size() - 1));
  double p = boost::math::cdf(boost::math::complement(dist, stat));
  return Check{"dpp_chisquare_n5", outside == 0 && p > 0.01, p, 0.01,
               "chi2 = " + format_double(stat) + " over " + std::to_string(prob.size()) + " cells, " + std::to_string(outside) +
                   " samples outside the support"};
}

Check convolution_check(std::uint64_t seed) {
  Rng rng(seed);
  const std::vector<GroupSpec> groups = {GroupSpec({2}), GroupSpec({3}), GroupSpec({4}), GroupSpec({2, 2})};
  int failures = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + static_cast<int>(rng.below(11));
    const GroupSpec& g = groups[rng.below(groups.size())];
    Cochain f = sample_random_cochain(n, SymmetricDistribution::uniform(g), rng);
    ExactStepKernel w = embed_graphon<Rational>(f);
    ExactStepKernel c = convolve(w, w);
    TriangleStat p = path_counts(f);
    bool ok = c.num_parts() == n;
    for (int u = 1; u <= n && ok; ++u)
      for (int v = 1; v <= n && ok; ++v)
        for (int x = 0; x < g.order() && ok; ++x) {
          // diagonal blocks: f(u,v) + f(v,u) = 0 for each of the n-1 middle vertices
          Rational want = u == v ? ratio(x == 0 ? n - 1 : 0, n) : ratio(p.at(u, v, x), n);
          ok = c.at(u - 1, v - 1, x) == want;
        }
    if (!ok) ++failures;
  }
  return Check{"convolution_path_count_oracle", failures == 0, static_cast<double>(failures), 0.0,
               "100 random cochains, n <= 12, |G| <= 4, exact rationals"};
}

Check snf_metamorphic_check(std::uint64_t seed) {
  Rng rng(seed);
  int failures = 0;
  for (int t = 0; t < 30; ++t) {
    TwoComplex x = t == 0 ? rp2_six() : sample_linial_meshulam(6 + static_cast<int>(rng.below(2)), 3.0, rng);
    IntMatrix d = boundary_d2(x.n(), x.triangles());
    std::vector<BigInt> base = smith_normal_form(d);
    std::vector<int> rp(d.rows), cp(d.cols);
    std::iota(rp.begin(), rp.end(), 0);
    std::iota(cp.begin(), cp.end(), 0);
    for (int i = d.rows - 1; i > 0; --i) std::swap(rp[i], rp[rng.below(static_cast<std::uint64_t>(i) + 1)]);
    for (int i = d.cols - 1; i > 0; --i) std::swap(cp[i], cp[rng.below(static_cast<std::uint64_t>(i) + 1)]);
    IntMatrix m(d.rows, d.cols);
    for (int i = 0; i < d.rows; ++i) {
      int rs = rng.bernoulli(0.5) ? -1 : 1;
      for (int j = 0; j < d.cols; ++j) m.at(i, j) = rs * d.at(rp[i], cp[j]);
    }
    for (int j = 0; j < d.cols; ++j)
      if (rng.bernoulli(0.5))
        for (int i = 0; i < d.rows; ++i) m.at(i, j) = -m.at(i, j);
    if (smith_normal_form(m) != base || smith_normal_form(m.transposed()) != base) ++failures;
  }
  return Check{"snf_metamorphic", failures == 0, static_cast<double>(failures), 0.0,
               "30 complexes under row/column permutations, sign flips and transposition"};
}

Check edge_log_identity_check(std::uint64_t seed) {
  Rng rng(seed);
  const std::vector<GroupSpec> groups = {GroupSpec({2}), GroupSpec({3}), GroupSpec({4}), GroupSpec({2, 2})};
  int failures = 0, finite = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = 3 + static_cast<int>(rng.below(8));
    const GroupSpec& g = groups[rng.below(groups.size())];
    Cochain f = sample_random_cochain(n, SymmetricDistribution::uniform(g), rng);
    if (t % 2 == 0) {
      // a coboundary with one or two perturbed edges keeps most t_Y positive
      std::vector<int> pot(n + 1);
      for (int v = 1; v <= n; ++v) pot[v] = static_cast<int>(rng.below(static_cast<std::uint64_t>(g.order())));
      std::vector<int> labels(num_edges(n));
      for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v) labels[edge_index(n, u, v)] = g.sub_index(pot[v], pot[u]);
      int bumps = static_cast<int>(rng.below(3));
      for (int b = 0; b < bumps; ++b) {
        int e = static_cast<int>(rng.below(static_cast<std::uint64_t>(labels.size())));
        labels[e] = g.add_index(labels[e], 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(g.order() - 1))));
      }
      f = Cochain(n, g, labels);
    }
    TwoComplex y = coboundary_triangles(f);
    ExactLogSum lhs;
    for (int d : y.edge_degrees()) {
      if (d == 0) {
        lhs = ExactLogSum::negative_infinity();
        break;
      }
      lhs.add_term(1, ratio(d, n));
    }
    ExactLogSum rhs = b_functional_exact(embed_graphon<Rational>(f)).scaled(ratio(n * n, 2));
    if (!lhs.is_negative_infinity()) ++finite;
    if (!(lhs == rhs)) ++failures;
  }
  return Check{"edge_log_identity", failures == 0, static_cast<double>(failures), 0.0,
               "100 cochains, n <= 10, " + std::to_string(finite) + " with finite value, exact log arithmetic"};
}

}  // namespace

CertificationReport run_certification(std::uint64_t seed) {
  CertificationReport rep;
  for (int n : {4, 5, 6}) rep.checks.push_back(kalai_check(n));

  {
    HomologyReport h = homology_report(rp2_six(), 2);
    bool ok = h.elementary_divisors == std::vector<BigInt>{BigInt(2)} && h.dim_H1_q == 0 && *h.dim_H1_p == 1 &&
              dim_H1_mod_p(rp2_six(), 3) == 0 && h.mg == 1;
    bool listed = false;
    for (const auto& t : enumerate_hypertrees(6))
      if (t.complex == rp2_six()) listed = t.h1_order == 2;
    rep.checks.push_back(Check{"rp2_six_vertex", ok && listed, h.torsion_order.get_d(), 0.0,
                               "H1 = Z/2, dim H1(F_2) = 1, dim H1(F_3) = 0, listed among n=6 hypertrees"});
  }

  ProjectionKernel kernel = build_kernel(5);
  {
    double err = kernel_certificate_error(kernel.K);
    rep.checks.push_back(Check{"kernel_certificate_n5", err <= 1e-8, err, 1e-8, "max |det(K_S) - |H1(S)|^2/125| over 210 subsets"});
    Eigen::MatrixXd bad = kernel.K;
    bad(0, 1) += 0.05;
    double bad_err = kernel_certificate_error(bad);
    rep.checks.push_back(Check{"kernel_certificate_detects_corruption", bad_err > 1e-8, bad_err, 1e-8,
                               "one off-diagonal entry shifted by 0.05 must fail the certificate"});
  }
  {
    double proj = (kernel.K * kernel.K - kernel.K).cwiseAbs().maxCoeff();
    double trace_err = std::abs(kernel.K.trace() - 6.0);
    rep.checks.push_back(Check{"kernel_projection_n5", proj <= 1e-10 && trace_err <= 1e-8, std::max(proj, trace_err), 1e-10,
                               "K^2 = K and trace K = C(n-1,2)"});
  }
  rep.checks.push_back(chi_square_check(replica_seed(seed, 10)));
  rep.checks.push_back(convolution_check(replica_seed(seed, 11)));
  rep.checks.push_back(snf_metamorphic_check(replica_seed(seed, 12)));
  rep.checks.push_back(edge_log_identity_check(replica_seed(seed, 13)));
  return rep;
}

}  // namespace cocyc
