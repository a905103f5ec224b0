#pragma once

#include "cocyc/complex.hpp"
#include "cocyc/group.hpp"
#include "cocyc/io.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace cocyc {

using Cell = std::variant<std::int64_t, double, std::string>;

/// Rectangular result table; CSV with a header row or a JSON array of rows.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
  std::string to_csv() const;
  Json to_json() const;
};

enum class Model { Hypertree, OneOut, LinialMeshulam, Full, Faceless };

Model parse_model(const std::string& name);
std::string model_name(Model m);

struct ExperimentConfig {
  Model model = Model::OneOut;
  std::vector<int> ns;
  GroupSpec group{{2}};
  std::vector<int> primes{2};
  int samples = 200;
  double c = 2.0;  // Linial-Meshulam face density c/n
  int layers = 10;
  std::uint64_t seed = 0;

  void validate() const;
};

/// One complex drawn from the configured model (kernel needed for hypertrees).
TwoComplex sample_complex(Model model, int n, double c, const ProjectionKernel* kernel, Rng& rng);

/// Passes `fn(replica, rng)` for every replica, each with its own stream from
/// replica_seed(seed, replica); results come back in replica order.
template <class Fn>
auto run_replicas(std::uint64_t seed, int count, Fn fn) {
  using R = decltype(fn(0, std::declval<Rng&>()));
  std::vector<R> out;
  out.reserve(count);
  for (int r = 0; r < count; ++r) {
    Rng rng(replica_seed(seed, static_cast<std::uint64_t>(r)));
    out.push_back(fn(r, rng));
  }
  return out;
}

/// Trend rule shared by the desk-scale checks: a step v[i] -> v[i+1] is a
/// violation when v[i+1] > v[i] + 2 sqrt(se[i]^2 + se[i+1]^2).
int count_trend_violations(const std::vector<double>& v, const std::vector<double>& se);

struct TrendResult {
  Table table;
  int violations = 0;
  bool passed = false;  // at most one 2-SE violation
};

/// Monte Carlo mean of the exact |Z^1(X_n, G)| per n, its normalized log
/// log(mean)/n^2 with delta-method standard error, and sample skewness.
TrendResult run_ez1_trend(const ExperimentConfig& cfg);

/// Per n and prime: quantiles of dim H_1(X, F_p)/n^2 and of mg/n^2.
/// The trend check uses the median of the first prime.
TrendResult run_betti_trend(const ExperimentConfig& cfg);

struct LayerAudit {
  Table layers;   // per (n, layer)
  Table samples;  // per sampled cochain
  int bound_violations = 0;
  int identity_failures = 0;
  int route_mismatches = 0;  // determinant vs Cauchy-Binet
  bool counts_consistent = true;
  bool passed() const { return bound_violations == 0 && identity_failures == 0 && route_mismatches == 0 && counts_consistent; }
};

/// Layered counting audit over uniform random cochains (n <= 8).
LayerAudit run_layer_audit(const ExperimentConfig& cfg);

struct LdpReport {
  Table mgf;             // n, finite, limit, gap
  double gap_ratio = 0;  // gap(32)/gap(16)
  double max_dual_gap = 0;            // |dual(phi*) - I|
  double max_weak_duality_excess = 0; // max dual(phi, W) - I(W)
  double max_gibbs = 0;               // max b + H
  double gibbs_at_uniform = 0;
  int dual_instances = 100;
  int weak_pairs = 1000;
  int gibbs_instances = 1000;
  bool passed() const;
  Json to_json() const;
};

/// Moment generating function gaps (over `group`), then dual maximizer,
/// weak duality and Gibbs audits over random groups of order <= 6.
LdpReport run_ldp_numerics(const GroupSpec& group, std::uint64_t seed);

struct Check {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct CertificationReport {
  std::vector<Check> checks;
  bool passed() const;
  Json to_json() const;
  Table to_table() const;
};

/// Kernel certificate: max over 6-subsets S at n = 5 of
/// |det(K_S) - |H_1(S)|^2 / 125|, the target being 0 when S is not a hypertree.
double kernel_certificate_error(const Eigen::MatrixXd& K);

CertificationReport run_certification(std::uint64_t seed);

}  // namespace cocyc
