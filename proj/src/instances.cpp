#include "cocyc/instances.hpp"

#include <algorithm>
#include <stdexcept>

namespace cocyc {

std::vector<double> random_grid_parts(int k, int denominator, Rng& rng) {
  if (k < 1 || k > denominator) throw std::invalid_argument("need 1 <= k <= denominator");
  std::vector<int> cuts;
  std::vector<int> pool(denominator - 1);
  for (int i = 0; i < denominator - 1; ++i) pool[i] = i + 1;
  for (int t = 0; t < k - 1; ++t) {
    int s = t + static_cast<int>(rng.below(static_cast<std::uint64_t>(pool.size() - t)));
    std::swap(pool[t], pool[s]);
    cuts.push_back(pool[t]);
  }
  cuts.push_back(0);
  cuts.push_back(denominator);
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> parts;
  for (std::size_t i = 1; i < cuts.size(); ++i) parts.push_back(static_cast<double>(cuts[i] - cuts[i - 1]) / denominator);
  return parts;
}

std::vector<double> random_parts(int k, Rng& rng) {
  std::vector<double> parts(k);
  double total = 0.0;
  for (auto& p : parts) {
    p = 0.1 + rng.uniform01();
    total += p;
  }
  for (auto& p : parts) p /= total;
  return parts;
}

namespace {

std::vector<double> random_probability_vector(int q, Rng& rng, double zero_prob) {
  std::vector<double> p(q);
  double total = 0.0;
  for (auto& x : p) {
    x = rng.bernoulli(zero_prob) ? 0.0 : 0.05 + rng.uniform01();
    total += x;
  }
  if (total == 0.0) {
    p[rng.below(static_cast<std::uint64_t>(q))] = 1.0;
    total = 1.0;
  }
  for (auto& x : p) x /= total;
  return p;
}

}  // namespace

StepKernel random_w00(const GroupSpec& group, std::vector<double> parts, Rng& rng, double zero_prob) {
  const int k = static_cast<int>(parts.size());
  const int q = group.order();
  std::vector<double> v(static_cast<std::size_t>(k) * k * q);
  auto idx = [&](int i, int j, int g) { return (static_cast<std::size_t>(i) * k + j) * q + g; };
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) {
      std::vector<double> p = random_probability_vector(q, rng, zero_prob);
      if (i == j) {
        std::vector<double> s(q);
        for (int g = 0; g < q; ++g) s[g] = 0.5 * (p[g] + p[group.neg_index(g)]);
        p = s;
      }
      for (int g = 0; g < q; ++g) {
        v[idx(i, j, g)] = p[g];
        v[idx(j, i, group.neg_index(g))] = p[g];
      }
    }
  return StepKernel(group, std::move(parts), std::move(v));
}

ExactStepKernel random_w00_exact(const GroupSpec& group, std::vector<Rational> parts, Rng& rng) {
  const int k = static_cast<int>(parts.size());
  const int q = group.order();
  std::vector<Rational> v(static_cast<std::size_t>(k) * k * q);
  auto idx = [&](int i, int j, int g) { return (static_cast<std::size_t>(i) * k + j) * q + g; };
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) {
      std::vector<Rational> p(q);
      Rational total = 0;
      for (auto& x : p) {
        x = rng.bernoulli(0.2) ? 0 : static_cast<long>(1 + rng.below(5));
        total += x;
      }
      if (total == 0) {
        p[0] = 1;
        total = 1;
      }
      for (auto& x : p) x /= total;
      if (i == j) {
        std::vector<Rational> s(q);
        for (int g = 0; g < q; ++g) s[g] = (p[g] + p[group.neg_index(g)]) / 2;
        p = s;
      }
      for (int g = 0; g < q; ++g) {
        v[idx(i, j, g)] = p[g];
        v[idx(j, i, group.neg_index(g))] = p[g];
      }
    }
  return ExactStepKernel(group, std::move(parts), std::move(v));
}

StepTestFunction random_test_function(const GroupSpec& group, std::vector<double> parts, Rng& rng, double scale) {
  const int k = static_cast<int>(parts.size());
  const int q = group.order();
  std::vector<double> v(static_cast<std::size_t>(k) * k * q);
  for (auto& x : v) x = scale * (2.0 * rng.uniform01() - 1.0);
  StepTestFunction phi(StepTestFunction::Unchecked{}, group, std::move(parts), std::move(v));
  phi.mirror_from_canonical();
  return StepTestFunction(group, phi.parts(), phi.values());
}

SymmetricDistribution random_symmetric_distribution(const GroupSpec& group, Rng& rng) {
  const int q = group.order();
  std::vector<double> w(q);
  for (int g = 0; g < q; ++g) w[g] = 0.1 + rng.uniform01();
  std::vector<double> p(q);
  double total = 0.0;
  for (int g = 0; g < q; ++g) {
    p[g] = 0.5 * (w[g] + w[group.neg_index(g)]);
    total += p[g];
  }
  for (auto& x : p) x /= total;
  return SymmetricDistribution(group, std::move(p));
}

StepMatrix random_step_matrix(std::vector<double> parts, Rng& rng, double lo, double hi) {
  const std::size_t k = parts.size();
  std::vector<double> v(k * k);
  for (auto& x : v) x = lo + (hi - lo) * rng.uniform01();
  return StepMatrix(std::move(parts), std::move(v));
}

}  // namespace cocyc
