#include "cocyc/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cocyc {

Partition Partition::singletons(int k) {
  Partition p;
  for (int i = 0; i < k; ++i) p.blocks.push_back({i});
  return p;
}

Partition Partition::single_block(int k) {
  Partition p;
  p.blocks.emplace_back();
  for (int i = 0; i < k; ++i) p.blocks[0].push_back(i);
  return p;
}

void Partition::validate(int k) const {
  std::vector<int> hits(k, 0);
  for (const auto& b : blocks) {
    if (b.empty()) throw std::invalid_argument("partition has an empty block");
    for (int i : b) {
      if (i < 0 || i >= k) throw std::invalid_argument("partition index " + std::to_string(i) + " outside [0," + std::to_string(k) + ")");
      ++hits[i];
    }
  }
  for (int i = 0; i < k; ++i)
    if (hits[i] != 1) throw std::invalid_argument("partition does not cover index " + std::to_string(i) + " exactly once");
}

std::vector<int> Partition::block_map(int k) const {
  validate(k);
  std::vector<int> m(k);
  for (int b = 0; b < size(); ++b)
    for (int i : blocks[b]) m[i] = b;
  return m;
}

namespace {

// Block averages of a k x k slice with part measures mu.
std::vector<double> block_averages(const std::vector<double>& mu, const std::vector<double>& values, const Partition& p,
                                   const std::vector<int>& map) {
  const int k = static_cast<int>(mu.size());
  const int b = p.size();
  std::vector<double> mass(b, 0.0), sum(static_cast<std::size_t>(b) * b, 0.0);
  for (int i = 0; i < k; ++i) mass[map[i]] += mu[i];
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) sum[static_cast<std::size_t>(map[i]) * b + map[j]] += mu[i] * mu[j] * values[static_cast<std::size_t>(i) * k + j];
  for (int x = 0; x < b; ++x)
    for (int y = 0; y < b; ++y) sum[static_cast<std::size_t>(x) * b + y] /= mass[x] * mass[y];
  return sum;
}

Partition venn_refine(const Partition& p, const std::vector<int>& rows, const std::vector<int>& cols, int k) {
  std::vector<char> in_s(k, 0), in_t(k, 0);
  for (int i : rows) in_s[i] = 1;
  for (int j : cols) in_t[j] = 1;
  Partition out;
  for (const auto& block : p.blocks) {
    std::vector<int> cell[4];
    for (int i : block) cell[in_s[i] * 2 + in_t[i]].push_back(i);
    for (auto& c : cell)
      if (!c.empty()) out.blocks.push_back(std::move(c));
  }
  return out;
}

int max_rounds(double eps) { return static_cast<int>(std::ceil(1.0 / (eps * eps))); }

}  // namespace

StepMatrix step(const StepMatrix& w, const Partition& p) {
  const int k = w.k();
  std::vector<int> map = p.block_map(k);
  std::vector<double> avg = block_averages(w.parts, w.values, p, map);
  const int b = p.size();
  std::vector<double> v(w.values.size());
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) v[static_cast<std::size_t>(i) * k + j] = avg[static_cast<std::size_t>(map[i]) * b + map[j]];
  return StepMatrix(w.parts, std::move(v));
}

StepKernel step(const StepKernel& w, const Partition& p) {
  const int k = w.num_parts();
  std::vector<int> map = p.block_map(k);
  const int b = p.size();
  std::vector<double> v(w.values().size());
  for (int g = 0; g < w.order(); ++g) {
    std::vector<double> avg = block_averages(w.parts(), w.slice(g).values, p, map);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) v[w.offset(i, j, g)] = avg[static_cast<std::size_t>(map[i]) * b + map[j]];
  }
  StepKernel out(StepKernel::Unchecked{}, w.group(), w.parts(), std::move(v));
  // block averaging commutes with (i,j,g) -> (j,i,-g); only rounding differs
  if (w.is_symmetric()) out.mirror_from_canonical();
  return out;
}

MatrixCutNorm step_cut_norm(int n, const std::vector<double>& row_major, std::uint64_t seed) {
  StepMatrix m = StepMatrix::from_matrix(n, row_major);
  Rng rng(seed);
  CutWitness c = cut_norm_auto(m, rng);
  return {c.value, c.exact};
}

namespace {

FkResult fk_run(const std::vector<StepMatrix>& slices, double eps, std::uint64_t seed) {
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  const int k = slices.front().k();
  const int q = static_cast<int>(slices.size());
  FkResult out;
  out.eps = eps;
  for (const auto& s : slices) out.scale = std::max(out.scale, s.sup_norm());
  out.partition = Partition::single_block(k);
  if (out.scale == 0.0) {
    out.residual_exact = true;
    return out;
  }
  const double threshold = eps / q * out.scale;
  const double s2 = out.scale * out.scale;
  Rng rng(seed);

  auto energy = [&](const Partition& p) {
    double e = 0.0;
    for (const auto& s : slices) e += step(s, p).l2_norm_squared();
    return e / s2;
  };
  out.initial_energy = energy(out.partition);
  double prev = out.initial_energy;
  // total energy is at most q, each accepted round adds more than (eps/q)^2
  const int round_cap = q * q * q * max_rounds(eps);

  while (true) {
    CutWitness best;
    int best_g = -1;
    double residual = 0.0;
    bool exact = true;
    for (int g = 0; g < q; ++g) {
      CutWitness c = cut_norm_auto(slices[g] - step(slices[g], out.partition), rng);
      residual += c.value;
      exact = exact && c.exact;
      if (best_g < 0 || c.value > best.value) {
        best = c;
        best_g = g;
      }
    }
    if (best.value <= threshold) {
      out.residual = residual;
      out.residual_exact = exact;
      return out;
    }
    if (static_cast<int>(out.trace.size()) >= round_cap) throw std::logic_error("regularity did not terminate within the energy bound");
    out.partition = venn_refine(out.partition, best.rows, best.cols, k);
    FkRound r;
    r.slice = best_g;
    r.rows = best.rows;
    r.cols = best.cols;
    r.violation = best.value / out.scale;
    r.energy = energy(out.partition);
    r.parts = out.partition.size();
    const double need = (eps / q) * (eps / q);
    if (r.energy - prev < need - 1e-12)
      throw std::logic_error("energy increment " + std::to_string(r.energy - prev) + " below " + std::to_string(need));
    prev = r.energy;
    out.trace.push_back(std::move(r));
  }
}

}  // namespace

FkResult fk_decompose(const StepMatrix& w, double eps, std::uint64_t seed) { return fk_run({w}, eps, seed); }

FkResult fk_decompose(const StepKernel& w, double eps, std::uint64_t seed) {
  std::vector<StepMatrix> slices;
  for (int g = 0; g < w.order(); ++g) slices.push_back(w.slice(g));
  return fk_run(slices, eps, seed);
}

FactorTwo factor_two_check(const StepMatrix& w1, const StepMatrix& w2, const Partition& p) {
  if (w1.parts != w2.parts) throw std::invalid_argument("step functions must share a partition");
  StepMatrix s2 = step(w2, p);
  for (std::size_t t = 0; t < s2.values.size(); ++t)
    if (std::abs(s2.values[t] - w2.values[t]) > 1e-12) throw std::invalid_argument("W2 is not P-measurable");
  FactorTwo out;
  out.lhs = cut_norm_exact(w1 - step(w1, p)).value;
  out.rhs = 2.0 * cut_norm_exact(w1 - w2).value;
  out.holds = out.lhs <= out.rhs + 1e-12;
  return out;
}

}  // namespace cocyc
