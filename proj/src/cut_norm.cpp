#include "cocyc/cut_norm.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cocyc {

namespace {

// A[i][j] = mu_i mu_j W[i][j]
std::vector<double> weighted(const StepMatrix& w) {
  int k = w.k();
  std::vector<double> a(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) a[static_cast<std::size_t>(i) * k + j] = w.parts[i] * w.parts[j] * w.at(i, j);
  return a;
}

// Best column set for fixed column sums: returns (value, signed, cols).
struct ColumnChoice {
  double value;
  double signed_value;
  bool positive;
};

ColumnChoice best_columns(const std::vector<double>& colsum) {
  double pos = 0.0, neg = 0.0;
  for (double c : colsum) {
    if (c > 0) pos += c;
    else neg += c;
  }
  if (pos >= -neg) return {pos, pos, true};
  return {-neg, neg, false};
}

std::vector<int> columns_with_sign(const std::vector<double>& colsum, bool positive) {
  std::vector<int> cols;
  for (std::size_t j = 0; j < colsum.size(); ++j)
    if (positive ? colsum[j] > 0 : colsum[j] < 0) cols.push_back(static_cast<int>(j));
  return cols;
}

}  // namespace

double box_integral(const StepMatrix& w, const std::vector<int>& rows, const std::vector<int>& cols) {
  double s = 0.0;
  for (int i : rows)
    for (int j : cols) s += w.parts[i] * w.parts[j] * w.at(i, j);
  return s;
}

CutWitness cut_norm_exact(const StepMatrix& w) {
  const int k = w.k();
  if (k > kExactCutNormMaxParts)
    throw std::length_error("exact cut norm supports at most " + std::to_string(kExactCutNormMaxParts) + " parts (got " +
                            std::to_string(k) + "); use the heuristic mode");
  const std::vector<double> a = weighted(w);
  std::vector<double> colsum(k, 0.0);
  std::uint32_t mask = 0;
  std::uint32_t best_mask = 0;
  ColumnChoice best{0.0, 0.0, true};

  auto recompute = [&]() {
    std::fill(colsum.begin(), colsum.end(), 0.0);
    for (int i = 0; i < k; ++i)
      if (mask >> i & 1u)
        for (int j = 0; j < k; ++j) colsum[j] += a[static_cast<std::size_t>(i) * k + j];
  };

  const std::uint64_t total = std::uint64_t{1} << k;
  for (std::uint64_t step = 1; step < total; ++step) {
    int bit = std::countr_zero(step);
    mask ^= 1u << bit;
    if ((step & 0xfffu) == 0) {
      recompute();
    } else {
      const double* row = &a[static_cast<std::size_t>(bit) * k];
      if (mask >> bit & 1u)
        for (int j = 0; j < k; ++j) colsum[j] += row[j];
      else
        for (int j = 0; j < k; ++j) colsum[j] -= row[j];
    }
    ColumnChoice c = best_columns(colsum);
    if (c.value > best.value) {
      best = c;
      best_mask = mask;
    }
  }

  CutWitness out;
  out.exact = true;
  for (int i = 0; i < k; ++i)
    if (best_mask >> i & 1u) out.rows.push_back(i);
  if (!out.rows.empty()) {
    std::vector<double> cs(k, 0.0);
    for (int i : out.rows)
      for (int j = 0; j < k; ++j) cs[j] += a[static_cast<std::size_t>(i) * k + j];
    out.cols = columns_with_sign(cs, best.positive);
  }
  out.signed_value = box_integral(w, out.rows, out.cols);
  out.value = std::abs(out.signed_value);
  return out;
}

CutWitness cut_norm_heuristic(const StepMatrix& w, Rng& rng, int restarts) {
  const int k = w.k();
  const std::vector<double> a = weighted(w);
  CutWitness best;
  best.exact = false;

  for (int r = 0; r < restarts; ++r) {
    std::vector<char> start(k);
    for (int i = 0; i < k; ++i) start[i] = rng.bernoulli(0.5) ? 1 : 0;
    for (int sign : {+1, -1}) {
      std::vector<char> in_rows = start;
      double value = -1.0;
      std::vector<int> rows, cols;
      for (int iter = 0; iter < 100; ++iter) {
        std::vector<double> colsum(k, 0.0);
        for (int i = 0; i < k; ++i)
          if (in_rows[i])
            for (int j = 0; j < k; ++j) colsum[j] += a[static_cast<std::size_t>(i) * k + j];
        std::vector<int> t = columns_with_sign(colsum, sign > 0);
        std::vector<double> rowsum(k, 0.0);
        for (int i = 0; i < k; ++i)
          for (int j : t) rowsum[i] += a[static_cast<std::size_t>(i) * k + j];
        std::vector<int> s;
        double v = 0.0;
        for (int i = 0; i < k; ++i)
          if (sign * rowsum[i] > 0) {
            s.push_back(i);
            v += sign * rowsum[i];
          }
        if (v <= value) break;
        value = v;
        rows = s;
        cols = t;
        std::fill(in_rows.begin(), in_rows.end(), 0);
        for (int i : s) in_rows[i] = 1;
      }
      if (value > best.value) {
        best.value = value;
        best.rows = rows;
        best.cols = cols;
      }
    }
  }
  best.signed_value = box_integral(w, best.rows, best.cols);
  best.value = std::abs(best.signed_value);
  return best;
}

CutWitness cut_norm_auto(const StepMatrix& w, Rng& rng, int restarts) {
  if (w.k() <= kExactCutNormMaxParts) return cut_norm_exact(w);
  return cut_norm_heuristic(w, rng, restarts);
}

}  // namespace cocyc
