#include "cocyc/graphon.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cocyc {

namespace {

void require_same_group(const GroupSpec& a, const GroupSpec& b) {
  if (!(a == b)) throw std::invalid_argument("objects are over different groups");
}

// log(sum_g nu(g) exp(2 x_g)), computed stably
double log_mgf_cell(const StepTestFunction& phi, int i, int j, const SymmetricDistribution& nu) {
  const int q = phi.order();
  double m = -kInfinity;
  for (int g = 0; g < q; ++g) m = std::max(m, 2.0 * phi.at(i, j, g));
  double s = 0.0;
  for (int g = 0; g < q; ++g) s += nu.prob(g) * std::exp(2.0 * phi.at(i, j, g) - m);
  return m + std::log(s);
}

double wasserstein1(std::vector<std::pair<double, double>> a, std::vector<std::pair<double, double>> b) {
  // (value, weight) pairs; both weight vectors sum to the same total
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<double> points;
  for (auto& p : a) points.push_back(p.first);
  for (auto& p : b) points.push_back(p.first);
  std::sort(points.begin(), points.end());
  double fa = 0.0, fb = 0.0, total = 0.0;
  std::size_t ia = 0, ib = 0;
  for (std::size_t t = 0; t + 1 < points.size(); ++t) {
    while (ia < a.size() && a[ia].first <= points[t]) fa += a[ia++].second;
    while (ib < b.size() && b[ib].first <= points[t]) fb += b[ib++].second;
    total += std::abs(fa - fb) * (points[t + 1] - points[t]);
  }
  return total;
}

std::vector<std::pair<double, double>> degree_distribution(const StepMatrix& w, bool rows) {
  std::vector<std::pair<double, double>> out;
  for (int i = 0; i < w.k(); ++i) {
    double d = 0.0;
    for (int j = 0; j < w.k(); ++j) d += w.parts[j] * (rows ? w.at(i, j) : w.at(j, i));
    out.emplace_back(d, w.parts[i]);
  }
  return out;
}

double cut_norm_upper(const StepKernel& diff) {
  if (diff.num_parts() <= kExactCutNormMaxParts) return cut_norm(diff);
  // the L1 norm dominates the cut norm
  double s = 0.0;
  for (int g = 0; g < diff.order(); ++g) s += diff.slice(g).l1_norm();
  return s;
}

StepKernel permuted(const StepKernel& w, const std::vector<double>& parts, const std::vector<int>& sigma) {
  const int k = w.num_parts();
  const int q = w.order();
  std::vector<double> v(static_cast<std::size_t>(k) * k * q);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int g = 0; g < q; ++g) v[(static_cast<std::size_t>(i) * k + j) * q + g] = w.at(sigma[i], sigma[j], g);
  return StepKernel(StepKernel::Unchecked{}, w.group(), parts, std::move(v));
}

}  // namespace

double cut_norm(const StepMatrix& w) { return cut_norm_exact(w).value; }

double cut_norm(const StepKernel& w) {
  double s = 0.0;
  for (int g = 0; g < w.order(); ++g) s += cut_norm_exact(w.slice(g)).value;
  return s;
}

double cut_norm_lower_bound(const StepKernel& w, Rng& rng, int restarts) {
  double s = 0.0;
  for (int g = 0; g < w.order(); ++g) s += cut_norm_heuristic(w.slice(g), rng, restarts).value;
  return s;
}

CutDistanceBounds cut_distance_bounds(const StepKernel& v, const StepKernel& w, std::uint64_t seed) {
  require_same_group(v.group(), w.group());
  CutDistanceBounds out;

  {
    auto [a, b] = refine_common(v, w);
    out.upper = cut_norm_upper(a - b);
  }

  const int k = v.num_parts();
  if (w.num_parts() == k) {
    // sigma[i] = part of W placed at V's part i; only equal measures may swap
    auto compatible = [&](const std::vector<int>& sigma) {
      for (int i = 0; i < k; ++i)
        if (std::abs(v.parts()[i] - w.parts()[sigma[i]]) > 1e-12) return false;
      return true;
    };
    auto evaluate = [&](const std::vector<int>& sigma) { return cut_norm_upper(v - permuted(w, v.parts(), sigma)); };

    std::vector<int> sigma(k);
    std::iota(sigma.begin(), sigma.end(), 0);
    if (k <= 8) {
      out.exhaustive = true;
      do {
        if (compatible(sigma)) out.upper = std::min(out.upper, evaluate(sigma));
      } while (std::next_permutation(sigma.begin(), sigma.end()));
    } else {
      // match parts by sorted measure, then shuffle and descend within classes
      std::vector<int> vi(k), wi(k);
      std::iota(vi.begin(), vi.end(), 0);
      std::iota(wi.begin(), wi.end(), 0);
      std::stable_sort(vi.begin(), vi.end(), [&](int x, int y) { return v.parts()[x] < v.parts()[y]; });
      std::stable_sort(wi.begin(), wi.end(), [&](int x, int y) { return w.parts()[x] < w.parts()[y]; });
      std::vector<int> base(k);
      for (int t = 0; t < k; ++t) base[vi[t]] = wi[t];
      if (compatible(base)) {
        Rng rng(seed);
        for (int restart = 0; restart < 8; ++restart) {
          std::vector<int> cur = base;
          if (restart > 0) {
            for (int t = k - 1; t > 0; --t) {
              int s = static_cast<int>(rng.below(static_cast<std::uint64_t>(t) + 1));
              std::swap(cur[t], cur[s]);
              if (!compatible(cur)) std::swap(cur[t], cur[s]);
            }
          }
          double cur_val = evaluate(cur);
          bool improved = true;
          while (improved) {
            improved = false;
            for (int x = 0; x < k && !improved; ++x)
              for (int y = x + 1; y < k && !improved; ++y) {
                std::swap(cur[x], cur[y]);
                if (compatible(cur)) {
                  double val = evaluate(cur);
                  if (val < cur_val) {
                    cur_val = val;
                    improved = true;
                    continue;
                  }
                }
                std::swap(cur[x], cur[y]);
              }
          }
          out.upper = std::min(out.upper, cur_val);
        }
      }
    }
  }

  double lower = 0.0;
  for (int g = 0; g < v.order(); ++g) {
    StepMatrix vs = v.slice(g), ws = w.slice(g);
    double mass = std::abs(vs.integral() - ws.integral());
    double row = (wasserstein1(degree_distribution(vs, true), degree_distribution(ws, true)) + mass) / 2.0;
    double col = (wasserstein1(degree_distribution(vs, false), degree_distribution(ws, false)) + mass) / 2.0;
    lower += std::max({mass, row, col});
  }
  // lower <= delta <= upper holds exactly; only rounding can cross them
  out.lower = std::min(lower, out.upper);
  return out;
}

double b_functional(const StepKernel& w) {
  if (!w.is_graphon()) throw std::invalid_argument("b functional requires a graphon (values in [0,1])");
  StepKernel ww = convolve(w, w);
  const int k = w.num_parts();
  double total = 0.0;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int g = 0; g < w.order(); ++g) {
        double x = w.at(i, j, g);
        if (x == 0.0) continue;
        double y = ww.at(i, j, g);
        if (y <= 0.0) return -kInfinity;
        total += w.parts()[i] * w.parts()[j] * x * std::log(y);
      }
  return total;
}

ExactLogSum b_functional_exact(const ExactStepKernel& w) {
  if (!w.is_graphon()) throw std::invalid_argument("b functional requires a graphon (values in [0,1])");
  ExactStepKernel ww = convolve(w, w);
  const int k = w.num_parts();
  ExactLogSum total;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int g = 0; g < w.order(); ++g) {
        const Rational& x = w.at(i, j, g);
        if (x == 0) continue;
        const Rational& y = ww.at(i, j, g);
        if (y <= 0) return ExactLogSum::negative_infinity();
        total.add_term(w.parts()[i] * w.parts()[j] * x, y);
      }
  return total;
}

double rate_function(const StepKernel& w, const SymmetricDistribution& nu) {
  require_same_group(w.group(), nu.group());
  if (!w.in_w00(1e-9)) return kInfinity;
  const int k = w.num_parts();
  double total = 0.0;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int g = 0; g < w.order(); ++g) {
        double x = w.at(i, j, g);
        if (x == 0.0) continue;
        total += w.parts()[i] * w.parts()[j] * x * std::log(x / nu.prob(g));
      }
  return 0.5 * total;
}

double entropy_h(const StepKernel& w) {
  double rate = rate_function(w, SymmetricDistribution::uniform(w.group()));
  if (rate == kInfinity) return -kInfinity;
  return std::log(static_cast<double>(w.order())) - 2.0 * rate;
}

double linear_functional_z(const StepTestFunction& phi, const StepKernel& w) {
  require_same_group(phi.group(), w.group());
  auto [p, x] = refine_common(phi, w);
  const int k = p.num_parts();
  double total = 0.0;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      double cell = 0.0;
      for (int g = 0; g < p.order(); ++g) cell += p.at(i, j, g) * x.at(i, j, g);
      total += p.parts()[i] * p.parts()[j] * cell;
    }
  return total;
}

StepTestFunction symmetrize(const StepTestFunction& phi) {
  const int k = phi.num_parts();
  const int q = phi.order();
  std::vector<double> v(static_cast<std::size_t>(k) * k * q);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int g = 0; g < q; ++g)
        v[(static_cast<std::size_t>(i) * k + j) * q + g] = 0.5 * (phi.at(i, j, g) + phi.at(j, i, phi.group().neg_index(g)));
  return StepTestFunction(phi.group(), phi.parts(), std::move(v));
}

StepTestFunction step_onto_grid(const StepTestFunction& phi, int n) {
  if (n < 1) throw std::invalid_argument("grid size must be positive");
  const int k = phi.num_parts();
  const int q = phi.order();
  // overlap[i][a] = |((i-1)/n, i/n] intersected with part a|
  std::vector<double> cuts(k + 1, 0.0);
  for (int a = 0; a < k; ++a) cuts[a + 1] = cuts[a] + phi.parts()[a];
  cuts[k] = 1.0;
  std::vector<std::vector<std::pair<int, double>>> overlap(n);
  for (int i = 0; i < n; ++i) {
    double lo = static_cast<double>(i) / n, hi = static_cast<double>(i + 1) / n;
    for (int a = 0; a < k; ++a) {
      double len = std::min(hi, cuts[a + 1]) - std::max(lo, cuts[a]);
      if (len > 1e-15) overlap[i].emplace_back(a, len);
    }
  }
  const double n2 = static_cast<double>(n) * n;
  std::vector<double> v(static_cast<std::size_t>(n) * n * q, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int g = 0; g < q; ++g) {
        double s = 0.0;
        for (auto [a, la] : overlap[i])
          for (auto [b, lb] : overlap[j]) s += la * lb * phi.at(a, b, g);
        v[(static_cast<std::size_t>(i) * n + j) * q + g] = n2 * s;
      }
  StepTestFunction out(StepTestFunction::Unchecked{}, phi.group(), std::vector<double>(n, 1.0 / n), std::move(v));
  if (phi.is_symmetric()) out.mirror_from_canonical();
  return out;
}

double mgf_limit(const StepTestFunction& phi, const SymmetricDistribution& nu) {
  require_same_group(phi.group(), nu.group());
  StepTestFunction sym = symmetrize(phi);
  const int k = sym.num_parts();
  double total = 0.0;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) total += sym.parts()[i] * sym.parts()[j] * log_mgf_cell(sym, i, j, nu);
  return 0.5 * total;
}

MgfValues mgf_finite_n(const StepTestFunction& phi, int n, const SymmetricDistribution& nu) {
  require_same_group(phi.group(), nu.group());
  if (n < 2) throw std::invalid_argument("mgf_finite_n needs n >= 2");
  StepTestFunction grid = step_onto_grid(symmetrize(phi), n);
  double total = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) total += log_mgf_cell(grid, i, j, nu);
  MgfValues out;
  out.finite = total / (2.0 * n * n);
  out.limit = mgf_limit(phi, nu);
  return out;
}

double dual_rate(const StepTestFunction& phi, const StepKernel& w, const SymmetricDistribution& nu) {
  require_same_group(phi.group(), nu.group());
  double z = linear_functional_z(phi, w);
  const int k = phi.num_parts();
  double log_term = 0.0;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) log_term += phi.parts()[i] * phi.parts()[j] * log_mgf_cell(phi, i, j, nu);
  return z - 0.5 * log_term;
}

DualMaximum dual_maximize(const StepKernel& w, const SymmetricDistribution& nu) {
  require_same_group(w.group(), nu.group());
  if (!w.in_w00(1e-9)) throw std::domain_error("dual maximizer requires W in W^G_00");
  if (!w.in_w00_positive(1e-9)) throw std::domain_error("dual maximizer is unbounded: W has a zero entry");
  const int k = w.num_parts();
  const int q = w.order();
  std::vector<double> v(static_cast<std::size_t>(k) * k * q);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int g = 0; g < q; ++g) v[(static_cast<std::size_t>(i) * k + j) * q + g] = 0.5 * std::log(w.at(i, j, g) / nu.prob(g));
  StepTestFunction phi(w.group(), w.parts(), std::move(v));
  double value = dual_rate(phi, w, nu);
  return DualMaximum{std::move(phi), value};
}

StepKernel interpolate_to_uniform(const StepKernel& w, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("interpolation parameter must lie in [0,1]");
  if (!w.in_w00(1e-9)) throw std::invalid_argument("interpolation requires W in W^G_00");
  if (t == 1.0) return w;
  const double u = (1.0 - t) / w.order();
  std::vector<double> v = w.values();
  for (auto& x : v) x = t * x + u;
  return StepKernel(w.group(), w.parts(), std::move(v));
}

}  // namespace cocyc
