#pragma once

#include "cocyc/group.hpp"
#include "cocyc/rational.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cocyc {

namespace detail {

inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }
inline bool near(const Rational& a, const Rational& b, double) { return a == b; }

}  // namespace detail

/// Real step function on [0,1]^2: k interval parts in order, k x k values.
/// This is a single slice W^g of a cochain kernel, or the step form W_M of a
/// square matrix M (k = n equal parts).
struct StepMatrix {
  std::vector<double> parts;
  std::vector<double> values;  // row-major k x k

  StepMatrix() = default;
  StepMatrix(std::vector<double> parts_, std::vector<double> values_);

  /// W_M: part i is ((i-1)/n, i/n].
  static StepMatrix from_matrix(int n, std::vector<double> row_major);

  int k() const { return static_cast<int>(parts.size()); }
  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * k() + j]; }
  double& at(int i, int j) { return values[static_cast<std::size_t>(i) * k() + j]; }

  double integral() const;
  double l1_norm() const;
  double l2_norm_squared() const;
  double sup_norm() const;

  StepMatrix operator-(const StepMatrix& other) const;
  StepMatrix operator+(const StepMatrix& other) const;
  StepMatrix scaled(double c) const;
};

/// Piecewise-constant cochain kernel W^G : [0,1]^2 x G -> R.
///
/// Parts are consecutive intervals of [0,1] with the given measures. The
/// value array is k x k x |G| with the group axis indexed as in
/// GroupSpec::enumerate. Checked construction enforces
/// values[i][j][g] == values[j][i][-g] exactly; results that need not be
/// symmetric (convolution of two different kernels, raw test functions) use
/// the Unchecked constructor.
///
/// T is double, or Rational for exact computations.
template <class T>
class BasicStepKernel {
public:
  struct Unchecked {};

  BasicStepKernel(GroupSpec group, std::vector<T> parts, std::vector<T> values)
      : BasicStepKernel(Unchecked{}, std::move(group), std::move(parts), std::move(values)) {
    if (!is_symmetric()) throw std::invalid_argument(symmetry_violation());
  }

  BasicStepKernel(Unchecked, GroupSpec group, std::vector<T> parts, std::vector<T> values)
      : group_(std::move(group)), parts_(std::move(parts)), values_(std::move(values)) {
    validate_shape();
  }

  /// All-zero kernel on the given parts.
  static BasicStepKernel zero(const GroupSpec& group, std::vector<T> parts) {
    std::size_t k = parts.size();
    std::vector<T> vals(k * k * group.order(), T(0));
    return BasicStepKernel(group, std::move(parts), std::move(vals));
  }

  /// W^g == per_g[g] everywhere; per_g must satisfy per_g[g] == per_g[-g].
  static BasicStepKernel constant(const GroupSpec& group, std::vector<T> parts, const std::vector<T>& per_g) {
    if (static_cast<int>(per_g.size()) != group.order()) throw std::invalid_argument("constant kernel needs one value per group element");
    std::size_t k = parts.size();
    std::vector<T> vals;
    vals.reserve(k * k * group.order());
    for (std::size_t c = 0; c < k * k; ++c)
      for (const auto& v : per_g) vals.push_back(v);
    return BasicStepKernel(group, std::move(parts), std::move(vals));
  }

  /// Uniform graphon U^g == 1/|G| on a single part.
  static BasicStepKernel uniform(const GroupSpec& group) {
    std::vector<T> per_g(group.order(), T(1) / T(group.order()));
    return constant(group, std::vector<T>{T(1)}, per_g);
  }

  const GroupSpec& group() const { return group_; }
  int num_parts() const { return static_cast<int>(parts_.size()); }
  int order() const { return group_.order(); }
  const std::vector<T>& parts() const { return parts_; }
  const std::vector<T>& values() const { return values_; }

  std::size_t offset(int i, int j, int g) const {
    return (static_cast<std::size_t>(i) * parts_.size() + j) * group_.order() + g;
  }
  const T& at(int i, int j, int g) const { return values_[offset(i, j, g)]; }

  bool is_symmetric() const { return symmetry_violation().empty(); }

  /// Empty when symmetric, else names the first violating entry.
  std::string symmetry_violation() const {
    int k = num_parts();
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        for (int g = 0; g < order(); ++g)
          if (!(at(i, j, g) == at(j, i, group_.neg_index(g))))
            return "symmetry violated: W[" + std::to_string(i) + "][" + std::to_string(j) + "][" + std::to_string(g) +
                   "] != W[" + std::to_string(j) + "][" + std::to_string(i) + "][-" + std::to_string(g) + "]";
    return {};
  }

  /// 0 <= W <= 1 everywhere (a cochain graphon, W^G_0).
  bool is_graphon() const {
    return std::all_of(values_.begin(), values_.end(), [](const T& v) { return v >= 0 && v <= 1; });
  }

  /// Graphon whose fibers are probability vectors: sum_g W^g == 1 on every
  /// cell (W^G_00). Tolerance `tol` on the row sums in float mode; exact for
  /// rationals.
  bool in_w00(double tol = 1e-9) const {
    if (!is_graphon()) return false;
    int k = num_parts();
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        T s(0);
        for (int g = 0; g < order(); ++g) s += at(i, j, g);
        if (!detail::near(s, T(1), tol)) return false;
      }
    return true;
  }

  /// W^G_00 with strictly positive infimum.
  bool in_w00_positive(double tol = 1e-9) const {
    return in_w00(tol) && std::all_of(values_.begin(), values_.end(), [](const T& v) { return v > 0; });
  }

  /// Slice W^g as a real step function.
  StepMatrix slice(int g) const {
    int k = num_parts();
    std::vector<double> p(parts_.size()), v(static_cast<std::size_t>(k) * k);
    for (int i = 0; i < k; ++i) p[i] = to_double(parts_[i]);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) v[static_cast<std::size_t>(i) * k + j] = to_double(at(i, j, g));
    return StepMatrix(std::move(p), std::move(v));
  }

  BasicStepKernel<double> to_double_kernel() const {
    std::vector<double> p, v;
    p.reserve(parts_.size());
    v.reserve(values_.size());
    for (const auto& x : parts_) p.push_back(to_double(x));
    for (const auto& x : values_) v.push_back(to_double(x));
    return BasicStepKernel<double>(typename BasicStepKernel<double>::Unchecked{}, group_, std::move(p), std::move(v));
  }

  /// Integral of W^g over [0,1]^2.
  T integral(int g) const {
    T s(0);
    int k = num_parts();
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) s += parts_[i] * parts_[j] * at(i, j, g);
    return s;
  }

  BasicStepKernel operator-(const BasicStepKernel& other) const { return combine(other, [](const T& a, const T& b) { return a - b; }); }
  BasicStepKernel operator+(const BasicStepKernel& other) const { return combine(other, [](const T& a, const T& b) { return a + b; }); }

  BasicStepKernel scaled(const T& c) const {
    std::vector<T> v = values_;
    for (auto& x : v) x *= c;
    return BasicStepKernel(Unchecked{}, group_, parts_, std::move(v));
  }

  /// Same function expressed on a finer partition; `map[i]` is the old part
  /// containing new part i.
  BasicStepKernel reindexed(std::vector<T> new_parts, const std::vector<int>& map) const {
    std::size_t k = new_parts.size();
    std::vector<T> v(k * k * order());
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        for (int g = 0; g < order(); ++g) v[(i * k + j) * order() + g] = at(map[i], map[j], g);
    return BasicStepKernel(Unchecked{}, group_, std::move(new_parts), std::move(v));
  }

  /// Replaces each (i,j,g) entry by the value at the canonical member of its
  /// symmetry orbit {(i,j,g), (j,i,-g)}. Only used on results that are
  /// symmetric in exact arithmetic, to remove rounding asymmetry.
  void mirror_from_canonical() {
    int k = num_parts();
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        for (int g = 0; g < order(); ++g) {
          int ng = group_.neg_index(g);
          bool canonical = i < j || (i == j && g <= ng);
          if (canonical) values_[offset(j, i, ng)] = values_[offset(i, j, g)];
        }
  }

  T& mutable_at(int i, int j, int g) { return values_[offset(i, j, g)]; }

private:
  template <class Op>
  BasicStepKernel combine(const BasicStepKernel& other, Op op) const {
    if (!(group_ == other.group_)) throw std::invalid_argument("kernels are over different groups");
    if (parts_ != other.parts_) throw std::invalid_argument("kernels must share a partition; refine to a common partition first");
    std::vector<T> v(values_.size());
    for (std::size_t t = 0; t < v.size(); ++t) v[t] = op(values_[t], other.values_[t]);
    return BasicStepKernel(Unchecked{}, group_, parts_, std::move(v));
  }

  void validate_shape() const {
    if (parts_.empty()) throw std::invalid_argument("kernel needs at least one part");
    T total(0);
    for (const auto& m : parts_) {
      if (!(m > 0)) throw std::invalid_argument("part measures must be positive");
      total += m;
    }
    if (!detail::near(total, T(1), 1e-12)) throw std::invalid_argument("part measures must sum to 1");
    if (values_.size() != parts_.size() * parts_.size() * static_cast<std::size_t>(group_.order()))
      throw std::invalid_argument("value array must have shape parts x parts x |G|");
  }

  GroupSpec group_;
  std::vector<T> parts_;
  std::vector<T> values_;
};

using StepKernel = BasicStepKernel<double>;
using ExactStepKernel = BasicStepKernel<Rational>;
/// Test functions phi share the kernel layout but are unconstrained.
using StepTestFunction = BasicStepKernel<double>;

/// Common refinement of two interval partitions of [0,1].
template <class T>
struct Refinement {
  std::vector<T> parts;
  std::vector<int> map_a;  // new part -> part of the first partition
  std::vector<int> map_b;
};

/// Merges the cut points of two partitions. In float mode cut points closer
/// than 1e-12 are identified.
template <class T>
Refinement<T> common_refinement(const std::vector<T>& a, const std::vector<T>& b) {
  auto cuts = [](const std::vector<T>& parts) {
    std::vector<T> c(parts.size() + 1, T(0));
    for (std::size_t i = 0; i < parts.size(); ++i) c[i + 1] = c[i] + parts[i];
    c.back() = T(1);
    return c;
  };
  const std::vector<T> ca = cuts(a), cb = cuts(b);
  Refinement<T> r;
  std::size_t i = 1, j = 1;
  T prev(0);
  while (i < ca.size() && j < cb.size()) {
    T x = ca[i] < cb[j] ? ca[i] : cb[j];
    bool step_a = detail::near(ca[i], x, 1e-12);
    bool step_b = detail::near(cb[j], x, 1e-12);
    r.parts.push_back(x - prev);
    r.map_a.push_back(static_cast<int>(i - 1));
    r.map_b.push_back(static_cast<int>(j - 1));
    prev = x;
    if (step_a) ++i;
    if (step_b) ++j;
  }
  return r;
}

template <class T>
std::pair<BasicStepKernel<T>, BasicStepKernel<T>> refine_common(const BasicStepKernel<T>& v, const BasicStepKernel<T>& w) {
  if (!(v.group() == w.group())) throw std::invalid_argument("kernels are over different groups");
  if (v.parts() == w.parts()) return {v, w};
  auto r = common_refinement(v.parts(), w.parts());
  return {v.reindexed(r.parts, r.map_a), w.reindexed(r.parts, r.map_b)};
}

}  // namespace cocyc
