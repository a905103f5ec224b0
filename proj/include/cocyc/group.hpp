#pragma once

#include "cocyc/random.hpp"
#include "cocyc/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cocyc {

class GroupSpec;

/// Element of a finite abelian group, stored as a vector of reduced residues.
struct GroupElement {
  std::vector<int> residues;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

/// G = Z/m_1 (+) ... (+) Z/m_r.
///
/// Besides the residue-vector form, every element has a dense index in
/// [0, order) following lexicographic residue order (first factor most
/// significant). Array-backed objects such as step kernels are indexed by it.
class GroupSpec {
public:
  explicit GroupSpec(std::vector<int> moduli);

  static GroupSpec cyclic(int m) { return GroupSpec({m}); }

  const std::vector<int>& moduli() const { return moduli_; }
  int order() const { return order_; }

  GroupElement identity() const;
  bool is_valid(const GroupElement& a) const;

  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement neg(const GroupElement& a) const;
  std::vector<GroupElement> enumerate() const;

  int index_of(const GroupElement& a) const;
  GroupElement element_at(int index) const;

  // Group law on dense indices.
  int add_index(int a, int b) const { return add_table_[static_cast<std::size_t>(a) * order_ + b]; }
  int neg_index(int a) const { return neg_table_[a]; }
  int sub_index(int a, int b) const { return add_index(a, neg_index(b)); }
  static constexpr int identity_index() { return 0; }

  /// "2|1" style key used by the JSON distribution format.
  std::string key(const GroupElement& a) const;
  GroupElement parse_key(const std::string& key) const;

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) { return a.moduli_ == b.moduli_; }

private:
  void require(const GroupElement& a) const;

  std::vector<int> moduli_;
  int order_ = 1;
  std::vector<int> add_table_;
  std::vector<int> neg_table_;
};

/// Symmetric, non-degenerate probability distribution on G:
/// probabilities positive, summing to one, and nu(g) == nu(-g).
///
/// An exact rational form is kept alongside the float one when the
/// distribution was built from rationals.
class SymmetricDistribution {
public:
  SymmetricDistribution(GroupSpec group, std::vector<double> probs);
  SymmetricDistribution(GroupSpec group, std::vector<Rational> probs);

  static SymmetricDistribution uniform(const GroupSpec& group);

  const GroupSpec& group() const { return group_; }
  double prob(int index) const { return probs_[index]; }
  double prob(const GroupElement& g) const { return probs_[group_.index_of(g)]; }
  const std::vector<double>& probs() const { return probs_; }
  const std::optional<std::vector<Rational>>& exact() const { return exact_; }

  /// One draw by inversion of the cumulative distribution.
  int sample_index(Rng& rng) const;
  GroupElement sample(Rng& rng) const { return group_.element_at(sample_index(rng)); }

private:
  void validate();

  GroupSpec group_;
  std::vector<double> probs_;
  std::vector<double> cumulative_;
  std::optional<std::vector<Rational>> exact_;
};

}  // namespace cocyc
