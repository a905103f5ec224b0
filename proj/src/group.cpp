#include "cocyc/group.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cocyc {

namespace {

constexpr int kMaxOrder = 1 << 10;

}  // namespace

GroupSpec::GroupSpec(std::vector<int> moduli) : moduli_(std::move(moduli)) {
  if (moduli_.empty()) throw std::invalid_argument("group needs at least one cyclic factor");
  long long order = 1;
  for (int m : moduli_) {
    if (m < 2) throw std::invalid_argument("cyclic factor modulus must be >= 2, got " + std::to_string(m));
    order *= m;
    if (order > kMaxOrder) throw std::invalid_argument("group order exceeds " + std::to_string(kMaxOrder));
  }
  order_ = static_cast<int>(order);

  add_table_.resize(static_cast<std::size_t>(order_) * order_);
  neg_table_.resize(order_);
  for (int a = 0; a < order_; ++a) {
    GroupElement ea = element_at(a);
    neg_table_[a] = index_of(neg(ea));
    for (int b = 0; b < order_; ++b) {
      add_table_[static_cast<std::size_t>(a) * order_ + b] = index_of(add(ea, element_at(b)));
    }
  }
}

GroupElement GroupSpec::identity() const { return GroupElement{std::vector<int>(moduli_.size(), 0)}; }

bool GroupSpec::is_valid(const GroupElement& a) const {
  if (a.residues.size() != moduli_.size()) return false;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    if (a.residues[i] < 0 || a.residues[i] >= moduli_[i]) return false;
  }
  return true;
}

void GroupSpec::require(const GroupElement& a) const {
  if (!is_valid(a)) throw std::invalid_argument("element '" + key(a) + "' does not belong to this group");
}

GroupElement GroupSpec::add(const GroupElement& a, const GroupElement& b) const {
  require(a);
  require(b);
  GroupElement out{std::vector<int>(moduli_.size())};
  for (std::size_t i = 0; i < moduli_.size(); ++i) out.residues[i] = (a.residues[i] + b.residues[i]) % moduli_[i];
  return out;
}

GroupElement GroupSpec::neg(const GroupElement& a) const {
  require(a);
  GroupElement out{std::vector<int>(moduli_.size())};
  for (std::size_t i = 0; i < moduli_.size(); ++i) out.residues[i] = (moduli_[i] - a.residues[i]) % moduli_[i];
  return out;
}

std::vector<GroupElement> GroupSpec::enumerate() const {
  std::vector<GroupElement> out;
  out.reserve(order_);
  for (int i = 0; i < order_; ++i) out.push_back(element_at(i));
  return out;
}

int GroupSpec::index_of(const GroupElement& a) const {
  require(a);
  int idx = 0;
  for (std::size_t i = 0; i < moduli_.size(); ++i) idx = idx * moduli_[i] + a.residues[i];
  return idx;
}

GroupElement GroupSpec::element_at(int index) const {
  if (index < 0 || index >= order_) throw std::out_of_range("group index out of range");
  GroupElement out{std::vector<int>(moduli_.size())};
  for (std::size_t i = moduli_.size(); i-- > 0;) {
    out.residues[i] = index % moduli_[i];
    index /= moduli_[i];
  }
  return out;
}

std::string GroupSpec::key(const GroupElement& a) const {
  std::ostringstream os;
  for (std::size_t i = 0; i < a.residues.size(); ++i) {
    if (i) os << '|';
    os << a.residues[i];
  }
  return os.str();
}

GroupElement GroupSpec::parse_key(const std::string& key) const {
  GroupElement out;
  std::istringstream is(key);
  std::string part;
  while (std::getline(is, part, '|')) {
    std::size_t used = 0;
    int v = std::stoi(part, &used);
    if (used != part.size()) throw std::invalid_argument("bad residue in key '" + key + "'");
    out.residues.push_back(v);
  }
  if (!is_valid(out)) throw std::invalid_argument("key '" + key + "' is not a reduced element of the group");
  return out;
}

SymmetricDistribution::SymmetricDistribution(GroupSpec group, std::vector<double> probs)
    : group_(std::move(group)), probs_(std::move(probs)) {
  validate();
}

SymmetricDistribution::SymmetricDistribution(GroupSpec group, std::vector<Rational> probs)
    : group_(std::move(group)) {
  if (static_cast<int>(probs.size()) != group_.order())
    throw std::invalid_argument("distribution size does not match group order");
  Rational total = 0;
  for (int g = 0; g < group_.order(); ++g) {
    if (probs[g] <= 0) throw std::invalid_argument("distribution must be non-degenerate: nu(g) > 0 for all g");
    if (probs[g] != probs[group_.neg_index(g)]) throw std::invalid_argument("distribution is not symmetric: nu(g) != nu(-g)");
    total += probs[g];
  }
  if (total != 1) throw std::invalid_argument("distribution does not sum to 1");
  probs_.reserve(probs.size());
  for (const auto& q : probs) probs_.push_back(q.get_d());
  exact_ = std::move(probs);
  validate();
}

SymmetricDistribution SymmetricDistribution::uniform(const GroupSpec& group) {
  std::vector<Rational> probs(group.order(), Rational(1, group.order()));
  return SymmetricDistribution(group, std::move(probs));
}

void SymmetricDistribution::validate() {
  if (static_cast<int>(probs_.size()) != group_.order())
    throw std::invalid_argument("distribution size does not match group order");
  double total = 0.0;
  for (int g = 0; g < group_.order(); ++g) {
    if (!(probs_[g] > 0.0)) throw std::invalid_argument("distribution must be non-degenerate: nu(g) > 0 for all g");
    if (probs_[g] != probs_[group_.neg_index(g)]) throw std::invalid_argument("distribution is not symmetric: nu(g) != nu(-g)");
    total += probs_[g];
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("distribution does not sum to 1 within 1e-12");
  cumulative_.assign(probs_.size(), 0.0);
  double run = 0.0;
  for (std::size_t g = 0; g < probs_.size(); ++g) {
    run += probs_[g];
    cumulative_[g] = run;
  }
}

int SymmetricDistribution::sample_index(Rng& rng) const {
  double u = rng.uniform01() * cumulative_.back();
  for (std::size_t g = 0; g < cumulative_.size(); ++g) {
    if (u < cumulative_[g]) return static_cast<int>(g);
  }
  return static_cast<int>(cumulative_.size()) - 1;
}

}  // namespace cocyc
