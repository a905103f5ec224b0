#include "cocyc/step_kernel.hpp"

namespace cocyc {

StepMatrix::StepMatrix(std::vector<double> parts_, std::vector<double> values_)
    : parts(std::move(parts_)), values(std::move(values_)) {
  if (parts.empty()) throw std::invalid_argument("step function needs at least one part");
  double total = 0.0;
  for (double m : parts) {
    if (!(m > 0)) throw std::invalid_argument("part measures must be positive");
    total += m;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("part measures must sum to 1");
  if (values.size() != parts.size() * parts.size()) throw std::invalid_argument("step function values must be k x k");
}

StepMatrix StepMatrix::from_matrix(int n, std::vector<double> row_major) {
  if (n < 1) throw std::invalid_argument("matrix must be at least 1 x 1");
  return StepMatrix(std::vector<double>(n, 1.0 / n), std::move(row_major));
}

double StepMatrix::integral() const {
  double s = 0.0;
  for (int i = 0; i < k(); ++i)
    for (int j = 0; j < k(); ++j) s += parts[i] * parts[j] * at(i, j);
  return s;
}

double StepMatrix::l1_norm() const {
  double s = 0.0;
  for (int i = 0; i < k(); ++i)
    for (int j = 0; j < k(); ++j) s += parts[i] * parts[j] * std::abs(at(i, j));
  return s;
}

double StepMatrix::l2_norm_squared() const {
  double s = 0.0;
  for (int i = 0; i < k(); ++i)
    for (int j = 0; j < k(); ++j) s += parts[i] * parts[j] * at(i, j) * at(i, j);
  return s;
}

double StepMatrix::sup_norm() const {
  double s = 0.0;
  for (double v : values) s = std::max(s, std::abs(v));
  return s;
}

StepMatrix StepMatrix::operator-(const StepMatrix& other) const {
  if (parts != other.parts) throw std::invalid_argument("step functions must share a partition");
  std::vector<double> v(values.size());
  for (std::size_t t = 0; t < v.size(); ++t) v[t] = values[t] - other.values[t];
  return StepMatrix(parts, std::move(v));
}

StepMatrix StepMatrix::operator+(const StepMatrix& other) const {
  if (parts != other.parts) throw std::invalid_argument("step functions must share a partition");
  std::vector<double> v(values.size());
  for (std::size_t t = 0; t < v.size(); ++t) v[t] = values[t] + other.values[t];
  return StepMatrix(parts, std::move(v));
}

StepMatrix StepMatrix::scaled(double c) const {
  std::vector<double> v = values;
  for (auto& x : v) x *= c;
  return StepMatrix(parts, std::move(v));
}

}  // namespace cocyc
