#include "cocyc/complex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cocyc {

TwoComplex sample_one_out(int n, Rng& rng) {
  if (n < 3) throw std::invalid_argument("one-out complex needs n >= 3");
  std::vector<Triangle> faces;
  faces.reserve(num_edges(n));
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) {
      int w = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 2))) + 1;
      // skip over u and v (u < v)
      if (w >= u) ++w;
      if (w >= v) ++w;
      faces.push_back(Triangle::sorted(u, v, w));
    }
  return TwoComplex(n, std::move(faces));
}

TwoComplex sample_linial_meshulam(int n, double c, Rng& rng) {
  if (n < 3) throw std::invalid_argument("Linial-Meshulam complex needs n >= 3");
  const double p = c / n;
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("face probability c/n must lie in [0,1]");
  std::vector<Triangle> faces;
  for (const Triangle& t : all_triangles(n))
    if (rng.bernoulli(p)) faces.push_back(t);
  return TwoComplex(n, std::move(faces));
}

ProjectionKernel build_kernel(int n) {
  if (n < 3 || n > kMaxKernelVertices)
    throw std::invalid_argument("kernel supports 3 <= n <= " + std::to_string(kMaxKernelVertices));
  return kernel_from_boundary(n, boundary_d2(n, all_triangles(n)));
}

ProjectionKernel kernel_from_boundary(int n, const IntMatrix& d2) {
  ProjectionKernel k;
  k.n = n;
  k.ground = all_triangles(n);
  if (d2.rows != num_edges(n) || d2.cols != static_cast<int>(k.ground.size()))
    throw std::invalid_argument("boundary matrix must be C(n,2) x C(n,3)");
  Eigen::MatrixXd d(d2.rows, d2.cols);
  for (int i = 0; i < d2.rows; ++i)
    for (int j = 0; j < d2.cols; ++j) d(i, j) = static_cast<double>(d2.at(i, j));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(d * d.transpose());
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double cutoff = 1e-10 * std::max(1.0, lambda.maxCoeff());
  std::vector<int> keep;
  for (int i = 0; i < lambda.size(); ++i)
    if (lambda(i) > cutoff) keep.push_back(i);
  const int expected = static_cast<int>(binomial(n - 1, 2));
  if (static_cast<int>(keep.size()) != expected)
    throw std::runtime_error("numerical rank " + std::to_string(keep.size()) + " of the boundary map, expected " +
                             std::to_string(expected));
  Eigen::MatrixXd v(d2.rows, expected);
  for (int c = 0; c < expected; ++c) v.col(c) = eig.eigenvectors().col(keep[c]) / std::sqrt(lambda(keep[c]));
  k.basis = d.transpose() * v;
  k.K = k.basis * k.basis.transpose();
  return k;
}

TwoComplex sample_hypertree(const ProjectionKernel& kernel, Rng& rng) {
  Eigen::MatrixXd v = kernel.basis;
  const int rows = static_cast<int>(v.rows());
  std::vector<Triangle> faces;
  std::vector<double> weight(rows);
  for (int step = 0; step < kernel.rank(); ++step) {
    double total = 0.0;
    for (int i = 0; i < rows; ++i) {
      weight[i] = v.row(i).squaredNorm();
      total += weight[i];
    }
    double u = rng.uniform01() * total;
    int pick = -1;
    for (int i = 0; i < rows; ++i) {
      if (weight[i] <= 0.0) continue;
      pick = i;
      if (u < weight[i]) break;
      u -= weight[i];
    }
    if (pick < 0 || weight[pick] < 1e-12) throw std::runtime_error("hypertree sampler lost rank");
    Eigen::VectorXd q = v.row(pick).transpose() / std::sqrt(weight[pick]);
    v -= (v * q) * q.transpose();
    v.row(pick).setZero();
    faces.push_back(kernel.ground[pick]);
  }
  return TwoComplex(kernel.n, std::move(faces));
}

namespace {

std::vector<int> ground_indices(const ProjectionKernel& kernel, const TwoComplex& y) {
  if (y.n() != kernel.n) throw std::invalid_argument("complex and kernel have different vertex counts");
  std::vector<int> idx;
  idx.reserve(y.size());
  for (const Triangle& t : y.triangles()) idx.push_back(triangle_index(kernel.n, t));
  return idx;
}

BigInt bareiss_det(std::vector<BigInt> a, int k) {
  auto at = [&](int i, int j) -> BigInt& { return a[static_cast<std::size_t>(i) * k + j]; };
  BigInt prev = 1;
  int sign = 1;
  for (int c = 0; c < k; ++c) {
    int p = c;
    while (p < k && at(p, c) == 0) ++p;
    if (p == k) return 0;
    if (p != c) {
      for (int j = 0; j < k; ++j) std::swap(at(p, j), at(c, j));
      sign = -sign;
    }
    for (int i = c + 1; i < k; ++i) {
      for (int j = c + 1; j < k; ++j) {
        at(i, j) = at(i, j) * at(c, c) - at(i, c) * at(c, j);
        mpz_divexact(at(i, j).get_mpz_t(), at(i, j).get_mpz_t(), prev.get_mpz_t());
      }
      at(i, c) = 0;
    }
    prev = at(c, c);
  }
  return sign * prev;
}

std::int64_t bareiss_det_small(std::vector<std::int64_t>& a, int k) {
  auto at = [&](int i, int j) -> std::int64_t& { return a[static_cast<std::size_t>(i) * k + j]; };
  std::int64_t prev = 1;
  int sign = 1;
  for (int c = 0; c < k; ++c) {
    int p = c;
    while (p < k && at(p, c) == 0) ++p;
    if (p == k) return 0;
    if (p != c) {
      for (int j = 0; j < k; ++j) std::swap(at(p, j), at(c, j));
      sign = -sign;
    }
    for (int i = c + 1; i < k; ++i) {
      for (int j = c + 1; j < k; ++j) at(i, j) = (at(i, j) * at(c, c) - at(i, c) * at(c, j)) / prev;
      at(i, c) = 0;
    }
    prev = at(c, c);
  }
  return sign * prev;
}

// Rows of d2 for the edges avoiding vertex 1.
std::vector<int> reduced_rows(int n) {
  std::vector<int> rows;
  for (int u = 2; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) rows.push_back(edge_index(n, u, v));
  return rows;
}

}  // namespace

double avoidance_probability(const ProjectionKernel& kernel, const TwoComplex& y) {
  const std::vector<int> idx = ground_indices(kernel, y);
  const int r = kernel.rank();
  Eigen::MatrixXd by(static_cast<int>(idx.size()), r);
  for (std::size_t t = 0; t < idx.size(); ++t) by.row(static_cast<int>(t)) = kernel.basis.row(idx[t]);
  double det = (by.transpose() * by).partialPivLu().determinant();
  return std::max(0.0, det);
}

double avoidance_probability_complement(const ProjectionKernel& kernel, const TwoComplex& y) {
  const std::vector<int> idx = ground_indices(kernel, y);
  std::vector<char> in_y(kernel.ground.size(), 0);
  for (int i : idx) in_y[i] = 1;
  std::vector<int> comp;
  for (std::size_t i = 0; i < in_y.size(); ++i)
    if (!in_y[i]) comp.push_back(static_cast<int>(i));
  const int c = static_cast<int>(comp.size());
  if (c == 0) return 1.0;
  Eigen::MatrixXd m(c, c);
  for (int i = 0; i < c; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = (i == j ? 1.0 : 0.0) - kernel.K(comp[i], comp[j]);
  return std::max(0.0, m.partialPivLu().determinant());
}

Rational avoidance_probability_exact(const TwoComplex& y) {
  const int n = y.n();
  if (n < 3) throw std::invalid_argument("hypertrees need n >= 3");
  const IntMatrix d2 = boundary_d2(n, y.triangles());
  const std::vector<int> rows = reduced_rows(n);
  const int r = static_cast<int>(rows.size());
  std::vector<BigInt> gram(static_cast<std::size_t>(r) * r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      long s = 0;
      for (int c = 0; c < d2.cols; ++c) s += d2.at(rows[i], c) * d2.at(rows[j], c);
      gram[static_cast<std::size_t>(i) * r + j] = s;
    }
  BigInt num = bareiss_det(std::move(gram), r);
  BigInt den;
  mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(binomial(n - 2, 2)));
  Rational out(num, den);
  out.canonicalize();
  return out;
}

double kernel_subset_probability(const Eigen::MatrixXd& K, const std::vector<int>& subset) {
  const int s = static_cast<int>(subset.size());
  if (s == 0) return 1.0;
  Eigen::MatrixXd m(s, s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) m(i, j) = K(subset[i], subset[j]);
  return m.partialPivLu().determinant();
}

std::vector<Hypertree> enumerate_hypertrees(int n) {
  if (n < 3 || n > kMaxEnumerationVertices)
    throw std::invalid_argument("hypertree enumeration supports 3 <= n <= " + std::to_string(kMaxEnumerationVertices));
  const std::vector<Triangle> ground = all_triangles(n);
  const IntMatrix d2 = boundary_d2(n, ground);
  const std::vector<int> rows = reduced_rows(n);
  const int r = static_cast<int>(rows.size());
  const int t = static_cast<int>(ground.size());

  std::vector<Hypertree> out;
  std::vector<int> pick(r);
  for (int i = 0; i < r; ++i) pick[i] = i;
  std::vector<std::int64_t> sub(static_cast<std::size_t>(r) * r);
  while (true) {
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) sub[static_cast<std::size_t>(i) * r + j] = d2.at(rows[i], pick[j]);
    std::int64_t det = bareiss_det_small(sub, r);
    if (det != 0) {
      std::vector<Triangle> faces;
      for (int j : pick) faces.push_back(ground[j]);
      TwoComplex s(n, std::move(faces));
      HomologyReport h = homology_report(s);
      if (h.dim_H1_q != 0 || h.torsion_order != BigInt(static_cast<long>(std::llabs(det))))
        throw std::logic_error("hypertree torsion disagrees with its reduced boundary determinant");
      out.push_back(Hypertree{std::move(s), h.torsion_order});
    }
    // next r-subset of [0, t)
    int i = r - 1;
    while (i >= 0 && pick[i] == t - r + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < r; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

double upperb_bound(int n, const TwoComplex& y) {
  if (y.n() != n) throw std::invalid_argument("complex has a different vertex count");
  double s = 0.0;
  for (int t : y.edge_degrees()) {
    if (t == 0) return -std::numeric_limits<double>::infinity();
    s += std::log(static_cast<double>(t) / n);
  }
  return (n - 2) * std::log(static_cast<double>(n)) + (1.0 - 2.0 / n) * s;
}

Rational one_out_containment_probability(const TwoComplex& y) {
  const int n = y.n();
  Rational p = 1;
  for (int t : y.edge_degrees()) p *= ratio(t, n - 2);
  p.canonicalize();
  return p;
}

}  // namespace cocyc
