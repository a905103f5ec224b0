#pragma once

#include "cocyc/homology.hpp"
#include "cocyc/random.hpp"
#include "cocyc/rational.hpp"
#include "cocyc/simplex.hpp"

#include <Eigen/Dense>

#include <vector>

namespace cocyc {

/// S_2(n,1): every edge uv picks a uniform third vertex; repeated faces kept once.
TwoComplex sample_one_out(int n, Rng& rng);

/// X_2(n, c/n): each triangle independently with probability c/n.
TwoComplex sample_linial_meshulam(int n, double c, Rng& rng);

inline constexpr int kMaxKernelVertices = 30;

/// Projection kernel of the determinantal hypertree measure on the C(n,3)
/// triangles (lexicographic order): orthogonal projection onto the row space
/// of d2. `basis` has orthonormal columns spanning that space, K = basis *
/// basis^T.
struct ProjectionKernel {
  int n = 0;
  std::vector<Triangle> ground;
  Eigen::MatrixXd basis;
  Eigen::MatrixXd K;

  int rank() const { return static_cast<int>(basis.cols()); }
};

ProjectionKernel build_kernel(int n);
/// Same construction from an explicit boundary matrix over all C(n,3)
/// triangles (used to confirm orientation independence).
ProjectionKernel kernel_from_boundary(int n, const IntMatrix& d2);

/// Exact projection-DPP sample: repeatedly choose a triangle with probability
/// proportional to the squared norm of its row of the (shrinking) basis, then
/// project every row orthogonally to the chosen one.
TwoComplex sample_hypertree(const ProjectionKernel& kernel, Rng& rng);

/// P(T_n(2) subset of Y) = det(I - K restricted to the complement of Y),
/// evaluated as det(B_Y^T B_Y) for the basis B (same value by Sylvester).
double avoidance_probability(const ProjectionKernel& kernel, const TwoComplex& y);
/// The same quantity through det(I - K_{Y^c}) directly.
double avoidance_probability_complement(const ProjectionKernel& kernel, const TwoComplex& y);

/// Exact rational value of P(T_n(2) subset of Y) by Cauchy-Binet:
/// det(A_Y A_Y^T) / n^{C(n-2,2)} where A is d2 with the rows of edges through
/// vertex 1 removed.
Rational avoidance_probability_exact(const TwoComplex& y);

/// Probability of a fixed face set under the determinantal hypertree law,
/// det(K_S), read off the explicit kernel matrix.
double kernel_subset_probability(const Eigen::MatrixXd& K, const std::vector<int>& subset);

struct Hypertree {
  TwoComplex complex;
  BigInt h1_order;  // |H_1(S, Z)|
};

inline constexpr int kMaxEnumerationVertices = 6;

/// All face sets of size C(n-1,2) with finite H_1, with their torsion order.
/// A candidate is a hypertree iff the reduced boundary determinant is
/// nonzero; its |H_1| comes from the Smith normal form and must equal that
/// determinant in absolute value.
std::vector<Hypertree> enumerate_hypertrees(int n);

/// (n-2) log n + (1 - 2/n) sum_tau log(t_Y(tau) / n); -infinity when some
/// edge lies in no face of Y.
double upperb_bound(int n, const TwoComplex& y);

/// prod_tau t_Y(tau) / (n - 2): probability that a 1-out complex has all its
/// faces in Y.
Rational one_out_containment_probability(const TwoComplex& y);

}  // namespace cocyc
