#pragma once

#include "cocyc/cut_norm.hpp"
#include "cocyc/step_kernel.hpp"

#include <cstdint>
#include <vector>

namespace cocyc {

/// Blocks of part (or row) indices covering [0, k) exactly. Blocks need not
/// be contiguous.
struct Partition {
  std::vector<std::vector<int>> blocks;

  static Partition singletons(int k);
  static Partition single_block(int k);

  int size() const { return static_cast<int>(blocks.size()); }
  /// Throws unless the blocks are nonempty and cover [0, k) exactly once.
  void validate(int k) const;
  /// block_of[i] for every index.
  std::vector<int> block_map(int k) const;
};

/// S_P W: every block pair is replaced by its (measure-weighted) average.
/// The result lives on the same k parts as W.
StepMatrix step(const StepMatrix& w, const Partition& p);
StepKernel step(const StepKernel& w, const Partition& p);

struct MatrixCutNorm {
  double value = 0.0;
  bool exact = false;  // false: certified lower bound from the heuristic
};

/// (1/n^2) max_{S,T} |sum_{S x T} M|, equal to the cut norm of W_M.
/// Exact up to 24 rows, heuristic lower bound above.
MatrixCutNorm step_cut_norm(int n, const std::vector<double>& row_major, std::uint64_t seed = 0);

struct FkRound {
  int slice = 0;           // group index; 0 for matrices
  std::vector<int> rows;   // witness S
  std::vector<int> cols;   // witness T
  double violation = 0.0;  // |int_{S x T} (W - S_P W)| / ||W||_inf
  double energy = 0.0;     // sum_g ||S_P W^g||_2^2 / ||W||_inf^2 after refining
  int parts = 0;
};

struct FkResult {
  Partition partition;
  double eps = 0.0;
  double scale = 0.0;             // ||W||_inf
  double residual = 0.0;          // sum_g ||W^g - S_P W^g||_cut at exit
  bool residual_exact = false;    // false: only "no violation found by the oracle"
  std::vector<FkRound> trace;
  double initial_energy = 0.0;
};

/// Energy-increment weak regularity partition. A refinement is accepted only
/// on a witnessed rectangle with |int (W - S_P W)| > eps ||W||_inf (per slice
/// and with threshold eps/|G| for kernels); the partition is then split by the
/// Venn cells of S and T, so each round at most quadruples it.
FkResult fk_decompose(const StepMatrix& w, double eps, std::uint64_t seed = 0);
FkResult fk_decompose(const StepKernel& w, double eps, std::uint64_t seed = 0);

struct FactorTwo {
  bool holds = false;
  double lhs = 0.0;  // ||W1 - S_P W1||_cut
  double rhs = 0.0;  // 2 ||W1 - W2||_cut
};

/// Both sides of ||W1 - S_P W1|| <= 2 ||W1 - W2|| for P-measurable W2.
/// Throws when W2 is not P-measurable.
FactorTwo factor_two_check(const StepMatrix& w1, const StepMatrix& w2, const Partition& p);

}  // namespace cocyc
