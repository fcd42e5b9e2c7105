#pragma once

#include <optional>
#include <vector>

#include "detpert/dense_core.hpp"
#include "detpert/matrix.hpp"

namespace detpert {

// Ordered block sizes (n_1, ..., n_k) splitting an n x n matrix into a k x k
// grid. Offsets are the running sums.
class BlockPartition {
 public:
  explicit BlockPartition(std::vector<int> sizes);

  int block_count() const { return static_cast<int>(sizes_.size()); }
  int size(int i) const { return sizes_[i]; }
  int offset(int i) const { return offsets_[i]; }
  int total() const { return total_; }
  const std::vector<int>& sizes() const { return sizes_; }

 private:
  std::vector<int> sizes_;
  std::vector<int> offsets_;
  int total_ = 0;
};

// One materialized n_i x n_j submatrix of a partitioned parent.
struct BlockView {
  int row_block = 0;
  int col_block = 0;
  int row_offset = 0;
  int col_offset = 0;
  Matrix block;

  bool is_diagonal() const { return row_block == col_block; }
};

// The k x k grid of materialized blocks of one symmetric parent.
class BlockGrid {
 public:
  BlockGrid(BlockPartition partition, std::vector<BlockView> views);

  const BlockPartition& partition() const { return partition_; }
  const BlockView& view(int i, int j) const;
  const Matrix& block(int i, int j) const { return view(i, j).block; }

 private:
  BlockPartition partition_;
  std::vector<BlockView> views_;
};

SymMatrix block_diag(const std::vector<SymMatrix>& blocks);

BlockGrid extract_blocks(const SymMatrix& a, const BlockPartition& p);

// Inverse of extract_blocks; reproduces the parent entries exactly.
SymMatrix reassemble(const BlockGrid& grid);

// The i-th diagonal block, which inherits symmetry from the parent.
SymMatrix diagonal_block(const SymMatrix& a, const BlockPartition& p, int i);

// S_A = D - B^T A^{-1} B for the 2x2 split [[A, B], [B^T, D]] at `split`.
// Positivity of the result is inherited from m.
SymMatrix schur_complement(const SpdMatrix& m, int split);

// Assembles m^{-1} from the four-block formula built on S_A.
SymMatrix block_inverse_2x2(const SpdMatrix& m, int split);

// Residuals of three determinant identities evaluated on the 2x2 split of m.
// Each residual comes with the scale its tolerance should be measured
// against. woodbury is absent when A - B D^{-1} B^T fails the SPD check
// (identity precondition unmet, not a failure); for SPD m that cannot happen
// outside of extreme conditioning.
struct IdentityResiduals {
  double fischer = 0.0;        // |logdet M - logdet A - logdet S_A|
  double fischer_scale = 1.0;
  std::optional<double> woodbury;  // max-abs gap between the two inverse forms
  double woodbury_scale = 1.0;
  double sylvester = 0.0;      // |logdet(I + XY) - logdet(I + YX)|
  double sylvester_scale = 1.0;
};

// The Sylvester residual uses X = m * sqrt(d_aux), Y = sqrt(d_aux); d_aux
// must be PSD of the same dimension and defaults to the identity.
IdentityResiduals identity_residuals(const SpdMatrix& m, int split,
                                     const SymMatrix* d_aux = nullptr);

}  // namespace detpert
