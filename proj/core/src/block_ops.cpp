#include "detpert/block_ops.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace detpert {

BlockPartition::BlockPartition(std::vector<int> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.empty()) {
    throw DimensionMismatchError("BlockPartition requires at least one block");
  }
  offsets_.reserve(sizes_.size());
  for (int s : sizes_) {
    if (s < 1) throw DimensionMismatchError("BlockPartition sizes must be positive");
    offsets_.push_back(total_);
    total_ += s;
  }
}

BlockGrid::BlockGrid(BlockPartition partition, std::vector<BlockView> views)
    : partition_(std::move(partition)), views_(std::move(views)) {}

const BlockView& BlockGrid::view(int i, int j) const {
  return views_[static_cast<std::size_t>(i) * partition_.block_count() + j];
}

SymMatrix block_diag(const std::vector<SymMatrix>& blocks) {
  if (blocks.empty()) {
    throw DimensionMismatchError("block_diag requires at least one block");
  }
  int total = 0;
  for (const SymMatrix& b : blocks) total += b.n();
  SymMatrix out(total);
  int off = 0;
  for (const SymMatrix& b : blocks) {
    for (int i = 0; i < b.n(); ++i)
      for (int j = 0; j <= i; ++j) out.set(off + i, off + j, b(i, j));
    off += b.n();
  }
  return out;
}

BlockGrid extract_blocks(const SymMatrix& a, const BlockPartition& p) {
  if (p.total() != a.n()) {
    throw DimensionMismatchError("extract_blocks: partition total " +
                                 std::to_string(p.total()) +
                                 " does not match matrix dimension " +
                                 std::to_string(a.n()));
  }
  const int k = p.block_count();
  std::vector<BlockView> views;
  views.reserve(static_cast<std::size_t>(k) * k);
  for (int bi = 0; bi < k; ++bi) {
    for (int bj = 0; bj < k; ++bj) {
      Matrix block(p.size(bi), p.size(bj));
      for (int i = 0; i < p.size(bi); ++i)
        for (int j = 0; j < p.size(bj); ++j)
          block(i, j) = a(p.offset(bi) + i, p.offset(bj) + j);
      views.push_back(BlockView{bi, bj, p.offset(bi), p.offset(bj), std::move(block)});
    }
  }
  return BlockGrid(p, std::move(views));
}

SymMatrix reassemble(const BlockGrid& grid) {
  const BlockPartition& p = grid.partition();
  Matrix full(p.total(), p.total());
  for (int bi = 0; bi < p.block_count(); ++bi) {
    for (int bj = 0; bj < p.block_count(); ++bj) {
      const BlockView& v = grid.view(bi, bj);
      for (int i = 0; i < v.block.rows(); ++i)
        for (int j = 0; j < v.block.cols(); ++j)
          full(v.row_offset + i, v.col_offset + j) = v.block(i, j);
    }
  }
  return SymMatrix(full);
}

SymMatrix diagonal_block(const SymMatrix& a, const BlockPartition& p, int i) {
  if (p.total() != a.n()) {
    throw DimensionMismatchError("diagonal_block: partition does not match matrix");
  }
  const int off = p.offset(i);
  const int ni = p.size(i);
  SymMatrix out(ni);
  for (int r = 0; r < ni; ++r)
    for (int c = 0; c <= r; ++c) out.set(r, c, a(off + r, off + c));
  return out;
}

namespace {

struct TwoByTwoSplit {
  SymMatrix a;  // leading split x split block
  Matrix b;     // top-right split x (n - split)
  SymMatrix d;  // trailing block
};

TwoByTwoSplit split_two(const SymMatrix& m, int split) {
  if (split < 1 || split >= m.n()) {
    throw DimensionMismatchError("split must satisfy 1 <= split < n");
  }
  const BlockPartition p({split, m.n() - split});
  const BlockGrid grid = extract_blocks(m, p);
  return TwoByTwoSplit{SymMatrix(grid.block(0, 0)), grid.block(0, 1),
                       SymMatrix(grid.block(1, 1))};
}

}  // namespace

SymMatrix schur_complement(const SpdMatrix& m, int split) {
  const TwoByTwoSplit sp = split_two(m.base(), split);
  const SpdMatrix a = cholesky(sp.a);  // SPD because m is
  const Matrix a_inv_b = a.solve(sp.b);
  return SymMatrix(sp.d.to_matrix() - transpose(sp.b) * a_inv_b);
}

SymMatrix block_inverse_2x2(const SpdMatrix& m, int split) {
  const int n = m.dim();
  const TwoByTwoSplit sp = split_two(m.base(), split);
  const SpdMatrix a = cholesky(sp.a);
  const Matrix a_inv_b = a.solve(sp.b);
  const SpdMatrix s_a = cholesky(SymMatrix(sp.d.to_matrix() - transpose(sp.b) * a_inv_b));
  const SymMatrix s_a_inv = invert(s_a);
  const SymMatrix a_inv = invert(a);

  const Matrix correction = a_inv_b * s_a_inv.to_matrix();
  const Matrix top_left = a_inv.to_matrix() + correction * transpose(a_inv_b);

  Matrix out(n, n);
  for (int i = 0; i < split; ++i)
    for (int j = 0; j < split; ++j) out(i, j) = top_left(i, j);
  for (int i = 0; i < split; ++i)
    for (int j = 0; j < n - split; ++j) {
      out(i, split + j) = -correction(i, j);
      out(split + j, i) = -correction(i, j);
    }
  for (int i = 0; i < n - split; ++i)
    for (int j = 0; j < n - split; ++j) out(split + i, split + j) = s_a_inv(i, j);
  return SymMatrix(out);
}

IdentityResiduals identity_residuals(const SpdMatrix& m, int split,
                                     const SymMatrix* d_aux) {
  const TwoByTwoSplit sp = split_two(m.base(), split);
  const SpdMatrix a = cholesky(sp.a);
  const Matrix a_inv_b = a.solve(sp.b);
  const SpdMatrix s_a = cholesky(SymMatrix(sp.d.to_matrix() - transpose(sp.b) * a_inv_b));

  IdentityResiduals out;

  // det M = det A * det S_A, in the log domain.
  out.fischer = std::abs(m.log_det() - a.log_det() - s_a.log_det());
  out.fischer_scale =
      1.0 + std::abs(m.log_det()) + std::abs(a.log_det()) + std::abs(s_a.log_det());

  // (A - B D^{-1} B^T)^{-1} = A^{-1} + A^{-1} B S_A^{-1} B^T A^{-1},
  // provided the left side is invertible.
  try {
    const SpdMatrix d = cholesky(sp.d);
    const Matrix d_inv_bt = d.solve(transpose(sp.b));
    const SpdMatrix s_d = cholesky(SymMatrix(sp.a.to_matrix() - sp.b * d_inv_bt));
    const SymMatrix direct = invert(s_d);

    const SymMatrix s_a_inv = invert(s_a);
    const SymMatrix a_inv = invert(a);
    const Matrix composed =
        a_inv.to_matrix() + a_inv_b * s_a_inv.to_matrix() * transpose(a_inv_b);

    out.woodbury = max_abs(direct.to_matrix() - composed);
    out.woodbury_scale = 1.0 + max_abs(direct);
  } catch (const NotPositiveDefiniteError&) {
    out.woodbury.reset();
  }

  // det(I + XY) = det(I + YX) with X = m * sqrt(D), Y = sqrt(D). The left
  // side goes through LU, the right side (symmetric) through Cholesky, so the
  // two routes share no factorization.
  const SymMatrix root =
      d_aux != nullptr ? psd_sqrt(*d_aux) : SymMatrix::identity(m.dim());
  if (root.n() != m.dim()) {
    throw DimensionMismatchError("identity_residuals: auxiliary matrix dimension");
  }
  const Matrix x = m.base().to_matrix() * root.to_matrix();
  const Matrix y = root.to_matrix();
  const double lhs = logdet_identity_plus(x * y);
  const SymMatrix yx(y * x);
  const double rhs = cholesky(add_scaled_identity(yx, 1.0)).log_det();
  out.sylvester = std::abs(lhs - rhs);
  out.sylvester_scale = 1.0 + std::abs(lhs) + std::abs(rhs);

  return out;
}

}  // namespace detpert
