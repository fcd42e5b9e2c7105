#include <cmath>

#include "doctest.h"

#include "detpert/block_ops.hpp"
#include "detpert/randgen.hpp"

using namespace detpert;

namespace {

GenConfig small_config(int max_dim) {
  GenConfig cfg;
  cfg.max_dim = max_dim;
  return cfg;
}

}  // namespace

TEST_CASE("BlockPartition validates its sizes") {
  CHECK_THROWS_AS(BlockPartition({}), DimensionMismatchError);
  CHECK_THROWS_AS(BlockPartition({2, 0}), DimensionMismatchError);
  const BlockPartition p({2, 3});
  CHECK(p.total() == 5);
  CHECK(p.offset(0) == 0);
  CHECK(p.offset(1) == 2);
}

TEST_CASE("block_diag assembles scalars, identities, and single blocks") {
  const SymMatrix scalars = block_diag({SymMatrix{{2.0}}, SymMatrix{{1.0}}});
  CHECK(scalars.n() == 2);
  CHECK(scalars(0, 0) == 2.0);
  CHECK(scalars(1, 1) == 1.0);
  CHECK(scalars(0, 1) == 0.0);

  const SymMatrix id5 = block_diag({SymMatrix::identity(2), SymMatrix::identity(3)});
  CHECK(max_abs(id5 - SymMatrix::identity(5)) == 0.0);

  const SymMatrix single{{4, 2}, {2, 5}};
  CHECK(max_abs(block_diag({single}) - single) == 0.0);

  CHECK_THROWS_AS(block_diag({}), DimensionMismatchError);
}

TEST_CASE("extract_blocks on the 2x2 example and mismatch error") {
  const SymMatrix c{{10, 2}, {2, 5}};
  const BlockGrid grid = extract_blocks(c, BlockPartition({1, 1}));
  CHECK(grid.block(0, 0)(0, 0) == 10.0);
  CHECK(grid.block(1, 1)(0, 0) == 5.0);
  CHECK(grid.block(0, 1)(0, 0) == 2.0);

  CHECK_THROWS_AS(extract_blocks(c, BlockPartition({1, 2})), DimensionMismatchError);
}

TEST_CASE("extract_blocks of a block-diagonal parent has zero off-diagonals") {
  const SymMatrix parent =
      block_diag({SymMatrix{{4, 2}, {2, 5}}, SymMatrix::identity(3)});
  const BlockGrid grid = extract_blocks(parent, BlockPartition({2, 3}));
  CHECK(max_abs(grid.block(0, 1)) == 0.0);
  CHECK(max_abs(grid.block(1, 0)) == 0.0);
}

TEST_CASE("extract then reassemble is the exact identity") {
  Rng rng(mix_seed(42, 0));
  SymMatrix a(5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j <= i; ++j) a.set(i, j, rng.normal());
  const BlockGrid grid = extract_blocks(a, BlockPartition({2, 3}));
  CHECK(max_abs(reassemble(grid) - a) == 0.0);
}

TEST_CASE("schur_complement on fixed instances") {
  const SpdMatrix c = cholesky(SymMatrix{{10, 2}, {2, 5}});
  CHECK(schur_complement(c, 1)(0, 0) == doctest::Approx(4.6).epsilon(1e-14));

  const SpdMatrix c2 = cholesky(SymMatrix{{2, -2}, {-2, 4}});
  CHECK(schur_complement(c2, 1)(0, 0) == doctest::Approx(2.0).epsilon(1e-14));

  const SpdMatrix bd = cholesky(
      block_diag({SymMatrix{{4, 2}, {2, 5}}, SymMatrix{{3, 1}, {1, 2}}}));
  const SymMatrix s = schur_complement(bd, 2);
  CHECK(max_abs(s - SymMatrix{{3, 1}, {1, 2}}) == 0.0);

  CHECK_THROWS_AS(schur_complement(c, 0), DimensionMismatchError);
  CHECK_THROWS_AS(schur_complement(c, 2), DimensionMismatchError);
}

TEST_CASE("schur complements of random SPD matrices stay SPD") {
  const GenConfig cfg = small_config(12);
  for (int t = 0; t < 30; ++t) {
    Rng rng(mix_seed(31, static_cast<std::uint64_t>(t)));
    const int dim = rng.uniform_int(2, 12);
    const int split = rng.uniform_int(1, dim - 1);
    const SpdMatrix m = random_spd_from(rng, dim, cfg);
    const SymMatrix s = schur_complement(m, split);
    CHECK_NOTHROW(cholesky(s));
    CHECK(sym_eigen(s).lambda.back() >= -1e-9 * (1.0 + max_abs(s)));
  }
}

TEST_CASE("block_inverse_2x2 reproduces the known inverse") {
  const SpdMatrix c = cholesky(SymMatrix{{2, -2}, {-2, 4}});
  const SymMatrix inv = block_inverse_2x2(c, 1);
  CHECK(inv(0, 0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(inv(0, 1) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(inv(1, 1) == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("block_inverse_2x2 is blockwise on block-diagonal input") {
  const SymMatrix b1{{4, 2}, {2, 5}};
  const SymMatrix b2{{3, 1}, {1, 2}};
  const SpdMatrix m = cholesky(block_diag({b1, b2}));
  const SymMatrix inv = block_inverse_2x2(m, 2);
  const BlockGrid grid = extract_blocks(inv, BlockPartition({2, 2}));
  CHECK(max_abs(grid.block(0, 1)) <= 1e-15);
  CHECK(max_abs(SymMatrix(grid.block(0, 0)) - invert(cholesky(b1))) <= 1e-12);
  CHECK(max_abs(SymMatrix(grid.block(1, 1)) - invert(cholesky(b2))) <= 1e-12);
}

TEST_CASE("block_inverse_2x2 matches the dense inverse on random SPD") {
  const GenConfig cfg = small_config(12);
  for (int t = 0; t < 30; ++t) {
    Rng rng(mix_seed(37, static_cast<std::uint64_t>(t)));
    const int dim = rng.uniform_int(2, 12);
    const int split = rng.uniform_int(1, dim - 1);
    const SpdMatrix m = random_spd_from(rng, dim, cfg);
    const SymMatrix dense = invert(m);
    CHECK(max_abs(block_inverse_2x2(m, split).to_matrix() - dense.to_matrix()) <=
          1e-8 * (1.0 + max_abs(dense)));
  }
}

TEST_CASE("identity residuals vanish on the 2x2 example") {
  const SpdMatrix c = cholesky(SymMatrix{{10, 2}, {2, 5}});
  const IdentityResiduals res = identity_residuals(c, 1);
  // |log 46 - log 10 - log 4.6| in exact arithmetic
  CHECK(res.fischer <= 1e-14);
  REQUIRE(res.woodbury.has_value());
  CHECK(*res.woodbury <= 1e-13);
  CHECK(res.sylvester <= 1e-13);
}

TEST_CASE("identity residuals vanish on decoupled input") {
  const SpdMatrix m = cholesky(
      block_diag({SymMatrix{{4, 2}, {2, 5}}, SymMatrix{{3, 1}, {1, 2}}}));
  const IdentityResiduals res = identity_residuals(m, 2);
  CHECK(res.fischer <= 1e-14);
  REQUIRE(res.woodbury.has_value());
  CHECK(*res.woodbury <= 1e-13);
  CHECK(res.sylvester <= 1e-13);
}

TEST_CASE("identity residuals stay small on random SPD with a random auxiliary") {
  const GenConfig cfg = small_config(8);
  for (int t = 0; t < 30; ++t) {
    Rng rng(mix_seed(41, static_cast<std::uint64_t>(t)));
    const int dim = rng.uniform_int(2, 8);
    const int split = rng.uniform_int(1, dim - 1);
    const SpdMatrix m = random_spd_from(rng, dim, cfg);
    const SpdMatrix d_aux = random_spd_from(rng, dim, cfg);
    const IdentityResiduals res = identity_residuals(m, split, &d_aux.base());
    CHECK(res.fischer <= 1e-8 * res.fischer_scale);
    REQUIRE(res.woodbury.has_value());
    CHECK(*res.woodbury <= 1e-8 * res.woodbury_scale);
    CHECK(res.sylvester <= 1e-8 * res.sylvester_scale);
  }
}

TEST_CASE("determinant product bounds hold on random SPD") {
  const GenConfig cfg = small_config(10);
  for (int t = 0; t < 30; ++t) {
    Rng rng(mix_seed(43, static_cast<std::uint64_t>(t)));
    const int dim = rng.uniform_int(2, 10);
    const int split = rng.uniform_int(1, dim - 1);
    const SpdMatrix m = random_spd_from(rng, dim, cfg);
    const BlockPartition part({split, dim - split});
    const double logdet_a = cholesky(diagonal_block(m.base(), part, 0)).log_det();
    const double logdet_d = cholesky(diagonal_block(m.base(), part, 1)).log_det();
    const double logdet_s = cholesky(schur_complement(m, split)).log_det();
    CHECK(logdet_s <= logdet_d + 1e-9);
    CHECK(m.log_det() <= logdet_a + logdet_d + 1e-9);
  }
}
