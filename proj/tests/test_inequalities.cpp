#include <cmath>

#include "doctest.h"

#include "detpert/inequalities.hpp"
#include "detpert/randgen.hpp"

using namespace detpert;

namespace {

GenConfig small_config(int max_dim, int max_blocks = 5) {
  GenConfig cfg;
  cfg.max_dim = max_dim;
  cfg.max_blocks = max_blocks;
  return cfg;
}

TheoremInstance make_instance(SymMatrix c, std::vector<SymMatrix> d_blocks) {
  std::vector<int> sizes;
  std::vector<SpdMatrix> ds;
  for (SymMatrix& d : d_blocks) {
    sizes.push_back(d.n());
    ds.push_back(cholesky(d));
  }
  SpdMatrix cs = cholesky(c);
  BlockPartition part(sizes);
  Fingerprint fp = fingerprint_instance(cs, part, ds, 0, 0);
  return TheoremInstance{std::move(cs), std::move(part), std::move(ds), fp};
}

}  // namespace

TEST_CASE("log_ratio on fixed instances") {
  const SpdMatrix c = cholesky(SymMatrix{{10, 2}, {2, 5}});
  CHECK(log_ratio(c, SymMatrix{{2, 1}, {1, 1}}) ==
        doctest::Approx(std::log(63.0 / 46.0)).epsilon(1e-13));
  CHECK(log_ratio(c, SymMatrix(2)) == 0.0);

  const SpdMatrix id = cholesky(SymMatrix::identity(5));
  CHECK(log_ratio(id, SymMatrix::identity(5)) ==
        doctest::Approx(5.0 * std::log(2.0)).epsilon(1e-14));

  CHECK_THROWS_AS(log_ratio(c, SymMatrix::identity(3)), DimensionMismatchError);
}

TEST_CASE("log_ratio is nonnegative for PSD perturbations") {
  const GenConfig cfg = small_config(12);
  for (int t = 0; t < 50; ++t) {
    Rng rng(mix_seed(3, static_cast<std::uint64_t>(t)));
    const int dim = rng.uniform_int(1, 12);
    const SpdMatrix c = random_spd_from(rng, dim, cfg);
    const SymMatrix d = random_psd_from(rng, dim, cfg);
    CHECK(log_ratio(c, d) >= -1e-12);
  }
}

TEST_CASE("block-perturbation gap on the worked 2x2 instance") {
  const TheoremInstance inst =
      make_instance(SymMatrix{{10, 2}, {2, 5}}, {SymMatrix{{2.0}}, SymMatrix{{1.0}}});
  const GapReport rep = theorem1_gap(inst);
  const double expected = std::log(68.0 / 46.0) - std::log(36.0 / 25.0);
  CHECK(std::abs(rep.gap - expected) <= 1e-12);
  CHECK(rep.verdict == Verdict::holds);
  CHECK(rep.gap > 0.0);
}

TEST_CASE("block-diagonal input gives equality in the block-perturbation gap") {
  const SymMatrix c = block_diag({SymMatrix{{4, 2}, {2, 5}}, SymMatrix{{3.0}}});
  const TheoremInstance inst =
      make_instance(c, {SymMatrix{{1, 0}, {0, 2}}, SymMatrix{{1.0}}});
  CHECK(std::abs(theorem1_gap(inst).gap) <= 1e-12);
}

TEST_CASE("single-block instances have exactly zero gap") {
  const TheoremInstance inst =
      make_instance(SymMatrix{{4, 2}, {2, 5}}, {SymMatrix{{1, 0}, {0, 2}}});
  CHECK(theorem1_gap(inst).gap == 0.0);
  const Theorem2Evaluation eval = theorem2_gap(inst);
  CHECK(eval.direct_gap == 0.0);
  CHECK(eval.equivalent_gap == 0.0);
}

TEST_CASE("inverse-block gap on the worked 2x2 instance") {
  // C^{-1} = [[1, 1/2], [1/2, 1/2]], so the derived blocks are 1 and 2; the
  // two sides are 14/4 and (2/1)*(4/2) = 4.
  const TheoremInstance inst =
      make_instance(SymMatrix{{2, -2}, {-2, 4}}, {SymMatrix{{1.0}}, SymMatrix{{2.0}}});
  const Theorem2Evaluation eval = theorem2_gap(inst);
  const double expected = std::log(4.0) - std::log(3.5);
  CHECK(std::abs(eval.direct_gap - expected) <= 1e-12);
  CHECK(eval.report.verdict == Verdict::holds);
  CHECK(eval.forms_agree());
  CHECK(std::abs(eval.equivalent_gap - expected) <= 1e-10);
}

TEST_CASE("inverse-block gap vanishes as the perturbations shrink") {
  const SymMatrix eps = 1e-8 * SymMatrix::identity(1);
  const TheoremInstance inst = make_instance(SymMatrix{{2, -2}, {-2, 4}}, {eps, eps});
  const Theorem2Evaluation eval = theorem2_gap(inst);
  CHECK(std::abs(eval.direct_gap) <= 1e-6);
  CHECK(eval.report.verdict == Verdict::holds);
}

TEST_CASE("inverse-block gap is zero for block-diagonal C") {
  const SymMatrix c = block_diag({SymMatrix{{4, 2}, {2, 5}}, SymMatrix{{3.0}}});
  const TheoremInstance inst =
      make_instance(c, {SymMatrix{{1, 0}, {0, 2}}, SymMatrix{{1.0}}});
  CHECK(std::abs(theorem2_gap(inst).direct_gap) <= 1e-12);
}

TEST_CASE("both theorem gaps hold on random instances with agreeing forms") {
  const GenConfig cfg = small_config(16, 4);
  for (int t = 0; t < 100; ++t) {
    const TheoremInstance inst =
        random_instance(TheoremVariant::theorem1, cfg, static_cast<std::uint64_t>(t));
    const GapReport r1 = theorem1_gap(inst);
    CHECK(r1.verdict == Verdict::holds);
    const Theorem2Evaluation r2 = theorem2_gap(inst);
    CHECK(r2.report.verdict == Verdict::holds);
    CHECK(r2.forms_agree());
  }
}

TEST_CASE("ratio monotonicity on scalars and equal operands") {
  const SpdMatrix u = cholesky(SymMatrix{{2.0}});
  const SpdMatrix v = cholesky(SymMatrix{{1.0}});
  const GapReport rep = lemma_gap(u, v, SymMatrix{{1.0}});
  CHECK(rep.gap == doctest::Approx(std::log(2.0) - std::log(1.5)).epsilon(1e-13));
  CHECK(rep.gap > 0.0);

  const SpdMatrix w = cholesky(SymMatrix{{4, 2}, {2, 5}});
  const SpdMatrix w2 = cholesky(SymMatrix{{4, 2}, {2, 5}});
  CHECK(lemma_gap(w, w2, SymMatrix::identity(2)).gap == 0.0);
}

TEST_CASE("ratio monotonicity rejects misordered operands") {
  const SpdMatrix u = cholesky(SymMatrix::identity(2));
  const SpdMatrix v = cholesky(2.0 * SymMatrix::identity(2));
  CHECK_THROWS_AS(lemma_gap(u, v, SymMatrix::identity(2)), PreconditionFailedError);
}

TEST_CASE("ratio monotonicity holds on random ordered pairs") {
  const GenConfig cfg = small_config(10);
  for (int t = 0; t < 50; ++t) {
    Rng rng(mix_seed(5, static_cast<std::uint64_t>(t)));
    const int dim = rng.uniform_int(1, 10);
    const SpdMatrix v = random_spd_from(rng, dim, cfg);
    const SymMatrix bump = random_psd_from(rng, dim, cfg);
    const SpdMatrix u = cholesky(v.base() + bump);
    const SymMatrix d = random_psd_from(rng, dim, cfg);
    const GapReport rep = lemma_gap(u, v, d);
    CHECK(rep.gap >= -rep.tol);
  }
}

TEST_CASE("product bound for identity-plus-PSD determinants on fixed instances") {
  const SymMatrix zero(2);
  CHECK(grothendieck_gap(zero, zero).gap == 0.0);

  const GapReport scalars = grothendieck_gap(SymMatrix{{1.0}}, SymMatrix{{1.0}});
  CHECK(scalars.gap ==
        doctest::Approx(std::log(4.0) - std::log(3.0)).epsilon(1e-13));

  CHECK_THROWS_AS(grothendieck_gap(zero, SymMatrix::identity(3)),
                  DimensionMismatchError);
}

TEST_CASE("product bound holds on random PSD pairs including rank-deficient") {
  GenConfig cfg = small_config(8);
  cfg.psd_rank_deficient_prob = 0.5;
  for (int t = 0; t < 100; ++t) {
    Rng rng(mix_seed(9, static_cast<std::uint64_t>(t)));
    const int dim = rng.uniform_int(1, 8);
    const SymMatrix a = random_psd_from(rng, dim, cfg);
    const SymMatrix b = random_psd_from(rng, dim, cfg);
    const GapReport rep = grothendieck_gap(a, b);
    CHECK(rep.gap >= -rep.tol);
  }
}

TEST_CASE("PSD-addition monotonicity on fixed instances") {
  const SpdMatrix b = cholesky(SymMatrix::identity(3));
  const WeylEvaluation zero = weyl_gap(b, SymMatrix(3));
  CHECK(zero.det_gap == 0.0);
  CHECK(zero.inverse_min_eig == 0.0);
  CHECK(zero.report.verdict == Verdict::holds);

  const WeylEvaluation ones = weyl_gap(b, SymMatrix::identity(3));
  CHECK(ones.det_gap == doctest::Approx(3.0 * std::log(2.0)).epsilon(1e-14));
  CHECK(ones.inverse_min_eig == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("PSD-addition monotonicity holds on random instances") {
  const GenConfig cfg = small_config(8);
  for (int t = 0; t < 50; ++t) {
    Rng rng(mix_seed(15, static_cast<std::uint64_t>(t)));
    const int dim = rng.uniform_int(1, 8);
    const SpdMatrix b = random_spd_from(rng, dim, cfg);
    const SymMatrix w = random_psd_from(rng, dim, cfg);
    const WeylEvaluation eval = weyl_gap(b, w);
    CHECK(eval.report.verdict == Verdict::holds);
    CHECK(eval.det_gap >= -1e-9 * eval.det_scale);
    CHECK(eval.inverse_min_eig >= -1e-9 * eval.inverse_scale);
  }
}

TEST_CASE("full-matrix perturbations break the block-perturbation bound") {
  const SpdMatrix c = cholesky(SymMatrix{{10, 2}, {2, 5}});
  const SpdMatrix d = cholesky(SymMatrix{{2, 1}, {1, 1}});
  const GapReport rep =
      generalized_gap(c, d, BlockPartition({1, 1}), TheoremVariant::theorem1);
  const double expected = std::log(63.0 / 46.0) - std::log(36.0 / 25.0);
  CHECK(std::abs(rep.gap - expected) <= 1e-12);
  CHECK(rep.verdict == Verdict::violated);
}

TEST_CASE("full-matrix perturbations break the inverse-block bound") {
  const SpdMatrix c = cholesky(SymMatrix{{2, -2}, {-2, 4}});
  const SpdMatrix d = cholesky(SymMatrix{{1, 1}, {1, 2}});
  const GapReport rep =
      generalized_gap(c, d, BlockPartition({1, 1}), TheoremVariant::theorem2);
  const double expected = std::log(4.0) - std::log(17.0 / 4.0);
  CHECK(std::abs(rep.gap - expected) <= 1e-12);
  CHECK(rep.verdict == Verdict::violated);
}

TEST_CASE("block-diagonal full perturbations reduce to the theorem gaps") {
  const SymMatrix d1{{1, 0}, {0, 2}};
  const SymMatrix d2{{1.5}};
  const SymMatrix c_base{{4, 2, 1}, {2, 5, 0}, {1, 0, 3}};
  const SpdMatrix c = cholesky(c_base);
  const SpdMatrix d_full = cholesky(block_diag({d1, d2}));
  const BlockPartition part({2, 1});

  const TheoremInstance inst = make_instance(c_base, {d1, d2});
  CHECK(generalized_gap(c, d_full, part, TheoremVariant::theorem1).gap ==
        theorem1_gap(inst).gap);
  CHECK(generalized_gap(c, d_full, part, TheoremVariant::theorem2).gap ==
        theorem2_gap(inst).direct_gap);
}

TEST_CASE("verdict thresholds follow the scaled tolerance policy") {
  Fingerprint fp;
  const GapReport pass = make_gap_report("x", 1.0, 2.0, -1e-10, 1e-9, fp);
  CHECK(pass.verdict == Verdict::holds);
  CHECK(pass.tol == doctest::Approx(4e-9));
  const GapReport fail = make_gap_report("x", 1.0, 2.0, -5e-9, 1e-9, fp);
  CHECK(fail.verdict == Verdict::violated);
}
