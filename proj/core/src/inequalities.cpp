#include "detpert/inequalities.hpp"

#include <cmath>
#include <utility>

namespace detpert {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::holds:
      return "holds";
    case Verdict::violated:
      return "violated";
    case Verdict::skipped:
      return "skipped";
  }
  return "unknown";
}

std::string_view to_string(TheoremVariant v) {
  return v == TheoremVariant::theorem1 ? "theorem1" : "theorem2";
}

GapReport make_gap_report(std::string name, double lhs_log, double rhs_log,
                          double gap, double tol_base, Fingerprint fp) {
  const double tol = tol_base * (1.0 + std::abs(lhs_log) + std::abs(rhs_log));
  GapReport r;
  r.name = std::move(name);
  r.lhs_log = lhs_log;
  r.rhs_log = rhs_log;
  r.gap = gap;
  r.tol = tol;
  r.verdict = gap >= -tol ? Verdict::holds : Verdict::violated;
  r.fingerprint = fp;
  return r;
}

GapReport make_residual_report(std::string name, double residual, double bound,
                               Fingerprint fp) {
  GapReport r;
  r.name = std::move(name);
  r.lhs_log = residual;
  r.rhs_log = bound;
  r.gap = bound - residual;
  r.tol = 0.0;
  r.verdict = r.gap >= 0.0 ? Verdict::holds : Verdict::violated;
  r.fingerprint = fp;
  return r;
}

Fingerprint fingerprint_instance(const SpdMatrix& c, const BlockPartition& p,
                                 const std::vector<SpdMatrix>& ds,
                                 std::uint64_t seed, std::uint64_t substream) {
  Hasher h;
  h.add(static_cast<std::uint64_t>(c.dim()));
  h.add(c.base().data());
  for (int s : p.sizes()) h.add(static_cast<std::uint64_t>(s));
  for (const SpdMatrix& d : ds) h.add(d.base().data());
  return Fingerprint{h.value(), seed, substream};
}

double log_ratio(const SpdMatrix& c, const SymMatrix& d_psd) {
  if (c.dim() != d_psd.n()) {
    throw DimensionMismatchError("log_ratio requires equal dimensions");
  }
  return cholesky(c.base() + d_psd).log_det() - c.log_det();
}

namespace {

std::vector<SymMatrix> perturbation_bases(const TheoremInstance& inst) {
  std::vector<SymMatrix> out;
  out.reserve(inst.perturbations.size());
  for (const SpdMatrix& d : inst.perturbations) out.push_back(d.base());
  return out;
}

void check_instance(const TheoremInstance& inst) {
  if (inst.partition.total() != inst.c.dim()) {
    throw DimensionMismatchError("instance partition does not match C");
  }
  if (static_cast<int>(inst.perturbations.size()) != inst.partition.block_count()) {
    throw DimensionMismatchError("instance needs one perturbation per block");
  }
  for (int i = 0; i < inst.partition.block_count(); ++i) {
    if (inst.perturbations[i].dim() != inst.partition.size(i)) {
      throw DimensionMismatchError("perturbation block size mismatch");
    }
  }
}

}  // namespace

GapReport theorem1_gap(const TheoremInstance& inst, double tol_base) {
  check_instance(inst);
  const double lhs = log_ratio(inst.c, block_diag(perturbation_bases(inst)));
  double rhs = 0.0;
  for (int i = 0; i < inst.partition.block_count(); ++i) {
    const SpdMatrix ci = cholesky(diagonal_block(inst.c.base(), inst.partition, i));
    rhs += log_ratio(ci, inst.perturbations[i].base());
  }
  return make_gap_report("theorem1", lhs, rhs, lhs - rhs, tol_base,
                         inst.fingerprint);
}

ProductFormSides product_form_sides(const SymMatrix& b,
                                    const std::vector<SymMatrix>& d_blocks,
                                    const BlockPartition& p) {
  if (b.n() != p.total()) {
    throw DimensionMismatchError("product_form_sides: partition does not match B");
  }
  const SymMatrix d_full = block_diag(d_blocks);
  ProductFormSides out;
  out.lhs_log = logdet_identity_plus(b.to_matrix() * d_full.to_matrix());
  for (int i = 0; i < p.block_count(); ++i) {
    const SymMatrix bi = diagonal_block(b, p, i);
    out.rhs_log += logdet_identity_plus(bi.to_matrix() * d_blocks[i].to_matrix());
  }
  return out;
}

bool Theorem2Evaluation::forms_agree() const {
  return std::abs(direct_gap - equivalent_gap) <= agreement_tol;
}

Theorem2Evaluation theorem2_gap(const TheoremInstance& inst, double tol_base) {
  check_instance(inst);
  const int k = inst.partition.block_count();
  const SymMatrix b = invert(inst.c);

  double rhs = 0.0;
  for (int i = 0; i < k; ++i) {
    // C_i := (i-th diagonal block of C^{-1})^{-1}. For k = 1 that block is
    // C^{-1} itself, so C_i is C and the double inversion is skipped to keep
    // the degenerate gap exactly zero.
    const SpdMatrix ci =
        k == 1 ? inst.c
               : cholesky(invert(cholesky(diagonal_block(b, inst.partition, i))));
    rhs += log_ratio(ci, inst.perturbations[i].base());
  }
  const double lhs = log_ratio(inst.c, block_diag(perturbation_bases(inst)));

  const ProductFormSides sides =
      product_form_sides(b, perturbation_bases(inst), inst.partition);

  Theorem2Evaluation eval;
  eval.direct_gap = rhs - lhs;
  eval.equivalent_gap = sides.rhs_log - sides.lhs_log;
  eval.agreement_tol = 1e-8 * (1.0 + std::abs(lhs) + std::abs(rhs));
  eval.report = make_gap_report("theorem2", lhs, rhs, eval.direct_gap, tol_base,
                                inst.fingerprint);
  return eval;
}

GapReport lemma_gap(const SpdMatrix& u, const SpdMatrix& v, const SymMatrix& d,
                    double tol_base) {
  if (u.dim() != v.dim() || u.dim() != d.n()) {
    throw DimensionMismatchError("lemma_gap requires equal dimensions");
  }
  const LoewnerEvidence order = loewner_cmp(u.base(), v.base(), tol_base);
  if (!order.is_geq()) {
    throw PreconditionFailedError("lemma_gap requires U >= V in the Loewner order");
  }
  Hasher h;
  h.add(u.base().data()).add(v.base().data()).add(d.data());
  const double lhs = log_ratio(v, d);
  const double rhs = log_ratio(u, d);
  return make_gap_report("lemma", lhs, rhs, lhs - rhs, tol_base,
                         Fingerprint{h.value(), 0, 0});
}

GapReport grothendieck_gap(const SymMatrix& a, const SymMatrix& b,
                           double tol_base) {
  if (a.n() != b.n()) {
    throw DimensionMismatchError("grothendieck_gap requires equal dimensions");
  }
  const double log_ia = cholesky(add_scaled_identity(a, 1.0)).log_det();
  const double log_ib = cholesky(add_scaled_identity(b, 1.0)).log_det();
  const double log_iab = cholesky(add_scaled_identity(a + b, 1.0)).log_det();
  Hasher h;
  h.add(a.data()).add(b.data());
  return make_gap_report("grothendieck", log_iab, log_ia + log_ib,
                         log_ia + log_ib - log_iab, tol_base,
                         Fingerprint{h.value(), 0, 0});
}

WeylEvaluation weyl_gap(const SpdMatrix& b, const SymMatrix& w, double tol_base) {
  if (b.dim() != w.n()) {
    throw DimensionMismatchError("weyl_gap requires equal dimensions");
  }
  const SpdMatrix bw = cholesky(b.base() + w);
  const SymMatrix b_inv = invert(b);
  const SymMatrix bw_inv = invert(bw);

  WeylEvaluation eval;
  eval.det_gap = bw.log_det() - b.log_det();
  eval.det_scale = 1.0 + std::abs(bw.log_det()) + std::abs(b.log_det());
  eval.inverse_min_eig = sym_eigen(b_inv - bw_inv).lambda.back();
  eval.inverse_scale = 1.0 + max_abs(b_inv);

  Hasher h;
  h.add(b.base().data()).add(w.data());
  const double gap = std::min(eval.det_gap / eval.det_scale,
                              eval.inverse_min_eig / eval.inverse_scale);
  GapReport r;
  r.name = "weyl";
  r.lhs_log = bw.log_det();
  r.rhs_log = b.log_det();
  r.gap = gap;
  r.tol = tol_base;
  r.verdict = gap >= -tol_base ? Verdict::holds : Verdict::violated;
  r.fingerprint = Fingerprint{h.value(), 0, 0};
  eval.report = r;
  return eval;
}

GapReport generalized_gap(const SpdMatrix& c, const SpdMatrix& d,
                          const BlockPartition& partition, TheoremVariant variant,
                          double tol_base) {
  if (c.dim() != d.dim() || partition.total() != c.dim()) {
    throw DimensionMismatchError("generalized_gap: dimensions do not line up");
  }
  const int k = partition.block_count();
  const double full_ratio = log_ratio(c, d.base());
  const bool inverse_form = variant == TheoremVariant::theorem2;
  const SymMatrix b = inverse_form ? invert(c) : SymMatrix(1);

  double block_sum = 0.0;
  for (int i = 0; i < k; ++i) {
    const SpdMatrix ci =
        !inverse_form
            ? cholesky(diagonal_block(c.base(), partition, i))
            : (k == 1 ? c
                      : cholesky(invert(cholesky(diagonal_block(b, partition, i)))));
    const SymMatrix di = diagonal_block(d.base(), partition, i);
    block_sum += log_ratio(ci, di);
  }

  Hasher h;
  h.add(c.base().data()).add(d.base().data());
  for (int s : partition.sizes()) h.add(static_cast<std::uint64_t>(s));
  const Fingerprint fp{h.value(), 0, 0};

  if (variant == TheoremVariant::theorem1) {
    return make_gap_report("generalized/theorem1", full_ratio, block_sum,
                           full_ratio - block_sum, tol_base, fp);
  }
  return make_gap_report("generalized/theorem2", full_ratio, block_sum,
                         block_sum - full_ratio, tol_base, fp);
}

}  // namespace detpert
