#include "detpert/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "detpert/matrix_json.hpp"

namespace detpert {

namespace {

std::string hash_hex(std::uint64_t h) {
  std::ostringstream os;
  os << "0x" << std::hex << std::setfill('0') << std::setw(16) << h;
  return os.str();
}

nlohmann::ordered_json fingerprint_to_json(const Fingerprint& fp) {
  nlohmann::ordered_json j;
  j["hash"] = hash_hex(fp.hash);
  j["seed"] = fp.seed;
  j["substream"] = fp.substream;
  return j;
}

nlohmann::ordered_json gen_config_to_json(const GenConfig& g) {
  nlohmann::ordered_json j;
  j["max_dim"] = g.max_dim;
  j["max_blocks"] = g.max_blocks;
  j["cond_cap"] = g.cond_cap;
  j["psd_rank_deficient_prob"] = g.psd_rank_deficient_prob;
  return j;
}

nlohmann::ordered_json instance_to_json(const TheoremInstance& inst) {
  nlohmann::ordered_json j;
  j["c"] = matrix_to_json(inst.c.base(), &inst.partition);
  nlohmann::ordered_json ds = nlohmann::ordered_json::array();
  for (const SpdMatrix& d : inst.perturbations) ds.push_back(matrix_to_json(d.base()));
  j["d_blocks"] = std::move(ds);
  return j;
}

nlohmann::ordered_json matrices_to_json(
    std::initializer_list<std::pair<const char*, const SymMatrix*>> items) {
  nlohmann::ordered_json j;
  for (const auto& [key, m] : items) j[key] = matrix_to_json(*m);
  return j;
}

// Collects the per-trial sub-reports and folds them into suite totals.
class TrialRecorder {
 public:
  explicit TrialRecorder(RunReport& out) : out_(out) {}

  void begin_trial() {
    trial_violated_ = false;
    trial_skipped_ = false;
  }

  void record(const GapReport& rep,
              const std::function<nlohmann::ordered_json()>& instance) {
    if (rep.verdict != Verdict::skipped) {
      out_.min_gap = std::min(out_.min_gap, rep.gap);
    }
    if (rep.verdict == Verdict::violated) {
      trial_violated_ = true;
      out_.violations.push_back(Violation{rep, instance()});
    } else if (rep.verdict == Verdict::skipped) {
      trial_skipped_ = true;
    }
  }

  void end_trial() {
    if (trial_violated_) {
      ++out_.counts.violated;
    } else if (trial_skipped_) {
      ++out_.counts.skipped;
    } else {
      ++out_.counts.holds;
    }
  }

 private:
  RunReport& out_;
  bool trial_violated_ = false;
  bool trial_skipped_ = false;
};

void run_theorem_suite(TheoremVariant variant, const SuiteConfig& cfg,
                       TrialRecorder& rec) {
  for (int t = 0; t < cfg.trials; ++t) {
    const TheoremInstance inst =
        random_instance(variant, cfg.gen, static_cast<std::uint64_t>(t));
    const auto dump = [&inst] { return instance_to_json(inst); };
    rec.begin_trial();
    if (variant == TheoremVariant::theorem1) {
      rec.record(theorem1_gap(inst, cfg.tol_base), dump);
    } else {
      const Theorem2Evaluation eval = theorem2_gap(inst, cfg.tol_base);
      rec.record(eval.report, dump);
      rec.record(make_residual_report(
                     "theorem2/equivalent-form-agreement",
                     std::abs(eval.direct_gap - eval.equivalent_gap),
                     eval.agreement_tol, inst.fingerprint),
                 dump);
    }
    rec.end_trial();
  }
}

void run_lemma_suite(const SuiteConfig& cfg, TrialRecorder& rec) {
  for (int t = 0; t < cfg.trials; ++t) {
    Rng rng(mix_seed(cfg.gen.seed, static_cast<std::uint64_t>(t)));
    const int dim = rng.uniform_int(1, cfg.gen.max_dim);
    const SpdMatrix v = random_spd_from(rng, dim, cfg.gen);
    const SymMatrix w = random_psd_from(rng, dim, cfg.gen);
    const SymMatrix d = random_psd_from(rng, dim, cfg.gen);

    rec.begin_trial();
    for (const double scale : {0.5, 1.0, 2.0}) {
      const SpdMatrix u = cholesky(v.base() + scale * w);
      GapReport rep = lemma_gap(u, v, d, cfg.tol_base);
      rep.name = "lemma/t=" + std::to_string(scale).substr(0, 3);
      rep.fingerprint.seed = cfg.gen.seed;
      rep.fingerprint.substream = static_cast<std::uint64_t>(t);
      rec.record(rep, [&] {
        return matrices_to_json({{"u", &u.base()}, {"v", &v.base()}, {"d", &d}});
      });
    }
    rec.end_trial();
  }
}

void run_grothendieck_suite(const SuiteConfig& cfg, TrialRecorder& rec) {
  for (int t = 0; t < cfg.trials; ++t) {
    Rng rng(mix_seed(cfg.gen.seed, static_cast<std::uint64_t>(t)));
    const int dim = rng.uniform_int(1, cfg.gen.max_dim);
    const SymMatrix a = random_psd_from(rng, dim, cfg.gen);
    const SymMatrix b = random_psd_from(rng, dim, cfg.gen);
    rec.begin_trial();
    GapReport rep = grothendieck_gap(a, b, cfg.tol_base);
    rep.fingerprint.seed = cfg.gen.seed;
    rep.fingerprint.substream = static_cast<std::uint64_t>(t);
    rec.record(rep, [&] { return matrices_to_json({{"a", &a}, {"b", &b}}); });
    rec.end_trial();
  }
}

void run_weyl_suite(const SuiteConfig& cfg, TrialRecorder& rec) {
  for (int t = 0; t < cfg.trials; ++t) {
    Rng rng(mix_seed(cfg.gen.seed, static_cast<std::uint64_t>(t)));
    const int dim = rng.uniform_int(1, cfg.gen.max_dim);
    const SpdMatrix b = random_spd_from(rng, dim, cfg.gen);
    const SymMatrix w = random_psd_from(rng, dim, cfg.gen);
    rec.begin_trial();
    WeylEvaluation eval = weyl_gap(b, w, cfg.tol_base);
    eval.report.fingerprint.seed = cfg.gen.seed;
    eval.report.fingerprint.substream = static_cast<std::uint64_t>(t);
    rec.record(eval.report,
               [&] { return matrices_to_json({{"b", &b.base()}, {"w", &w}}); });
    rec.end_trial();
  }
}

void run_fischer_suite(const SuiteConfig& cfg, TrialRecorder& rec) {
  const int max_dim = std::max(2, cfg.gen.max_dim);
  for (int t = 0; t < cfg.trials; ++t) {
    Rng rng(mix_seed(cfg.gen.seed, static_cast<std::uint64_t>(t)));
    const int dim = rng.uniform_int(2, max_dim);
    const int split = rng.uniform_int(1, dim - 1);
    const SpdMatrix m = random_spd_from(rng, dim, cfg.gen);
    const Fingerprint fp{
        Hasher().add(m.base().data()).add(static_cast<std::uint64_t>(split)).value(),
        cfg.gen.seed, static_cast<std::uint64_t>(t)};
    const auto dump = [&] {
      nlohmann::ordered_json j = matrices_to_json({{"m", &m.base()}});
      j["split"] = split;
      return j;
    };

    const BlockPartition part({split, dim - split});
    const SpdMatrix a = cholesky(diagonal_block(m.base(), part, 0));
    const SpdMatrix d = cholesky(diagonal_block(m.base(), part, 1));
    const SpdMatrix s_a = cholesky(schur_complement(m, split));

    rec.begin_trial();
    const double identity_residual =
        std::abs(m.log_det() - a.log_det() - s_a.log_det());
    const double identity_scale =
        1.0 + std::abs(m.log_det()) + std::abs(a.log_det()) + std::abs(s_a.log_det());
    rec.record(make_residual_report("fischer/identity", identity_residual,
                                    1e-8 * identity_scale, fp),
               dump);
    rec.record(make_gap_report("fischer/slack", d.log_det(), s_a.log_det(),
                               d.log_det() - s_a.log_det(), cfg.tol_base, fp),
               dump);
    rec.record(make_gap_report("fischer/product", a.log_det() + d.log_det(),
                               m.log_det(),
                               a.log_det() + d.log_det() - m.log_det(),
                               cfg.tol_base, fp),
               dump);
    rec.end_trial();
  }
}

void run_identities_suite(const SuiteConfig& cfg, TrialRecorder& rec) {
  const int max_dim = std::max(2, cfg.gen.max_dim);
  for (int t = 0; t < cfg.trials; ++t) {
    Rng rng(mix_seed(cfg.gen.seed, static_cast<std::uint64_t>(t)));
    const int dim = rng.uniform_int(2, max_dim);
    const int split = rng.uniform_int(1, dim - 1);
    const SpdMatrix m = random_spd_from(rng, dim, cfg.gen);
    const SpdMatrix d_aux = random_spd_from(rng, dim, cfg.gen);
    const Fingerprint fp{
        Hasher().add(m.base().data()).add(static_cast<std::uint64_t>(split)).value(),
        cfg.gen.seed, static_cast<std::uint64_t>(t)};
    const auto dump = [&] {
      nlohmann::ordered_json j =
          matrices_to_json({{"m", &m.base()}, {"d_aux", &d_aux.base()}});
      j["split"] = split;
      return j;
    };

    rec.begin_trial();
    const IdentityResiduals res = identity_residuals(m, split, &d_aux.base());
    rec.record(make_residual_report("identities/fischer", res.fischer,
                                    1e-8 * res.fischer_scale, fp),
               dump);
    if (res.woodbury.has_value()) {
      rec.record(make_residual_report("identities/woodbury", *res.woodbury,
                                      1e-8 * res.woodbury_scale, fp),
                 dump);
    } else {
      GapReport skipped;
      skipped.name = "identities/woodbury";
      skipped.verdict = Verdict::skipped;
      skipped.fingerprint = fp;
      rec.record(skipped, dump);
    }
    rec.record(make_residual_report("identities/sylvester", res.sylvester,
                                    1e-8 * res.sylvester_scale, fp),
               dump);

    const SymMatrix dense_inverse = invert(m);
    const double reconstruction =
        max_abs(block_inverse_2x2(m, split).to_matrix() - dense_inverse.to_matrix());
    rec.record(make_residual_report("identities/block-inverse", reconstruction,
                                    1e-8 * (1.0 + max_abs(dense_inverse)), fp),
               dump);

    const SymMatrix schur = schur_complement(m, split);
    const LoewnerEvidence positivity =
        loewner_cmp(schur, SymMatrix(schur.n()), cfg.tol_base);
    GapReport pos;
    pos.name = "identities/schur-spd";
    pos.lhs_log = positivity.min_eig;
    pos.rhs_log = 0.0;
    pos.gap = positivity.min_eig;
    pos.tol = -positivity.threshold();  // tol_base * (1 + max_abs(S_A))
    pos.verdict = positivity.is_geq() ? Verdict::holds : Verdict::violated;
    pos.fingerprint = fp;
    rec.record(pos, dump);
    rec.end_trial();
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "theorem1", "theorem2", "lemma", "grothendieck",
      "weyl",     "fischer",  "identities"};
  return names;
}

RunReport run_suite(std::string_view suite, const SuiteConfig& cfg) {
  cfg.gen.validate();
  if (cfg.trials < 0) throw IoError("trials must be nonnegative");

  RunReport out;
  out.suite = std::string(suite);
  out.config = cfg;
  TrialRecorder rec(out);

  const auto start = std::chrono::steady_clock::now();
  if (suite == "theorem1") {
    run_theorem_suite(TheoremVariant::theorem1, cfg, rec);
  } else if (suite == "theorem2") {
    run_theorem_suite(TheoremVariant::theorem2, cfg, rec);
  } else if (suite == "lemma") {
    run_lemma_suite(cfg, rec);
  } else if (suite == "grothendieck") {
    run_grothendieck_suite(cfg, rec);
  } else if (suite == "weyl") {
    run_weyl_suite(cfg, rec);
  } else if (suite == "fischer") {
    run_fischer_suite(cfg, rec);
  } else if (suite == "identities") {
    run_identities_suite(cfg, rec);
  } else {
    throw IoError("unknown suite: " + std::string(suite));
  }
  out.wall_clock_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return out;
}

nlohmann::ordered_json gap_report_to_json(const GapReport& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["lhs_log"] = r.lhs_log;
  j["rhs_log"] = r.rhs_log;
  j["gap"] = r.gap;
  j["tol"] = r.tol;
  j["verdict"] = std::string(to_string(r.verdict));
  j["fingerprint"] = fingerprint_to_json(r.fingerprint);
  return j;
}

nlohmann::ordered_json RunReport::to_json() const {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["seed"] = config.gen.seed;
  j["trials"] = config.trials;
  j["tol"] = config.tol_base;
  j["config"] = gen_config_to_json(config.gen);
  j["counts"] = {{"holds", counts.holds},
                 {"violated", counts.violated},
                 {"skipped", counts.skipped}};
  nlohmann::ordered_json v = nlohmann::ordered_json::array();
  for (const Violation& viol : violations) {
    nlohmann::ordered_json entry = gap_report_to_json(viol.report);
    entry["instance"] = viol.instance;
    v.push_back(std::move(entry));
  }
  j["violations"] = std::move(v);
  j["min_gap"] = min_gap;
  j["wall_clock_sec"] = wall_clock_sec;
  return j;
}

BrownianRunReport run_brownian(const BrownianConfig& cfg) {
  if (cfg.paths < 1) throw IoError("paths must be >= 1");
  BrownianRunReport out;
  out.config = cfg;

  const auto start = std::chrono::steady_clock::now();
  for (int p = 0; p < cfg.paths; ++p) {
    const PathInstance path =
        sample_path(cfg.grid, cfg.seed, static_cast<std::uint64_t>(p));
    const SuperaddReport rep =
        superadditivity_gap(path, cfg.lambda_scale, cfg.tol_base);
    out.rows.push_back(BrownianRow{p, rep.f_full, rep.f1, rep.f2, rep.gap});
    out.min_gap = std::min(out.min_gap, rep.gap);
    if (rep.verdict == Verdict::violated) {
      ++out.counts.violated;
      GapReport gr;
      gr.name = "brownian/superadditivity";
      gr.lhs_log = rep.f_full;
      gr.rhs_log = rep.f1 + rep.f2;
      gr.gap = rep.gap;
      gr.tol = rep.tol;
      gr.verdict = rep.verdict;
      gr.fingerprint = rep.fingerprint;
      nlohmann::ordered_json inst;
      inst["grid"] = {{"t1", cfg.grid.t1},
                      {"t2", cfg.grid.t2},
                      {"n", cfg.grid.n},
                      {"m", cfg.grid.m}};
      inst["lambda_scale"] = cfg.lambda_scale;
      inst["z"] = path.z;
      out.violations.push_back(Violation{std::move(gr), std::move(inst)});
    } else {
      ++out.counts.holds;
    }
  }
  out.wall_clock_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return out;
}

nlohmann::ordered_json BrownianRunReport::to_json() const {
  nlohmann::ordered_json j;
  j["suite"] = "brownian";
  j["seed"] = config.seed;
  j["trials"] = config.paths;
  j["tol"] = config.tol_base;
  j["config"] = {{"t1", config.grid.t1},
                 {"t2", config.grid.t2},
                 {"n", config.grid.n},
                 {"m", config.grid.m},
                 {"lambda_scale", config.lambda_scale}};
  j["counts"] = {{"holds", counts.holds},
                 {"violated", counts.violated},
                 {"skipped", counts.skipped}};
  nlohmann::ordered_json v = nlohmann::ordered_json::array();
  for (const Violation& viol : violations) {
    nlohmann::ordered_json entry = gap_report_to_json(viol.report);
    entry["instance"] = viol.instance;
    v.push_back(std::move(entry));
  }
  j["violations"] = std::move(v);
  j["min_gap"] = min_gap;
  j["wall_clock_sec"] = wall_clock_sec;
  return j;
}

void BrownianRunReport::write_csv(std::ostream& out) const {
  out << "path,f_full,f_1,f_2,gap\n";
  out << std::setprecision(17);
  for (const BrownianRow& r : rows) {
    out << r.path_index << ',' << r.f_full << ',' << r.f1 << ',' << r.f2 << ','
        << r.gap << '\n';
  }
}

SchurInspection schur_inspect(const SymMatrix& input, int split) {
  const SpdMatrix m = cholesky(input);  // NotPositiveDefiniteError if not SPD
  if (split < 1 || split >= m.dim()) {
    throw DimensionMismatchError("split must satisfy 1 <= split < n");
  }
  const BlockPartition part({split, m.dim() - split});

  SchurInspection out;
  out.split = split;
  out.a = diagonal_block(m.base(), part, 0);
  out.d = diagonal_block(m.base(), part, 1);
  out.schur = schur_complement(m, split);
  out.logdet_m = m.log_det();
  out.logdet_a = cholesky(out.a).log_det();
  out.logdet_d = cholesky(out.d).log_det();
  out.logdet_schur = cholesky(out.schur).log_det();
  out.slack = out.logdet_d - out.logdet_schur;
  out.residuals = identity_residuals(m, split);
  return out;
}

namespace {

void print_sym(std::ostream& out, const SymMatrix& m, const char* label) {
  out << label << " (" << m.n() << "x" << m.n() << "):\n";
  for (int i = 0; i < m.n(); ++i) {
    out << "  ";
    for (int j = 0; j < m.n(); ++j) {
      out << std::setw(14) << std::setprecision(6) << m(i, j);
    }
    out << '\n';
  }
}

}  // namespace

void print_schur_inspection(std::ostream& out, const SchurInspection& s) {
  print_sym(out, s.a, "A block");
  print_sym(out, s.d, "D block");
  print_sym(out, s.schur, "Schur complement S_A");
  out << std::setprecision(12);
  out << "logdet M    = " << s.logdet_m << '\n';
  out << "logdet A    = " << s.logdet_a << '\n';
  out << "logdet D    = " << s.logdet_d << '\n';
  out << "logdet S_A  = " << s.logdet_schur << '\n';
  out << "fischer residual   |logdet M - logdet A - logdet S_A| = "
      << s.residuals.fischer << '\n';
  if (s.residuals.woodbury.has_value()) {
    out << "woodbury residual  = " << *s.residuals.woodbury << '\n';
  } else {
    out << "woodbury residual  = skipped (S_D not SPD at working precision)\n";
  }
  out << "sylvester residual = " << s.residuals.sylvester << '\n';
  out << "fischer slack      logdet D - logdet S_A = " << s.slack << '\n';
}

}  // namespace detpert
