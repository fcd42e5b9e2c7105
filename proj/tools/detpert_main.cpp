// detpert command line: verification suites, counterexample search, the
// path-superadditivity experiment, and Schur decomposition inspection.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "detpert/matrix_json.hpp"
#include "detpert/suites.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct CommonFlags {
  std::uint64_t seed = 42;
  int max_dim = 32;
  int max_blocks = 5;
  double cond_cap = 1e6;
  double psd_rank_deficient_prob = 1.0 / 3.0;
  double tol = detpert::kDefaultTolBase;
  std::string report_path;

  detpert::GenConfig gen() const {
    detpert::GenConfig g;
    g.seed = seed;
    g.max_dim = max_dim;
    g.max_blocks = max_blocks;
    g.cond_cap = cond_cap;
    g.psd_rank_deficient_prob = psd_rank_deficient_prob;
    return g;
  }
};

void add_common_flags(CLI::App& cmd, CommonFlags& f) {
  cmd.add_option("--seed", f.seed, "Base RNG seed");
  cmd.add_option("--max-dim", f.max_dim, "Largest matrix dimension generated");
  cmd.add_option("--max-blocks", f.max_blocks, "Largest block count generated");
  cmd.add_option("--cond-cap", f.cond_cap,
                 "Condition-number cap for generated SPD matrices");
  cmd.add_option("--psd-rank-deficient-prob", f.psd_rank_deficient_prob,
                 "Probability of rank-deficient PSD draws where PSD is allowed");
  cmd.add_option("--tol", f.tol, "Base tolerance coefficient");
  cmd.add_option("--report", f.report_path, "Write the JSON report to this path");
}

void write_report(const std::string& path, const nlohmann::ordered_json& j) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw detpert::IoError("cannot write report to " + path);
  out << j.dump(2) << '\n';
}

void print_summary(const detpert::RunReport& rep) {
  std::cout << "suite " << rep.suite << ": trials=" << rep.config.trials
            << " holds=" << rep.counts.holds
            << " violated=" << rep.counts.violated
            << " skipped=" << rep.counts.skipped << std::setprecision(6)
            << " min_gap=" << rep.min_gap << " ("
            << rep.wall_clock_sec << " s)\n";
  for (const detpert::Violation& v : rep.violations) {
    std::cout << "  VIOLATION " << v.report.name << " gap=" << std::setprecision(12)
              << v.report.gap << " tol=" << v.report.tol << '\n';
  }
}

void print_matrix(const detpert::SymMatrix& m, const std::string& label) {
  std::cout << label << " =\n";
  for (int i = 0; i < m.n(); ++i) {
    std::cout << "  ";
    for (int j = 0; j < m.n(); ++j) {
      std::cout << std::setw(12) << std::setprecision(6) << m(i, j);
    }
    std::cout << '\n';
  }
}

int run_verify(const std::string& suite, const CommonFlags& flags, int trials) {
  detpert::SuiteConfig cfg;
  cfg.gen = flags.gen();
  cfg.trials = trials;
  cfg.tol_base = flags.tol;

  std::vector<std::string> to_run;
  if (suite == "all") {
    to_run = detpert::suite_names();
  } else {
    to_run.push_back(suite);
  }

  long violated = 0;
  nlohmann::ordered_json all = nlohmann::ordered_json::array();
  for (const std::string& name : to_run) {
    const detpert::RunReport rep = detpert::run_suite(name, cfg);
    print_summary(rep);
    violated += rep.counts.violated;
    all.push_back(rep.to_json());
  }
  write_report(flags.report_path, suite == "all" ? all : all.front());
  return violated == 0 ? kExitOk : kExitViolation;
}

int run_counterexample(const std::string& target, const CommonFlags& flags,
                       int max_trials, bool no_seeds) {
  detpert::TheoremVariant variant;
  if (target == "theorem1-general") {
    variant = detpert::TheoremVariant::theorem1;
  } else if (target == "theorem2-general") {
    variant = detpert::TheoremVariant::theorem2;
  } else {
    throw CLI::ValidationError("--target",
                               "expected theorem1-general or theorem2-general");
  }

  detpert::SearchOptions opts;
  opts.max_trials = max_trials;
  opts.use_builtin_seeds = !no_seeds;
  opts.tol_base = flags.tol;
  const detpert::SearchResult res =
      detpert::search_counterexample(variant, flags.gen(), opts);

  nlohmann::ordered_json j;
  j["target"] = target;
  j["found"] = res.found;
  j["trials_used"] = res.trials_used;
  if (res.found) {
    const detpert::CounterexampleInstance& inst = *res.instance;
    std::cout << "violation of the generalized " << to_string(variant)
              << " statement (gap " << std::setprecision(12) << res.gap
              << ", trials used " << res.trials_used << ")\n";
    print_matrix(inst.c.base(), "C");
    print_matrix(inst.d.base(), "D");
    std::cout << "partition = [";
    for (std::size_t i = 0; i < inst.partition.sizes().size(); ++i) {
      std::cout << (i ? ", " : "") << inst.partition.sizes()[i];
    }
    std::cout << "]\n";
    j["gap"] = res.gap;
    j["c"] = detpert::matrix_to_json(inst.c.base(), &inst.partition);
    j["d"] = detpert::matrix_to_json(inst.d.base());
  } else {
    std::cout << "no violation found in " << res.trials_used << " trials\n";
  }
  write_report(flags.report_path, j);
  return res.found ? kExitOk : kExitViolation;
}

int run_brownian_cmd(const CommonFlags& flags, double t1, double t2, int n,
                     int m, int paths, double lambda_scale,
                     const std::string& csv_path) {
  detpert::BrownianConfig cfg;
  cfg.grid = detpert::GridSpec(t1, t2, n, m);
  cfg.paths = paths;
  cfg.seed = flags.seed;
  cfg.lambda_scale = lambda_scale;
  cfg.tol_base = flags.tol;

  const detpert::BrownianRunReport rep = detpert::run_brownian(cfg);
  std::cout << "brownian: paths=" << paths << " holds=" << rep.counts.holds
            << " violated=" << rep.counts.violated << std::setprecision(6)
            << " min_gap=" << rep.min_gap << " (" << rep.wall_clock_sec
            << " s)\n";
  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    if (!out) throw detpert::IoError("cannot write CSV to " + csv_path);
    rep.write_csv(out);
  }
  write_report(flags.report_path, rep.to_json());
  return rep.counts.violated == 0 ? kExitOk : kExitViolation;
}

int run_schur(const std::string& input, int split) {
  const detpert::MatrixFile file = detpert::load_matrix_json(input);
  int effective_split = split;
  if (effective_split <= 0) {
    if (!file.partition.has_value()) {
      throw detpert::IoError(
          "--split is required when the matrix file carries no partition");
    }
    effective_split = file.partition->size(0);
  }
  const detpert::SchurInspection s =
      detpert::schur_inspect(file.matrix, effective_split);
  detpert::print_schur_inspection(std::cout, s);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Determinant perturbation inequality toolkit"};
  app.require_subcommand(1);

  // verify
  CommonFlags verify_flags;
  std::string suite;
  int trials = 1000;
  CLI::App* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", suite, "Suite name or 'all'")
      ->required()
      ->check(CLI::IsMember({"theorem1", "theorem2", "lemma", "grothendieck",
                             "weyl", "fischer", "identities", "all"}));
  verify->add_option("--trials", trials, "Trials per suite");
  add_common_flags(*verify, verify_flags);

  // counterexample
  CommonFlags search_flags;
  search_flags.max_dim = 2;
  search_flags.max_blocks = 2;
  std::string target;
  int max_trials = 1000;
  bool no_seeds = false;
  CLI::App* search =
      app.add_subcommand("counterexample", "Search for a generalized-statement violation");
  search->add_option("--target", target, "theorem1-general or theorem2-general")
      ->required();
  search->add_option("--max-trials", max_trials, "Random trials after the seed instance");
  search->add_flag("--no-seeds", no_seeds, "Skip the built-in seed instances");
  add_common_flags(*search, search_flags);

  // brownian
  CommonFlags brownian_flags;
  double t1 = 1.0, t2 = 1.0, lambda_scale = 2.0;
  int grid_n = 16, grid_m = 16, paths = 100;
  std::string csv_path;
  CLI::App* brownian =
      app.add_subcommand("brownian", "Pathwise super-additivity experiment");
  brownian->add_option("--t1", t1, "Length of the first time window");
  brownian->add_option("--t2", t2, "Length of the second time window");
  brownian->add_option("--n", grid_n, "Segments in the first window");
  brownian->add_option("--m", grid_m, "Segments in the second window");
  brownian->add_option("--paths", paths, "Number of sampled outer paths");
  brownian->add_option("--lambda-scale", lambda_scale,
                       "Coefficient on the weight matrix in I + s*L*C");
  brownian->add_option("--csv", csv_path, "Write per-path rows as CSV");
  add_common_flags(*brownian, brownian_flags);

  // schur
  std::string input;
  int split = 0;
  CLI::App* schur = app.add_subcommand("schur", "Inspect a 2x2 Schur decomposition");
  schur->add_option("--input", input, "Matrix JSON file")->required();
  schur->add_option("--split", split, "First-block size (defaults to the file's partition)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (verify->parsed()) return run_verify(suite, verify_flags, trials);
    if (search->parsed())
      return run_counterexample(target, search_flags, max_trials, no_seeds);
    if (brownian->parsed())
      return run_brownian_cmd(brownian_flags, t1, t2, grid_n, grid_m, paths,
                              lambda_scale, csv_path);
    if (schur->parsed()) return run_schur(input, split);
  } catch (const detpert::NotPositiveDefiniteError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitViolation;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
