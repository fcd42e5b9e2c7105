#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "detpert/brownian.hpp"
#include "detpert/inequalities.hpp"
#include "detpert/randgen.hpp"

namespace detpert {

// Configuration shared by the verification suites.
struct SuiteConfig {
  GenConfig gen;
  int trials = 1000;
  double tol_base = kDefaultTolBase;
};

struct Counts {
  long holds = 0;
  long violated = 0;
  long skipped = 0;
};

// A violated check carries the full instance so it can be replayed as a
// standalone fixture.
struct Violation {
  GapReport report;
  nlohmann::ordered_json instance;
};

// Outcome of one suite run. Counts are per trial (a trial holds when every
// check inside it holds; a skipped sub-check without a violation marks the
// trial skipped); violations list every failed check individually. The JSON
// form is byte-identical across reruns with the same configuration except
// for wall_clock_sec.
struct RunReport {
  std::string suite;
  SuiteConfig config;
  Counts counts;
  std::vector<Violation> violations;
  double min_gap = std::numeric_limits<double>::infinity();
  double wall_clock_sec = 0.0;

  nlohmann::ordered_json to_json() const;
};

// All suite names accepted by run_suite, in canonical order.
const std::vector<std::string>& suite_names();

// Runs one named suite: theorem1, theorem2, lemma, grothendieck, weyl,
// fischer, or identities. Throws IoError for unknown names.
RunReport run_suite(std::string_view suite, const SuiteConfig& cfg);

nlohmann::ordered_json gap_report_to_json(const GapReport& r);

// Pathwise super-additivity experiment over sampled outer paths.
struct BrownianConfig {
  GridSpec grid{1.0, 1.0, 16, 16};
  int paths = 100;
  std::uint64_t seed = 42;
  double lambda_scale = 2.0;
  double tol_base = kDefaultTolBase;
};

struct BrownianRow {
  int path_index = 0;
  double f_full = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
  double gap = 0.0;
};

struct BrownianRunReport {
  BrownianConfig config;
  Counts counts;
  std::vector<BrownianRow> rows;
  std::vector<Violation> violations;
  double min_gap = std::numeric_limits<double>::infinity();
  double wall_clock_sec = 0.0;

  nlohmann::ordered_json to_json() const;
  void write_csv(std::ostream& out) const;
};

BrownianRunReport run_brownian(const BrownianConfig& cfg);

// Decomposition view of one SPD matrix at a 2x2 split: blocks, log
// determinants, the three identity residuals, and the determinant slack
// logdet(D) - logdet(S_A) >= 0.
struct SchurInspection {
  int split = 0;
  SymMatrix a;
  SymMatrix d;
  SymMatrix schur;
  double logdet_m = 0.0;
  double logdet_a = 0.0;
  double logdet_d = 0.0;
  double logdet_schur = 0.0;
  double slack = 0.0;
  IdentityResiduals residuals;
};

SchurInspection schur_inspect(const SymMatrix& input, int split);

void print_schur_inspection(std::ostream& out, const SchurInspection& s);

}  // namespace detpert
