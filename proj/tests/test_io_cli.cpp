#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

#include "detpert/matrix_json.hpp"
#include "detpert/suites.hpp"

using namespace detpert;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / "detpert_tests";
  fs::create_directories(dir);
  return dir;
}

// Runs the installed CLI binary, captures stdout+stderr, returns exit code.
int run_cli(const std::string& args, std::string* output = nullptr) {
  const fs::path out_file = temp_dir() / "cli_output.txt";
  const std::string cmd =
      std::string(DETPERT_CLI_PATH) + " " + args + " > " + out_file.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  if (output != nullptr) {
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    *output = ss.str();
  }
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("matrix JSON round trip preserves entries and partition") {
  const fs::path path = temp_dir() / "roundtrip.json";
  const SymMatrix m{{10, 2}, {2, 5}};
  const BlockPartition part({1, 1});
  save_matrix_json(path, m, &part);

  const MatrixFile file = load_matrix_json(path);
  CHECK(max_abs(file.matrix - m) == 0.0);
  REQUIRE(file.partition.has_value());
  CHECK(file.partition->sizes() == std::vector<int>{1, 1});
}

TEST_CASE("matrix JSON loader symmetrizes and validates") {
  const MatrixFile skew =
      parse_matrix_json(nlohmann::json{{"n", 2}, {"data", {0.0, 1.0, 3.0, 0.0}}});
  CHECK(skew.matrix(0, 1) == 2.0);
  CHECK(skew.matrix(1, 0) == 2.0);

  CHECK_THROWS_AS(parse_matrix_json(nlohmann::json{{"n", 2}, {"data", {1.0}}}),
                  IoError);
  CHECK_THROWS_AS(parse_matrix_json(nlohmann::json{{"data", {1.0}}}), IoError);
  CHECK_THROWS_AS(
      parse_matrix_json(nlohmann::json{
          {"n", 2}, {"data", {1.0, 0.0, 0.0, 1.0}}, {"partition", {1, 2}}}),
      IoError);
  CHECK_THROWS_AS(load_matrix_json(temp_dir() / "does_not_exist.json"), IoError);
}

TEST_CASE("run reports carry consistent counts and a fixed schema") {
  SuiteConfig cfg;
  cfg.trials = 5;
  cfg.gen.max_dim = 6;
  cfg.gen.max_blocks = 3;
  const RunReport rep = run_suite("theorem1", cfg);
  CHECK(rep.counts.holds + rep.counts.violated + rep.counts.skipped == 5);

  const nlohmann::ordered_json j = rep.to_json();
  for (const char* key :
       {"suite", "seed", "trials", "tol", "config", "counts", "violations",
        "min_gap", "wall_clock_sec"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["suite"] == "theorem1");
  CHECK(j["counts"]["holds"].get<long>() == rep.counts.holds);
}

TEST_CASE("suite reports are byte-identical across reruns") {
  SuiteConfig cfg;
  cfg.trials = 50;
  cfg.gen.max_dim = 8;
  cfg.gen.max_blocks = 3;
  for (const std::string& name : suite_names()) {
    nlohmann::ordered_json a = run_suite(name, cfg).to_json();
    nlohmann::ordered_json b = run_suite(name, cfg).to_json();
    a.erase("wall_clock_sec");
    b.erase("wall_clock_sec");
    CHECK(a.dump() == b.dump());
  }
}

TEST_CASE("unknown suites are rejected") {
  SuiteConfig cfg;
  CHECK_THROWS_AS(run_suite("nosuch", cfg), IoError);
}

TEST_CASE("violations are dumped in full and replay byte-identically") {
  // An impossible tolerance (gap >= 1 required) forces every trial to
  // violate, exercising the instance-dump path.
  SuiteConfig cfg;
  cfg.trials = 3;
  cfg.gen.max_dim = 6;
  cfg.gen.max_blocks = 3;
  cfg.tol_base = -1.0;
  const RunReport rep = run_suite("theorem1", cfg);
  CHECK(rep.counts.violated == 3);
  REQUIRE(rep.violations.size() == 3);
  for (const Violation& v : rep.violations) {
    REQUIRE(v.instance.contains("c"));
    REQUIRE(v.instance.contains("d_blocks"));
    // The dumped instance parses back into a usable matrix.
    const MatrixFile c = parse_matrix_json(v.instance["c"]);
    CHECK(c.matrix.n() == v.instance["c"]["n"].get<int>());
    CHECK(c.partition.has_value());
  }

  nlohmann::ordered_json a = rep.to_json();
  nlohmann::ordered_json b = run_suite("theorem1", cfg).to_json();
  a.erase("wall_clock_sec");
  b.erase("wall_clock_sec");
  CHECK(a.dump() == b.dump());
}

TEST_CASE("zero-trial runs succeed with empty counts") {
  SuiteConfig cfg;
  cfg.trials = 0;
  const RunReport rep = run_suite("grothendieck", cfg);
  CHECK(rep.counts.holds == 0);
  CHECK(rep.counts.violated == 0);
  CHECK(rep.violations.empty());
}

TEST_CASE("schur_inspect summarizes the worked example") {
  const SchurInspection s = schur_inspect(SymMatrix{{10, 2}, {2, 5}}, 1);
  CHECK(s.schur(0, 0) == doctest::Approx(4.6).epsilon(1e-14));
  CHECK(s.slack ==
        doctest::Approx(std::log(5.0) - std::log(4.6)).epsilon(1e-13));
  CHECK(s.residuals.fischer <= 1e-14);
  CHECK_THROWS_AS(schur_inspect(SymMatrix{{1, 2}, {2, 1}}, 1),
                  NotPositiveDefiniteError);
}

TEST_CASE("cli: verify exit codes and report writing") {
  std::string out;
  CHECK(run_cli("verify --suite theorem1 --trials 25 --seed 42", &out) == 0);
  CHECK(out.find("holds=25") != std::string::npos);

  CHECK(run_cli("verify --suite all --trials 0") == 0);
  CHECK(run_cli("verify --suite nosuch") == 2);
  CHECK(run_cli("verify") == 2);

  const fs::path report = temp_dir() / "report.json";
  CHECK(run_cli("verify --suite weyl --trials 10 --max-dim 6 --report " +
                report.string()) == 0);
  std::ifstream in(report);
  nlohmann::json j;
  in >> j;
  CHECK(j["suite"] == "weyl");
  CHECK(j["counts"]["holds"] == 10);

  const fs::path all_report = temp_dir() / "all.json";
  CHECK(run_cli("verify --suite all --trials 2 --max-dim 6 --max-blocks 3 --report " +
                all_report.string()) == 0);
  nlohmann::json all;
  std::ifstream(all_report) >> all;
  REQUIRE(all.is_array());
  CHECK(all.size() == 7);
}

TEST_CASE("cli: verify reports are deterministic modulo wall clock") {
  const fs::path r1 = temp_dir() / "det1.json";
  const fs::path r2 = temp_dir() / "det2.json";
  const std::string flags = "verify --suite theorem2 --trials 40 --seed 9 --max-dim 10 ";
  CHECK(run_cli(flags + "--report " + r1.string()) == 0);
  CHECK(run_cli(flags + "--report " + r2.string()) == 0);
  nlohmann::ordered_json a, b;
  std::ifstream(r1) >> a;
  std::ifstream(r2) >> b;
  a.erase("wall_clock_sec");
  b.erase("wall_clock_sec");
  CHECK(a.dump() == b.dump());
}

TEST_CASE("cli: counterexample search") {
  std::string out;
  CHECK(run_cli("counterexample --target theorem1-general", &out) == 0);
  CHECK(out.find("10") != std::string::npos);
  CHECK(out.find("partition = [1, 1]") != std::string::npos);

  CHECK(run_cli("counterexample --target theorem2-general", &out) == 0);
  CHECK(out.find("-2") != std::string::npos);

  CHECK(run_cli("counterexample --target theorem1-general --no-seeds --max-trials 1") ==
        1);
  CHECK(run_cli("counterexample --target nosuch") == 2);
}

TEST_CASE("cli: brownian experiment and flag validation") {
  std::string out;
  const fs::path csv = temp_dir() / "paths.csv";
  CHECK(run_cli("brownian --t1 1 --t2 1 --n 8 --m 8 --paths 20 --seed 7 --csv " +
                    csv.string(),
                &out) == 0);
  CHECK(out.find("violated=0") != std::string::npos);
  std::ifstream csv_in(csv);
  std::string header;
  std::getline(csv_in, header);
  CHECK(header == "path,f_full,f_1,f_2,gap");
  int lines = 0;
  for (std::string line; std::getline(csv_in, line);) ++lines;
  CHECK(lines == 20);

  CHECK(run_cli("brownian --paths 1 --n 1 --m 1") == 0);
  CHECK(run_cli("brownian --t1 0") == 2);
}

TEST_CASE("cli: schur inspection") {
  const fs::path good = temp_dir() / "spd.json";
  save_matrix_json(good, SymMatrix{{10, 2}, {2, 5}});
  std::string out;
  CHECK(run_cli("schur --input " + good.string() + " --split 1", &out) == 0);
  CHECK(out.find("4.6") != std::string::npos);

  const fs::path with_partition = temp_dir() / "spd_part.json";
  const BlockPartition part({1, 1});
  save_matrix_json(with_partition, SymMatrix{{10, 2}, {2, 5}}, &part);
  CHECK(run_cli("schur --input " + with_partition.string(), &out) == 0);
  CHECK(out.find("Schur complement") != std::string::npos);

  const fs::path bad = temp_dir() / "notspd.json";
  save_matrix_json(bad, SymMatrix{{1, 2}, {2, 1}});
  CHECK(run_cli("schur --input " + bad.string() + " --split 1") == 1);

  CHECK(run_cli("schur --input " + good.string() + " --split 5") == 2);
  CHECK(run_cli("schur --input " + (temp_dir() / "missing.json").string() +
                " --split 1") == 2);
}
