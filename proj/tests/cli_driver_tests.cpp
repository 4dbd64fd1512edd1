// End-to-end tests of the triup binary: exit codes, report fields,
// diagnostics and byte-identical reruns. The binary path and the data
// directory come in through compile definitions.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const auto dir = std::filesystem::temp_directory_path();
  const std::string tag = std::to_string(::getpid()) + "-" +
                          std::to_string(counter++);
  const auto out_path = dir / ("triup-out-" + tag + ".txt");
  const auto err_path = dir / ("triup-err-" + tag + ".txt");

  const std::string command = std::string("\"") + TRIUP_CLI_PATH + "\" " +
                              args + " > \"" + out_path.string() + "\" 2> \"" +
                              err_path.string() + "\"";
  const int status = std::system(command.c_str());

  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  std::filesystem::remove(out_path);
  std::filesystem::remove(err_path);
  return result;
}

std::string data_file(const char* name) {
  return std::string("--file \"") + TRIUP_DATA_DIR + "/" + name + "\"";
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("verify on the projection instance") {
  const RunResult r = run_cli("verify " + data_file("projection3.json"));
  REQUIRE(r.exit_code == 0);
  const auto report = nlohmann::json::parse(r.out);
  CHECK(report["command"] == "verify");
  CHECK(report["chain"]["lhs_product"].get<double>() ==
        doctest::Approx(10.0 / 81.0).epsilon(1e-12));
  CHECK(report["chain"]["rhs_expanded"].get<double>() ==
        doctest::Approx(2.0 / 27.0).epsilon(1e-12));
  CHECK(report["chain"]["rhs_centered"].get<double>() ==
        doctest::Approx(2.0 / 27.0).epsilon(1e-12));
  CHECK(report["passed"] == true);

  // identical invocations produce identical bytes
  const RunResult again = run_cli("verify " + data_file("projection3.json"));
  CHECK(again.out == r.out);
}

TEST_CASE("verify rejects the swap instance with the witness") {
  const RunResult r = run_cli("verify " + data_file("dense_swap.json"));
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("operator A is not 3-self-adjoint") != std::string::npos);
  CHECK(r.err.find("(2,1,1)") != std::string::npos);
}

TEST_CASE("selfadjoint flags the swap matrix") {
  const RunResult r = run_cli("selfadjoint " + data_file("dense_swap.json"));
  CHECK(r.exit_code == 1);
  const auto report = nlohmann::json::parse(r.out);
  CHECK(report["passed"] == false);
  const auto& first = report["operators"][0];
  CHECK(first["check"]["ok"] == false);
  CHECK(first["check"]["witness"]["i"] == 2);
  CHECK(first["check"]["witness"]["j"] == 1);
  CHECK(first["check"]["witness"]["k"] == 1);
  // the two diagonal companions pass
  CHECK(report["operators"][1]["check"]["ok"] == true);
  CHECK(report["operators"][2]["check"]["ok"] == true);
}

TEST_CASE("axioms on the quadrature space") {
  const RunResult r =
      run_cli("axioms " + data_file("quadrature16.json") + " --count 500");
  REQUIRE(r.exit_code == 0);
  const auto report = nlohmann::json::parse(r.out);
  CHECK(report["report"]["all_ok"] == true);
  CHECK(report["report"]["symmetry_max_deviation"].get<double>() == 0.0);
  CHECK(report["budget"] == 500);
}

TEST_CASE("parse errors exit 2 with a diagnostic") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto bad = dir / "triup-bad-instance.json";
  {
    std::ofstream out(bad);
    out << "{\"space\": {\"dimension\": 2, \"typo\": 1}}";
  }
  const RunResult r = run_cli("verify --file \"" + bad.string() + "\"");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("typo") != std::string::npos);
  CHECK(r.out.empty());
  std::filesystem::remove(bad);

  const RunResult missing = run_cli("verify --file /nonexistent/nope.json");
  CHECK(missing.exit_code == 2);
}

TEST_CASE("sweep reports and reruns byte-identically") {
  const std::string args = "sweep --dims 2..5 --count 200 --seed 42";
  const RunResult r = run_cli(args);
  REQUIRE(r.exit_code == 0);
  const auto report = nlohmann::json::parse(r.out);
  CHECK(report["counts"]["total"] == 200);
  const std::size_t classified = report["counts"]["pass"].get<std::size_t>() +
                                 report["counts"]["degenerate_tight"]
                                     .get<std::size_t>() +
                                 report["counts"]["fail"].get<std::size_t>();
  CHECK(classified == 200);
  CHECK(report["counts"]["fail"] == 0);
  CHECK(report["passed"] == true);

  const RunResult again = run_cli(args);
  CHECK(again.out == r.out);
}

TEST_CASE("sweep writes the per-instance CSV and JSONL") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto csv = dir / "triup-sweep.csv";
  const auto jsonl = dir / "triup-sweep.jsonl";
  const RunResult r = run_cli("sweep --dims 2..4 --count 50 --seed 3 --csv \"" +
                              csv.string() + "\" --jsonl \"" + jsonl.string() +
                              "\"");
  REQUIRE(r.exit_code == 0);

  const std::string text = slurp(csv);
  CHECK(text.rfind("instance,margin,degenerate_tight\n", 0) == 0);
  std::size_t lines = 0;
  for (char c : text)
    if (c == '\n') ++lines;
  CHECK(lines == 51);  // header + one row per instance

  // one parseable chain report per line
  std::ifstream in(jsonl);
  std::string line;
  std::size_t parsed = 0;
  while (std::getline(in, line)) {
    const auto object = nlohmann::json::parse(line);
    CHECK(object["instance"] == parsed);
    CHECK(object["chain"]["chain_ok"] == true);
    ++parsed;
  }
  CHECK(parsed == 50);

  std::filesystem::remove(csv);
  std::filesystem::remove(jsonl);
}

TEST_CASE("optimize joint search clears the projection witness") {
  const RunResult r =
      run_cli("optimize " + data_file("optimize_joint3.json") + " --restarts 8");
  REQUIRE(r.exit_code == 0);
  const auto report = nlohmann::json::parse(r.out);
  CHECK(report["result"]["best_ratio"].get<double>() >= 0.6);
  CHECK(report["result"]["falsification_flag"] == false);
  CHECK(report["result"]["restarts_used"] == 8);
  CHECK(report["witness_chain"]["chain_ok"] == true);
  CHECK(report["passed"] == true);
}

TEST_CASE("classical from a file and from the random suite") {
  const RunResult file_run =
      run_cli("classical " + data_file("classical_pair.json"));
  REQUIRE(file_run.exit_code == 0);
  const auto file_report = nlohmann::json::parse(file_run.out);
  CHECK(file_report["report"]["delta_a"].get<double>() == 1.0);
  CHECK(file_report["report"]["delta_b"].get<double>() == 0.0);
  CHECK(file_report["report"]["all_ok"] == true);

  const RunResult random_run =
      run_cli("classical --count 30 --dims 2..4 --seed 9");
  REQUIRE(random_run.exit_code == 0);
  const auto random_report = nlohmann::json::parse(random_run.out);
  CHECK(random_report["counts"]["fail"] == 0);
  CHECK(random_report["worst"]["max_commutator_expectation"].get<double>() <=
        1e-10);
}

TEST_CASE("timing flag adds the wall-clock field") {
  const RunResult plain = run_cli("verify " + data_file("projection3.json"));
  const RunResult timed =
      run_cli("--timing verify " + data_file("projection3.json"));
  CHECK(plain.out.find("wall_time_ms") == std::string::npos);
  CHECK(timed.out.find("wall_time_ms") != std::string::npos);
}

TEST_CASE("bad invocations exit 2") {
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("sweep --count 10").exit_code == 2);   // missing --seed
  CHECK(run_cli("sweep --dims nonsense --count 10 --seed 1").exit_code == 2);
  CHECK(run_cli("classical --count 10").exit_code == 2);  // missing --seed
}

}  // TEST_SUITE
