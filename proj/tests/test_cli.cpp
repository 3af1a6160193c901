#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "liplab/io.hpp"

namespace {

std::string cli_path() {
  const char* env = std::getenv("LIPLAB_BIN");
  REQUIRE_MESSAGE(env != nullptr, "LIPLAB_BIN must point at the liplab binary");
  return env;
}

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
  const std::string out_file =
      (std::filesystem::temp_directory_path() / "liplab_cli_stdout.txt").string();
  const std::string command = cli_path() + " " + args + " > " + out_file + " 2>/dev/null";
  const int status = std::system(command.c_str());
  RunResult result;
  result.exit_code = WEXITSTATUS(status);
  std::ifstream in(out_file);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  result.stdout_text = buffer.str();
  return result;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  liplab::write_file(path.string(), content);
  return path;
}

}  // namespace

TEST_CASE("verify exits 0 on an equilibrium and 1 on a refutation") {
  const auto game = temp_file("cli_mp.json", R"({"type":"matching_pennies","k":1,"m":2})");
  const auto uniform =
      temp_file("cli_uniform.json", R"({"type":"mixed","dists":[[0.5,0.5],[0.5,0.5]]})");
  const auto pure = temp_file("cli_pure.json", R"({"type":"pure","actions":[1,1]})");

  const RunResult ok = run_cli("verify --game " + game.string() + " --profile " +
                               uniform.string() + " --epsilon 0 --concept ane");
  CHECK(ok.exit_code == 0);
  CHECK(ok.stdout_text.find("\"satisfied\":true") != std::string::npos);

  const RunResult refuted = run_cli("verify --game " + game.string() + " --profile " +
                                    pure.string() + " --epsilon 0.5 --concept pne");
  CHECK(refuted.exit_code == 1);
  CHECK(refuted.stdout_text.find("\"max_regret\":1.0") != std::string::npos);
  CHECK(refuted.stdout_text.find("\"regret\":[0.0,1.0]") != std::string::npos);
}

TEST_CASE("verify exits 2 on malformed input and writes nothing") {
  const auto bad = temp_file("cli_bad.json", "this is not json");
  const auto out = std::filesystem::temp_directory_path() / "cli_should_not_exist.json";
  std::filesystem::remove(out);
  const RunResult result = run_cli("verify --game " + bad.string() + " --profile " + bad.string() +
                                   " --out " + out.string());
  CHECK(result.exit_code == 2);
  CHECK_FALSE(std::filesystem::exists(out));
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli("verify").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("adversary --algorithm nope").exit_code == 2);
}

TEST_CASE("adversary single run emits the outcome report") {
  const RunResult result =
      run_cli("adversary --algorithm uniform-output --k 2 --m 2 --alpha 0.1");
  CHECK(result.exit_code == 0);
  CHECK(result.stdout_text.find("\"verdict\":\"lower_bound_confirmed\"") != std::string::npos);
  CHECK(result.stdout_text.find("\"q\":0") != std::string::npos);
  CHECK(result.stdout_text.find("\"epsilon\":0.4") != std::string::npos);
}

TEST_CASE("adversary sweep emits csv and flags unmet hypotheses") {
  const RunResult result = run_cli(
      "adversary --algorithm scan-then-empirical --budget 3 --k 2 --k 12 --alpha 0.1 "
      "--format csv");
  CHECK(result.exit_code == 1);  // the k=2 run exceeds its budget
  CHECK(result.stdout_text.rfind("k,m,n,alpha,epsilon,rho,q,bound_q,regret_achieved,verdict", 0) ==
        0);
  CHECK(result.stdout_text.find("hypothesis_unmet") != std::string::npos);
  CHECK(result.stdout_text.find("failed_on_base_game") != std::string::npos);
}

TEST_CASE("scaled adversary run follows the scaled target") {
  const RunResult result =
      run_cli("adversary --algorithm uniform-output --k 2 --m 2 --alpha 0.1 --lambda 0.5");
  CHECK(result.exit_code == 0);
  CHECK(result.stdout_text.find("\"epsilon\":0.2") != std::string::npos);
  CHECK(result.stdout_text.find("\"regret_achieved\":0.25") != std::string::npos);
}

TEST_CASE("region trace pins the exact-equilibrium point") {
  const RunResult result = run_cli("region --m 2 --alpha 0.5 --grid 5");
  CHECK(result.exit_code == 0);
  std::istringstream lines(result.stdout_text);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "alpha,epsilon,rho,pinned_prob,feasible,max_prob");
  bool saw_quarter = false;
  while (std::getline(lines, line)) {
    if (line.find(",0.25,1,0.25") != std::string::npos) saw_quarter = true;
  }
  CHECK(saw_quarter);
}

TEST_CASE("reduce reports the accounting identity and the transfer") {
  const RunResult result = run_cli(
      "reduce --lambda 0.1 --lambda 0.3 --lambda 0.6 --lambda 1.0 --Lambda 2.0 --m 2 --seed 3 "
      "--epsilon 0.6 --delta 0.02");
  CHECK(result.exit_code == 0);
  CHECK(result.stdout_text.find("\"sizes\":[1,1,2,2]") != std::string::npos);
  CHECK(result.stdout_text.find("\"pop_dist_queries\":64") != std::string::npos);
  CHECK(result.stdout_text.find("\"base_dist_queries\":512") != std::string::npos);
  CHECK(result.stdout_text.find("\"accounting_ok\":true") != std::string::npos);
  CHECK(result.stdout_text.find("\"transfer_ok\":true") != std::string::npos);
}

TEST_CASE("reduce validates a contradictory total") {
  const RunResult result =
      run_cli("reduce --lambda 0.1 --lambda 0.3 --Lambda 9.0 --m 2 --epsilon 0.5");
  CHECK(result.exit_code == 2);
}

TEST_CASE("existence scan finds equilibria in the guaranteed regime") {
  const RunResult result = run_cli("existence --n 6 --trials 4 --seed 2");
  CHECK(result.exit_code == 0);
  std::istringstream lines(result.stdout_text);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "n,trial,lambda,lambda_alt,found,min_epsilon,profile");
  int rows = 0;
  std::string line;
  while (std::getline(lines, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 4);
}

TEST_CASE("the enumeration guard is overridable through the environment") {
  // 2^6 profiles exceed a cap of 4, so the scan must refuse to run.
  const std::string out_file =
      (std::filesystem::temp_directory_path() / "liplab_cli_guard.txt").string();
  const std::string command = "LIPLAB_MAX_ENUM=4 " + cli_path() +
                              " existence --n 6 --trials 1 > " + out_file + " 2>/dev/null";
  const int status = std::system(command.c_str());
  CHECK(WEXITSTATUS(status) == 2);
}

TEST_CASE("identical seeds give byte-identical outputs") {
  for (const std::string args :
       {std::string("existence --n 6 --trials 5 --seed 9"),
        std::string("adversary --algorithm br-dynamics --rounds 2 --k 2 --k 3 --format csv"),
        std::string("reduce --lambda 0.2 --lambda 0.8 --m 2 --seed 11 --epsilon 0.7 --delta 0.03 "
                     "--adversary rounding")}) {
    const RunResult first = run_cli(args);
    const RunResult second = run_cli(args);
    CHECK(first.exit_code == second.exit_code);
    CHECK(first.stdout_text == second.stdout_text);
    CHECK_FALSE(first.stdout_text.empty());
  }
}
