#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <string>

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code;
  nlohmann::json output;
};

/// Runs the built CLI, capturing stdout into a JSON document when possible.
CliResult run_cli(const std::string& args, bool parse_json = true) {
  const fs::path out = fs::temp_directory_path() / "qfim_cli_out.txt";
  const std::string command = std::string(QFIM_CLI_PATH) + " " + args + " > " + out.string() + " 2>/dev/null";
  const int status = std::system(command.c_str());
  CliResult result;
  result.exit_code = WEXITSTATUS(status);
  if (parse_json) {
    std::ifstream in(out);
    try {
      in >> result.output;
    } catch (...) {
      result.output = nullptr;
    }
  }
  return result;
}

}  // namespace

TEST_CASE("qfim-at: OAT at t=0 reports the SQL pair") {
  const CliResult r = run_cli("qfim-at --scenario oat --N 20 --t 0");
  REQUIRE(r.exit_code == 0);
  const auto eig = r.output.at("eigenvalues");
  CHECK(eig[0].get<double>() == doctest::Approx(20.0));
  CHECK(eig[1].get<double>() == doctest::Approx(20.0));
  CHECK(std::abs(eig[2].get<double>()) < 1e-8);
  CHECK(r.output.at("degeneracy_groups")[0].size() == 2);
}

TEST_CASE("connect: Jz to Jx at N=4") {
  const CliResult r = run_cli("connect --n 2 --N 4 --generator Jz --target Jx");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.at("connection_fidelity").get<double>() < 1e-6);
}

TEST_CASE("basis-dump emits 15 generators plus manifest for n=4") {
  const fs::path dir = fs::temp_directory_path() / "qfim_cli_basis";
  fs::remove_all(dir);
  const CliResult r = run_cli("basis-dump --n 4 --N 2 --out " + dir.string());
  REQUIRE(r.exit_code == 0);
  CHECK(fs::exists(dir / "manifest.json"));
  int generator_files = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".bin") ++generator_files;
  }
  CHECK(generator_files == 15);
}

TEST_CASE("validation failures exit with code 2") {
  CHECK(run_cli("run --scenario oat --t-max 0 --t-steps 2", false).exit_code == 2);
  CHECK(run_cli("run --scenario oat --n 4", false).exit_code == 2);
  CHECK(run_cli("connect --n 2 --N 2 --generator Jz --target nonexistent.json", false).exit_code == 2);
  CHECK(run_cli("nonsense-subcommand", false).exit_code == 2);
}

TEST_CASE("run: seeds and flags produce byte-identical CSV output") {
  const fs::path dir1 = fs::temp_directory_path() / "qfim_cli_run1";
  const fs::path dir2 = fs::temp_directory_path() / "qfim_cli_run2";
  fs::remove_all(dir1);
  fs::remove_all(dir2);
  REQUIRE(run_cli("run --scenario oat --N 8 --t-steps 7 --t-max 0.6 --format csv --out " + dir1.string(),
                  false)
              .exit_code == 0);
  REQUIRE(run_cli("run --scenario oat --N 8 --t-steps 7 --t-max 0.6 --format csv --out " + dir2.string(),
                  false)
              .exit_code == 0);
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  };
  const std::string a = slurp(dir1 / "eigenvalues_sorted.csv");
  CHECK_FALSE(a.empty());
  CHECK(a == slurp(dir2 / "eigenvalues_sorted.csv"));
}

TEST_CASE("qfim-at honors the rayleigh check flags") {
  const CliResult r = run_cli("qfim-at --scenario oat --N 8 --t 0.2 --rayleigh-samples 64 --seed 7");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.at("rayleigh_excess").get<double>() <= 1e-8);
  CHECK(r.output.at("seed") == 7);
}
