// End-to-end exercise of the command-line tool: generate -> solve -> verify,
// exit codes, and the bit-identical trace coincidence at unit relaxation.
// Takes the CLI binary path as argv[1]; returns the number of failures.

#include "rrrkit/serialize.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
  std::cout << (ok ? "ok   " : "FAIL ") << what << '\n';
  if (!ok) ++failures;
}

int run_command(const std::string& command) {
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_smoke <path-to-cli>\n";
    return 1;
  }
  const std::string cli = argv[1];
  const fs::path dir = fs::temp_directory_path() / "rrrkit_cli_smoke";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto in_dir = [&](const std::string& name) { return (dir / name).string(); };

  // generate
  expect(run_command(cli + " generate --family gaussian --m 24 --n 10 --field real --seed 7 --out " +
                     in_dir("inst.json") + " > /dev/null") == 0,
         "generate exits 0");
  expect(fs::exists(dir / "inst.json"), "generate writes the instance file");
  {
    const rrrkit::AnyInstance inst = rrrkit::load_instance(in_dir("inst.json"));
    const auto& concrete = std::get<rrrkit::RealInstance>(inst);
    expect(concrete.m() == 24 && concrete.n() == 10, "generated dimensions round-trip");
  }
  expect(run_command(cli + " generate --family dft --n 8 --oversample 2 --out " +
                     in_dir("dft.json") + " > /dev/null 2>&1") == 0,
         "dft generation exits 0");
  {
    const rrrkit::AnyInstance inst = rrrkit::load_instance(in_dir("dft.json"));
    expect(std::holds_alternative<rrrkit::ComplexInstance>(inst) &&
               std::get<rrrkit::ComplexInstance>(inst).m() == 16,
           "dft instance is complex with m = oversample * n");
  }
  expect(run_command(cli + " generate --family gaussian --m 4 --out " + in_dir("bad.json") +
                     " > /dev/null 2>&1") == 2,
         "missing required flag exits 2");

  // solve
  expect(run_command(cli + " solve --inst " + in_dir("inst.json") +
                     " --alg rrr --beta 0.5 --max-iters 100000 --tol 1e-9 --seed 1 --trace " +
                     in_dir("trace.csv") + " --summary " + in_dir("summary.json") +
                     " > /dev/null") == 0,
         "solve exits 0");
  {
    const std::string summary = slurp(dir / "summary.json");
    expect(summary.find("\"status\": \"solved\"") != std::string::npos,
           "solve summary reports solved");
    const std::string trace = slurp(dir / "trace.csv");
    expect(trace.rfind("t,f_R,f_GS,grad_norm,feas_gap,signal_error\n", 0) == 0,
           "trace carries the fixed CSV header");
  }
  expect(run_command(cli + " solve --inst " + in_dir("inst.json") +
                     " --alg warp > /dev/null 2>&1") == 2,
         "unknown algorithm exits 2");
  expect(run_command(cli + " solve --inst " + in_dir("dft.json") +
                     " --alg gs --max-iters 200 --trace-every 200 --seed 2 --summary " +
                     in_dir("gs_summary.json") + " > /dev/null") == 0,
         "budget-capped run still exits 0");
  expect(slurp(dir / "gs_summary.json").find("\"status\": \"max_iters\"") != std::string::npos,
         "exhausted budget is reported as max_iters, not an error");

  // unit-relaxation coincidence is bit-exact across the two spellings
  expect(run_command(cli + " solve --inst " + in_dir("inst.json") +
                     " --alg rrr --beta 1 --seed 5 --trace " + in_dir("rrr1.csv") +
                     " > /dev/null") == 0,
         "rrr beta=1 solve exits 0");
  expect(run_command(cli + " solve --inst " + in_dir("inst.json") + " --alg dr --seed 5 --trace " +
                     in_dir("dr.csv") + " > /dev/null") == 0,
         "dr solve exits 0");
  expect(slurp(dir / "rrr1.csv") == slurp(dir / "dr.csv"),
         "rrr beta=1 and dr traces are bit-identical");

  // verify
  expect(run_command(cli + " verify --suite gradcheck --samples 40 --seed 3 --out " +
                     in_dir("report.json") + " > /dev/null") == 0,
         "verify gradcheck passes with exit 0");
  expect(slurp(dir / "report.json").find("\"passed\": true") != std::string::npos,
         "verify report records the pass");
  expect(run_command(cli + " verify --suite wirtinger --m 4 --n 2 --samples 30 > /dev/null") == 0,
         "verify wirtinger passes");
  expect(run_command(cli + " verify --suite nonsense > /dev/null 2>&1") == 2,
         "unknown suite exits 2");

  // fig1 (reduced budget keeps the smoke test quick; the seed solves well inside it)
  expect(run_command("cd " + dir.string() + " && " + cli +
                     " fig1 --seed 4 --out-prefix smoke > /dev/null") == 0,
         "fig1 exits 0");
  expect(fs::exists(dir / "smoke_beta05.csv") && fs::exists(dir / "smoke_beta10.csv") &&
             fs::exists(dir / "smoke_summary.json"),
         "fig1 writes both traces and the summary");

  fs::remove_all(dir);
  if (failures != 0) std::cout << failures << " cli check(s) failed\n";
  return failures;
}
