#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "frsr/cli.hpp"

using namespace frsr;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("frsr_cli_test_" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_config(const fs::path& dir, const std::string& text) {
  const fs::path p = dir / "run.cfg";
  std::ofstream(p) << text;
  return p;
}

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "frsr");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string field(const std::string& csv, int row, int col) {
  std::istringstream in(csv);
  std::string line;
  for (int i = 0; i <= row; ++i) std::getline(in, line);
  std::istringstream cells(line);
  std::string cell;
  for (int i = 0; i <= col; ++i) std::getline(cells, cell, ',');
  return cell;
}

const std::string kWorked =
    "seed = 7\nmc_samples = 20000\n[worked]\nalloc.L = 100\nalloc.beta = 0.5\n"
    "dist.kind = discrete\ndist.atoms = 0.05:0.5, 0.15:0.5\ncontract.D = 0.10\n"
    "contract.alpha = 0.25\n";

}  // namespace

TEST_CASE("solve writes alpha* for the worked scenario") {
  const fs::path dir = scratch("solve");
  const Run r = run({"solve", "--config", write_config(dir, kWorked).string(), "--out", dir.string()});
  CHECK(r.code == 0);
  const std::string csv = slurp(dir / "solve.csv");
  CHECK(field(csv, 0, 4) == "alpha_star");
  CHECK(std::stod(field(csv, 1, 4)) == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(std::stod(field(csv, 1, 5)) == doctest::Approx(0.10).epsilon(1e-9));
  CHECK(csv.find('\r') == std::string::npos);
}

TEST_CASE("solve exits 2 on no root and keeps the row") {
  const fs::path dir = scratch("noroot");
  std::string cfg = kWorked;
  cfg.replace(cfg.find("alloc.beta = 0.5"), 16, "alloc.beta = 0.3");
  const Run r = run({"solve", "--config", write_config(dir, cfg).string(), "--out", dir.string()});
  CHECK(r.code == 2);
  CHECK(field(slurp(dir / "solve.csv"), 1, 10) == "no_root");
}

TEST_CASE("config errors exit 1 with the field path") {
  const fs::path dir = scratch("bad");
  const Run r = run({"solve", "--config",
                     write_config(dir, "[x]\nalloc.beta = 0.5\ncontract.D = 0.1\n").string(), "--out",
                     dir.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("dist.kind") != std::string::npos);
  CHECK(run({"verify", "--config", (dir / "missing.cfg").string()}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  const Run broken = run({"verify", "--config",
                          write_config(dir, "[x]\nalloc.beta = 0.5\ncontract.D = 0.1\ndist.kind = uniform\n"
                                            "utility.family = quadratic\nutility.param = 2\n")
                              .string(),
                          "--out", dir.string()});
  CHECK(broken.code == 1);
}

TEST_CASE("compare reproduces the worked payoffs") {
  const fs::path dir = scratch("compare");
  const fs::path cfg = write_config(dir, kWorked);
  REQUIRE(run({"compare", "--config", cfg.string(), "--out", dir.string()}).code == 0);
  const std::string csv = slurp(dir / "compare.csv");
  CHECK(field(csv, 0, 1) == "e_p1");
  CHECK(std::stod(field(csv, 1, 1)) == doctest::Approx(3.75));
  CHECK(std::stod(field(csv, 1, 2)) == doctest::Approx(3.75));
  CHECK(std::stod(field(csv, 1, 5)) == doctest::Approx(1.25));
  CHECK(std::stod(field(csv, 1, 6)) == doctest::Approx(1.25));

  std::string low = kWorked;
  low.replace(low.find("contract.alpha = 0.25"), 21, "contract.alpha = 0.10");
  REQUIRE(run({"compare", "--config", write_config(dir, low).string(), "--out", dir.string()}).code == 0);
  const std::string csv2 = slurp(dir / "compare.csv");
  CHECK(std::stod(field(csv2, 1, 1)) == doctest::Approx(4.5));
  CHECK(std::stod(field(csv2, 1, 2)) == doctest::Approx(3.75));
}

TEST_CASE("verify at the boundary share exits 0 with a premise failure") {
  const fs::path dir = scratch("verify");
  const Run r = run({"verify", "--config", write_config(dir, kWorked).string(), "--out", dir.string()});
  CHECK(r.code == 0);
  const std::string json = slurp(dir / "report.json");
  CHECK(json.find("\"share_off_alpha_star\": false") != std::string::npos);
  CHECK(json.find("\"premise_failure\"") != std::string::npos);
  CHECK(json.rfind("{\n  \"run\"", 0) == 0);
  CHECK(json.find(" \n") == std::string::npos);
  CHECK(slurp(dir / "summary.csv").rfind("proposition,passes", 0) == 0);
}

TEST_CASE("dump-config round-trips with overrides applied") {
  const fs::path dir = scratch("dump");
  const Run r = run({"solve", "--config", write_config(dir, kWorked).string(), "--seed", "99",
                     "--jobs", "2", "--dump-config"});
  REQUIRE(r.code == 0);
  const RunConfig c = parse_config(r.out);
  CHECK(c.seed == 99);
  CHECK(c.jobs == 2);
  CHECK(dump_config(c) == r.out);
}

TEST_CASE("grid cap override") {
  const fs::path dir = scratch("cap");
  const fs::path cfg = write_config(dir, "max_grid = 10\npreset = default_grid\n");
  CHECK(run({"solve", "--config", cfg.string(), "--out", dir.string()}).code == 1);
  // past the cap the grid solves; beta = 0.9 with alpha = 0.2 leaves D* without a root
  CHECK(run({"solve", "--config", cfg.string(), "--out", dir.string(), "--max-grid", "320"}).code == 2);
}

TEST_CASE("the installed executable runs") {
  const char* exe = std::getenv("FRSR_CLI");
  if (!exe) return;
  const fs::path dir = scratch("exe");
  const fs::path cfg = write_config(dir, kWorked);
  const std::string cmd = std::string(exe) + " solve --config " + cfg.string() + " --out " + dir.string() + " 2>/dev/null";
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(fs::exists(dir / "solve.csv"));
}
