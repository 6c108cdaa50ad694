#include "frsr/cli.hpp"

#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "frsr/error.hpp"
#include "frsr/report.hpp"

namespace frsr {

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << text;
}

void ensure_dir(const std::filesystem::path& dir) {
  if (!dir.empty()) std::filesystem::create_directories(dir);
}

}  // namespace

int cmd_solve(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& log) {
  const std::vector<Scenario> batch = expand(config);
  std::vector<SolveRow> rows;
  rows.reserve(batch.size());
  int no_root = 0;
  for (const Scenario& s : batch) {
    rows.push_back(solve_row(s));
    if (rows.back().status == status_name(SolveStatus::NoRoot)) {
      ++no_root;
      const SolveRow& row = rows.back();
      const std::string& why = row.alpha_star.status == SolveStatus::NoRoot || !row.d_star
                                   ? row.alpha_star.message
                                   : row.d_star->message;
      log << s.id << ": no root (" << why << ")\n";
    }
  }
  ensure_dir(out_dir);
  write_file(out_dir / "solve.csv", solve_csv(rows));
  log << "solve: " << rows.size() << " scenarios, " << no_root << " without a root\n";
  return no_root > 0 ? kExitNoRoot : kExitOk;
}

int cmd_verify(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& log) {
  const std::vector<Scenario> batch = expand(config);
  GridOptions opts;
  opts.propositions = config.propositions;
  opts.mc_samples = config.mc_samples;
  opts.jobs = config.jobs;
  const GridResult result = run_grid(batch, opts);

  ensure_dir(out_dir);
  write_file(out_dir / "report.json", report_json(result, config.seed, report_timestamp(config)));
  write_file(out_dir / "summary.csv", summary_csv(result.summary));

  int errored = 0;
  for (Proposition p : config.propositions) {
    const PropositionSummary& s = result.summary.of(p);
    log << proposition_name(p) << ": " << s.passes << " pass, " << s.premise_failures
        << " premise failures, " << s.conclusion_failures << " conclusion failures";
    if (p == Proposition::P4_1) log << ", " << s.right_inequality_failures << " right-inequality failures";
    log << ", " << s.errored << " errored\n";
    errored += s.errored;
  }
  log << "mc: " << result.summary.mc_agreements << "/" << result.summary.mc_checks << " agree\n";
  for (const VerificationRecord& r : result.records) {
    if (!r.error.empty()) log << r.scenario_id << " " << proposition_name(r.proposition) << ": " << r.error << "\n";
  }
  if (result.summary.total_conclusion_failures() > 0) return kExitConclusion;
  return errored > 0 ? kExitInvariant : kExitOk;
}

int cmd_compare(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& log) {
  const std::vector<Scenario> batch = expand(config);
  std::vector<CompareRow> rows;
  rows.reserve(batch.size());
  for (const Scenario& s : batch) rows.push_back(compare_row(s));
  ensure_dir(out_dir);
  write_file(out_dir / "compare.csv", compare_csv(rows));
  log << "compare: " << rows.size() << " scenarios\n";
  return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"FR vs SR financing-contract engine"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  struct Options {
    std::string config;
    std::string out = ".";
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> mc_samples;
    std::optional<unsigned> jobs;
    std::optional<std::size_t> max_grid;
    bool dump = false;
  } opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "Scenario config file")->required();
    sub->add_option("--out", opt.out, "Output directory");
    sub->add_option("--seed", opt.seed, "Override the config seed");
    sub->add_option("--mc-samples", opt.mc_samples, "Monte Carlo draws per scenario (0 disables)");
    sub->add_option("--jobs", opt.jobs, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--max-grid", opt.max_grid, "Raise the scenario cap (default 10000)");
    sub->add_flag("--dump-config", opt.dump, "Print the effective config and exit");
  };
  CLI::App* solve = app.add_subcommand("solve", "Solve alpha* and D* per scenario");
  CLI::App* verify = app.add_subcommand("verify", "Verify the propositions over the grid");
  CLI::App* compare = app.add_subcommand("compare", "FR vs SR payoff and utility table");
  for (CLI::App* sub : {solve, verify, compare}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  RunConfig config;
  try {
    config = load_config(opt.config);
    if (opt.seed) config.seed = *opt.seed;
    if (opt.mc_samples) config.mc_samples = *opt.mc_samples;
    if (opt.jobs) config.jobs = *opt.jobs;
    if (opt.max_grid) config.max_grid = *opt.max_grid;
    if (opt.dump) {
      out << dump_config(config);
      return kExitOk;
    }
    if (solve->parsed()) return cmd_solve(config, opt.out, err);
    if (verify->parsed()) return cmd_verify(config, opt.out, err);
    return cmd_compare(config, opt.out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InvariantError& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvariant;
  }
}

}  // namespace frsr
