#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "frsr/harness.hpp"

namespace frsr {

/// Malformed or invalid run configuration; the message names the field path.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DistSpec {
  std::string kind;
  std::vector<Atom> atoms;  // discrete
  double r0 = 0.0;          // degenerate
  double lo = 0.0;
  double hi = 1.0;
  double a = 0.0;  // beta shape / truncnormal mu
  double b = 0.0;  // beta shape / truncnormal sigma
  std::optional<int> nodes;
  friend bool operator==(const DistSpec&, const DistSpec&) = default;
};

struct UtilitySpec {
  std::string family = "cara";
  std::vector<double> params{10.0};
  std::optional<PayoffDomain> domain;
  friend bool operator==(const UtilitySpec&, const UtilitySpec&) = default;
};

/// One `[name]` section. List-valued fields expand to their cartesian product.
struct ScenarioBlock {
  std::string name;
  std::vector<double> total{100.0};
  std::vector<double> beta;
  std::vector<double> rate;
  std::vector<double> share{0.2};
  DistSpec dist;
  UtilitySpec utility;
  friend bool operator==(const ScenarioBlock&, const ScenarioBlock&) = default;
};

struct RunConfig {
  static constexpr std::size_t kDefaultMaxGrid = 10'000;

  std::uint64_t seed = 0;
  std::size_t mc_samples = 1'000'000;
  unsigned jobs = 1;
  SolverTolerances tol;
  std::size_t max_grid = kDefaultMaxGrid;
  std::set<Proposition> propositions{Proposition::P3_1, Proposition::P4_1, Proposition::P5_1};
  std::optional<double> noise_scale;
  std::optional<std::string> timestamp;
  std::vector<ScenarioBlock> blocks;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses the line-oriented `key = value` format:
///
///   seed = 7
///   [worked]
///   alloc.L = 100
///   alloc.beta = [0.5, 0.75]
///   dist.kind = discrete
///   dist.atoms = 0.05:0.5, 0.15:0.5
///   contract.D = 0.10
///
/// Run-level keys precede the first section; scenario keys before any
/// section open an implicit block named "scenario".
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Canonical text form; parse_config(dump_config(c)) == c.
std::string dump_config(const RunConfig& config);

/// The default verification grid as explicit blocks.
std::vector<ScenarioBlock> default_grid_blocks();

/// Expands every block into scenarios; throws ConfigError past max_grid.
std::vector<Scenario> expand(const RunConfig& config);

ReturnDistribution build_distribution(const DistSpec& spec);

}  // namespace frsr
