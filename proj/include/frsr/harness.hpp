#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "frsr/sharing.hpp"
#include "frsr/solvers.hpp"

namespace frsr {

/// One fully specified model instance.
struct Scenario {
  std::string id;
  FundAllocation alloc{100.0, 0.5};
  ReturnDistribution dist = ReturnDistribution::degenerate(0.5);
  double rate = 0.1;   ///< FR rate D
  double share = 0.2;  ///< SR investor share alpha
  UtilityFunction utility{UtilityFunction::Family::Cara, 10.0, {0.0, 1.0}};
  QuadratureSpec quad;
  SolverTolerances tol;
  std::uint64_t seed = 0;
};

/// Largest per-unit payoff any construction evaluates: boosted output
/// m * R with m = 1 + lambda/2 < 1.25.
constexpr double kMaxBoost = 1.25;

/// Default utility domain for a return law: [0, 1.25 hi (1 + 1e-6)].
PayoffDomain default_payoff_domain(const ReturnDistribution& dist);

/// The four-family suite on a domain: CARA(10), Quadratic(0.5), Power(0.5), LogShift(0.05).
std::vector<UtilityFunction> utility_suite(PayoffDomain domain);

/// Per-scenario seed: splitmix64 finalizer of seed + (index + 1) * golden ratio.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

enum class Proposition { P3_1, P4_1, P5_1 };
std::string_view proposition_name(Proposition p);
std::optional<Proposition> parse_proposition(std::string_view s);

enum class Outcome { Pass, ConclusionFailure, PremiseFailure, Errored };
std::string_view outcome_name(Outcome o);

using WitnessValue = std::variant<double, bool, std::string>;

struct WitnessEntry {
  std::string name;
  WitnessValue value;
};

struct McCheck {
  std::string quantity;
  double quadrature = 0.0;
  double estimate = 0.0;
  double std_error = 0.0;
  bool agrees = false;
};

struct VerificationRecord {
  std::string scenario_id;
  Proposition proposition = Proposition::P3_1;
  std::vector<Flag> premises;
  std::optional<bool> conclusion_holds;  ///< set only when every premise holds
  std::vector<WitnessEntry> witness;
  std::optional<McCheck> mc;
  std::string error;  ///< non-empty when the scenario could not be evaluated

  Outcome outcome() const;
  bool premises_hold() const;
  const WitnessValue* find(std::string_view name) const;
  double number(std::string_view name) const;
  bool boolean(std::string_view name) const;
};

/// Solves alpha*, then samples 20 shares on each side and checks the sign of h.
VerificationRecord verify_p31(const Scenario& s);

struct P41Options {
  std::optional<double> noise_scale;  ///< default 0.1 x support width of the base
  std::optional<MpsPair> left_case;   ///< constructed equal-mean case for the left inequality
};

/// MPS and SOSD check of the investor share alpha* R and its spread, plus the
/// equal-mean premise audit of the left inequality.
VerificationRecord verify_p41(const Scenario& s, const P41Options& opts = {});

/// Runs the Pareto reallocation construction.
VerificationRecord verify_p51(const Scenario& s);

/// Quadrature vs Monte Carlo for one rate transform.
McCheck mc_cross_check(const ReturnDistribution& dist, const RateTransform& t,
                       std::string quantity, std::span<const double> draws,
                       const QuadratureSpec& quad);

struct PropositionSummary {
  int passes = 0;
  int premise_failures = 0;
  int conclusion_failures = 0;
  int errored = 0;
  int right_inequality_failures = 0;  ///< spread check only
};

struct GridSummary {
  PropositionSummary p31, p41, p51;
  int mc_checks = 0;
  int mc_agreements = 0;

  const PropositionSummary& of(Proposition p) const;
  PropositionSummary& of(Proposition p);
  int total_conclusion_failures() const;
};

struct GridResult {
  std::vector<VerificationRecord> records;  ///< scenario order, then proposition order
  GridSummary summary;
};

struct GridOptions {
  std::set<Proposition> propositions{Proposition::P3_1, Proposition::P4_1, Proposition::P5_1};
  std::size_t mc_samples = 1'000'000;  ///< 0 disables the Monte Carlo cross-check
  unsigned jobs = 1;
};

GridResult run_grid(const std::vector<Scenario>& batch, const GridOptions& opts);

/// 5 distribution kinds x 4 utilities x beta {0.5, 0.6, 0.75, 0.9} x D {0.05, 0.1, 0.2, 0.4}.
std::vector<Scenario> default_grid(std::uint64_t seed = 0);

/// Distributions and utility parameters used by the default grid.
std::vector<std::pair<std::string, ReturnDistribution>> default_distributions();

}  // namespace frsr
