#pragma once

#include <string>
#include <vector>

#include "frsr/config.hpp"
#include "frsr/harness.hpp"

namespace frsr {

inline constexpr const char* kToolVersion = "1.0.0";

/// 17 significant digits; NaN and infinities become an empty field.
std::string csv_number(double v);

struct SolveRow {
  std::string id;
  double beta = 0.0;
  double rate = 0.0;
  double share = 0.0;
  SolveReport alpha_star;
  std::optional<SolveReport> d_star;  ///< absent when the scenario aborted before D*
  std::string status;                 ///< success / boundary / no_root / not_converged
};

SolveRow solve_row(const Scenario& s);
std::string solve_csv(const std::vector<SolveRow>& rows);

struct CompareRow {
  std::string id;
  PayoffSummary payoffs;
  double eu_y1 = 0.0;  ///< per unit of funds
  double eu_y2 = 0.0;
  double ce_y1 = 0.0;
  double ce_y2 = 0.0;
};

CompareRow compare_row(const Scenario& s);
std::string compare_csv(const std::vector<CompareRow>& rows);

/// Timestamp recorded in reports: the config value, else SOURCE_DATE_EPOCH,
/// else the Unix epoch, so repeated runs stay byte-identical.
std::string report_timestamp(const RunConfig& config);

std::string report_json(const GridResult& result, std::uint64_t seed, const std::string& timestamp);
std::string summary_csv(const GridSummary& summary);

}  // namespace frsr
