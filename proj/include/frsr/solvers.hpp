#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "frsr/contracts.hpp"
#include "frsr/utility.hpp"

namespace frsr {

struct Flag {
  std::string name;
  bool value = false;
  friend bool operator==(const Flag&, const Flag&) = default;
};

enum class SolveTarget { AlphaStar, DStar, DpIndifference, DyIndifference, Lambda, Gamma };
enum class SolveStatus { Success, Boundary, NoRoot, NotConverged };

std::string_view target_name(SolveTarget t);
std::string_view status_name(SolveStatus s);

struct SolverTolerances {
  double rate = 1e-10;     ///< bracket width on rates and shares
  double payoff = 1e-9;    ///< currency residuals, as a fraction of L
  double utility = 1e-8;   ///< expected-utility residuals
  int max_iter = 200;
  friend bool operator==(const SolverTolerances&, const SolverTolerances&) = default;
};

struct SolveReport {
  SolveTarget target = SolveTarget::AlphaStar;
  SolveStatus status = SolveStatus::NoRoot;
  double value = 0.0;
  double residual = 0.0;  ///< |objective at value|
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int iterations = 0;
  std::vector<Flag> flags;
  std::string message;

  bool ok() const { return status == SolveStatus::Success; }
  bool has_value() const { return status == SolveStatus::Success || status == SolveStatus::Boundary; }
  /// Value of a named flag; false if absent.
  bool flag(std::string_view name) const;
  void set_flag(std::string name, bool value);
};

/// alpha* with E(P2) = E(P1), by bisection on [0, 1] and cross-checked against
/// the affine closed form. Flags: beta_ge_half, sign_change_found,
/// closed_form_agrees, alpha_star_lt_half.
SolveReport solve_alpha_star(const FundAllocation& alloc, const ReturnDistribution& dist,
                             double rate, const QuadratureSpec& quad = {},
                             const SolverTolerances& tol = {});

/// D* with E(Y1) = E(Y2) at the given SR share.
SolveReport solve_d_star(const FundAllocation& alloc, const ReturnDistribution& dist,
                         double share, const QuadratureSpec& quad = {},
                         const SolverTolerances& tol = {});

enum class Side { Financier, Investor };

/// FR rate D making a party indifferent, per unit of funds, between the FR
/// payoff (min(mR, D) or max(mR - D, 0)) and the SR payoff share * R.
SolveReport solve_indifference_rate(const UtilityFunction& u, const ReturnDistribution& dist,
                                    Side side, double share, double multiplier,
                                    const QuadratureSpec& quad = {},
                                    const SolverTolerances& tol = {});

/// One half-split re-solve of the boosted FR contract.
struct HalfSplitCheck {
  Side side = Side::Financier;
  double multiplier = 1.0;  ///< 1 + lambda/2 or 1 + gamma/2
  double share = 0.0;       ///< 1 - alpha + lambda/2 or alpha + gamma/2
  SolveReport resolved;     ///< rate re-solved for the boosted contract
  double reused_rate = 0.0;      ///< D_P / D_Y from the unboosted solve
  double reused_residual = 0.0;  ///< utility gap if that rate is kept
};

struct ParetoReport {
  SolveReport alpha_star;
  SolveReport lambda;
  SolveReport gamma;
  SolveReport d_p;
  SolveReport d_y;
  std::vector<HalfSplitCheck> half_split;
  std::vector<Flag> premises;

  // Pareto comparison (per unit of funds); only meaningful when premises hold.
  double multiplier = 1.0;
  double fr_financier_eu = 0.0;
  double fr_investor_eu = 0.0;
  double sr_financier_eu = 0.0;
  double sr_investor_eu = 0.0;
  bool financier_weak = false;
  bool investor_weak = false;
  bool strict_somewhere = false;

  bool premises_hold() const;
  bool improves() const { return financier_weak && investor_weak && strict_somewhere; }
};

/// Reallocation construction: lambda = alpha - alpha* (financier branch),
/// gamma = alpha* - alpha (investor branch), indifference rates D_P, D_Y and
/// the half-split boosted re-solves. Premise violations are reported as flags.
ParetoReport pareto_construct(const FundAllocation& alloc, const ReturnDistribution& dist,
                              double rate, const UtilityFunction& u, double share,
                              const QuadratureSpec& quad = {}, const SolverTolerances& tol = {});

}  // namespace frsr
