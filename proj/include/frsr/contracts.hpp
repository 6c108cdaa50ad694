#pragma once

#include <variant>

#include "frsr/returns.hpp"

namespace frsr {

/// Total investable funds L split into SR funds Z1 = beta L and FR funds
/// Z2 = (1 - beta) L.
class FundAllocation {
 public:
  FundAllocation(double total, double beta);

  double total() const { return total_; }
  double beta() const { return beta_; }
  double sr_funds() const { return total_ * beta_; }
  /// Defined as L - Z1 so that Z1 + Z2 reproduces L.
  double fr_funds() const { return total_ - sr_funds(); }

  friend bool operator==(const FundAllocation&, const FundAllocation&) = default;

 private:
  double total_;
  double beta_;
};

struct FixedReturn {
  double rate;  ///< D in (0, 1)
};

struct StochasticReturn {
  double share;  ///< investor share alpha in (0, 1)
};

using ContractTerms = std::variant<FixedReturn, StochasticReturn>;

/// Throws ValidationError unless the rate / share lies in (0, 1).
ContractTerms validated(ContractTerms terms);

struct PayoffSplit {
  double financier;
  double investor;
};

/// FR payoff of a single realization: (z2 min(r, D), z2 max(r - D, 0)).
PayoffSplit payoff_fr(double funds, double r, double rate);

/// SR payoff of a single realization: ((1 - alpha) z1 r, alpha z1 r).
PayoffSplit payoff_sr(double funds, double r, double share);

PayoffSplit payoff(const ContractTerms& terms, double funds, double r);

/// Aggregate expected payoffs and financier variances under both models.
struct PayoffSummary {
  double e_p1 = 0.0;  ///< SR financier
  double e_p2 = 0.0;  ///< FR financier
  double e_y1 = 0.0;  ///< SR investor
  double e_y2 = 0.0;  ///< FR investor
  double v_p1 = 0.0;
  double v_p2 = 0.0;
};

PayoffSummary expected_payoffs(const FundAllocation& alloc, const ReturnDistribution& dist,
                               double rate, double share, const QuadratureSpec& quad = {});

/// h(alpha) = E(P2) - E(P1). Accepts the closed interval alpha in [0, 1] so
/// solvers can probe the bracket ends.
double financier_gap(const FundAllocation& alloc, const ReturnDistribution& dist, double rate,
                     double share, const QuadratureSpec& quad = {});

}  // namespace frsr
