#pragma once

#include <string>
#include <string_view>

#include "frsr/discrete_law.hpp"
#include "frsr/returns.hpp"
#include "frsr/utility.hpp"

namespace frsr {

/// A payoff rate s(R) that splits the project return between two parties.
class SharingRule {
 public:
  enum class Label {
    SrInvestor,
    SrFinancier,
    FrInvestor,
    FrFinancier,
    BoostedInvestor,
    BoostedFinancier,
  };

  static SharingRule sr_investor(double share);
  static SharingRule sr_financier(double share);
  static SharingRule fr_investor(double rate);
  static SharingRule fr_financier(double rate);
  static SharingRule boosted_investor(double rate, double multiplier);
  static SharingRule boosted_financier(double rate, double multiplier);

  Label label() const { return label_; }
  const RateTransform& transform() const { return transform_; }
  double operator()(double r) const { return transform_(r); }

  /// Boosted variants redistribute extra output and are not held to s(r) <= r.
  bool exempt_from_bounds() const {
    return label_ == Label::BoostedInvestor || label_ == Label::BoostedFinancier;
  }

 private:
  SharingRule(Label label, RateTransform t) : label_(label), transform_(t) {}
  Label label_;
  RateTransform transform_;
};

std::string_view label_name(SharingRule::Label label);

/// Outcome of checking the sharing-rule conditions on a support.
struct SharingCheck {
  bool bounded = true;         ///< 0 <= s(r) <= r at every node
  bool strictly_inside = true; ///< 0 < s(r) < r at every node
  bool complete = true;        ///< paired rules sum to r at every node
  double worst_excess = 0.0;   ///< largest |s_P + s_Y - r| seen
};

/// Checks the bound condition for `rule` and, when `partner` is given, that the
/// two rules exhaust the return. Nodes are the integration nodes of `dist`.
SharingCheck check_sharing(const SharingRule& rule, const SharingRule* partner,
                           const ReturnDistribution& dist, const QuadratureSpec& quad = {});

/// E[s(R)] / E[R]: the share for which the expectation condition holds.
double effective_share(const SharingRule& rule, const ReturnDistribution& dist,
                       const QuadratureSpec& quad = {});

/// Law of s(R) for a finite law of R; equal images merge (tolerance 1e-14).
DiscreteLaw induced_distribution(const SharingRule& rule, const DiscreteLaw& dist);

/// base, zero-mean independent noise, and the product-measure spread base + noise.
struct MpsPair {
  DiscreteLaw base;
  DiscreteLaw noise;
  DiscreteLaw spread;
};

/// Builds the spread by exact convolution. Throws ValidationError if the noise
/// mean exceeds 1e-12 in magnitude or the noise has zero variance.
MpsPair make_mps(const DiscreteLaw& base, const DiscreteLaw& noise);

/// Symmetric two-point noise {-scale, +scale} with probability 1/2 each.
DiscreteLaw symmetric_noise(double scale);

enum class Dominance { Dominates, Dominated, Equal, Incomparable };

std::string_view dominance_name(Dominance d);

struct SosdResult {
  Dominance verdict = Dominance::Incomparable;
  double max_violation = 0.0;  ///< largest breach of the integrated-CDF ordering
  double mean_gap = 0.0;       ///< E(x) - E(y)
};

/// Second-order stochastic dominance of x over y by the integrated-CDF test on
/// the merged atom grid. Unequal means (beyond 1e-10) give Incomparable.
SosdResult sosd_dominates(const DiscreteLaw& x, const DiscreteLaw& y, double tol = 1e-12);

struct TaylorGap {
  double approx = 0.0;  ///< E[u''(base)] Var(noise) / 2
  double exact = 0.0;   ///< E[u(spread)] - E[u(base)]
};

TaylorGap taylor_gap(const UtilityFunction& u, const MpsPair& pair);

}  // namespace frsr
