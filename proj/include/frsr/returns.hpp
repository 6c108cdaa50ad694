#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "frsr/discrete_law.hpp"
#include "frsr/kernels.hpp"
#include "frsr/quadrature.hpp"
#include "frsr/transform.hpp"

namespace frsr {

/// Law of the project return rate R, supported strictly inside (0, 1).
///
/// Families that naturally live on [0, 1] are clipped to [eps, 1 - eps] so
/// that every realization satisfies 0 < R < 1.
class ReturnDistribution {
 public:
  enum class Kind { Degenerate, Discrete, Uniform, ScaledBeta, TruncatedNormal };

  static constexpr double kEdge = 1e-9;

  static ReturnDistribution degenerate(double r0);
  static ReturnDistribution discrete(std::vector<Atom> atoms);
  static ReturnDistribution uniform(double lo, double hi);
  static ReturnDistribution scaled_beta(double a, double b, double lo, double hi);
  static ReturnDistribution truncated_normal(double mu, double sigma, double lo, double hi);

  Kind kind() const { return kind_; }
  bool is_discrete() const { return kind_ == Kind::Degenerate || kind_ == Kind::Discrete; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }

  /// Shape parameters: (a, b) for ScaledBeta, (mu, sigma) for TruncatedNormal.
  double shape1() const { return p1_; }
  double shape2() const { return p2_; }

  /// Atoms of a Degenerate or Discrete law; throws for continuous kinds.
  const DiscreteLaw& law() const;

  double pdf(double x) const;
  double cdf(double x) const;
  double quantile(double p) const;

  std::string describe() const;

  friend bool operator==(const ReturnDistribution&, const ReturnDistribution&) = default;

 private:
  ReturnDistribution() = default;

  Kind kind_ = Kind::Degenerate;
  double lo_ = 0.0;
  double hi_ = 0.0;
  double p1_ = 0.0;
  double p2_ = 0.0;
  double log_norm_ = 0.0;  // log of the pdf normalizer for continuous kinds
  DiscreteLaw law_;
};

std::string_view kind_name(ReturnDistribution::Kind kind);

/// Abscissae and probability weights such that E[f(R)] ~ sum w_i f(x_i).
struct NodeSet {
  std::vector<double> x;
  std::vector<double> w;
};

/// Integration nodes for `dist`. Continuous supports are split at every
/// break point strictly inside (lo, hi), each piece getting its own
/// Gauss-Legendre rule, so kinked integrands are never straddled.
NodeSet integration_nodes(const ReturnDistribution& dist, const QuadratureSpec& quad,
                          std::span<const double> breaks = {});

double mean(const ReturnDistribution& dist, const QuadratureSpec& quad = {});
double variance(const ReturnDistribution& dist, const QuadratureSpec& quad = {});

/// E[f(R)] for an arbitrary transform. `breaks` lists kinks of f.
/// Throws EvaluationError naming the abscissa if f is non-finite at a node.
double expect(const ReturnDistribution& dist, const std::function<double(double)>& f,
              const QuadratureSpec& quad = {}, std::span<const double> breaks = {});

/// E[t(R)] and E[t(R)^2] for a piecewise-linear rate transform, split at its kink.
kernels::Sums transform_moments(const ReturnDistribution& dist, const RateTransform& t,
                                const QuadratureSpec& quad = {});

double expect(const ReturnDistribution& dist, const RateTransform& t,
              const QuadratureSpec& quad = {});

/// E[min(R, D)], 0 < D < 1.
double partial_expectation_min(const ReturnDistribution& dist, double rate,
                               const QuadratureSpec& quad = {});

/// E[max(R - D, 0)], 0 < D < 1.
double partial_expectation_call(const ReturnDistribution& dist, double rate,
                                const QuadratureSpec& quad = {});

/// n i.i.d. draws, deterministic in `seed`.
std::vector<double> sample(const ReturnDistribution& dist, std::uint64_t seed, std::size_t n);

/// Finite law used for exact dominance tests: discrete kinds map to their own
/// atoms, continuous kinds to `atoms` midpoint quantiles of equal probability.
DiscreteLaw discretize(const ReturnDistribution& dist, std::size_t atoms = 512);

}  // namespace frsr
