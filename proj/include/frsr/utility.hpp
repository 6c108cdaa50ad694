#pragma once

#include <cmath>
#include <functional>
#include <string>

#include "frsr/returns.hpp"

namespace frsr {

/// Closed payoff interval on which a utility is evaluated.
struct PayoffDomain {
  double lo = 0.0;
  double hi = 1.0;
  friend bool operator==(const PayoffDomain&, const PayoffDomain&) = default;
};

/// Concave, increasing utility over a bounded payoff domain.
///
///   Cara(a):      u(x) = (1 - exp(-a x)) / a
///   Quadratic(b): u(x) = x - b x^2 / 2,  requires hi < 1/b
///   Power(rho):   u(x) = x^rho,          0 < rho < 1, requires lo >= 0
///   LogShift(c):  u(x) = ln(x + c),      requires lo > -c
///
/// Construction checks u' > 0 and u'' < 0 on a grid covering the domain.
class UtilityFunction {
 public:
  enum class Family { Cara, Quadratic, Power, LogShift };

  UtilityFunction(Family family, double param, PayoffDomain domain);

  Family family() const { return family_; }
  double param() const { return param_; }
  const PayoffDomain& domain() const { return domain_; }
  std::string describe() const;

  /// Same function, new domain (revalidated).
  UtilityFunction with_domain(PayoffDomain domain) const { return {family_, param_, domain}; }

  double eval(double x) const;
  double deriv1(double x) const;
  double deriv2(double x) const;
  double deriv3(double x) const;

  /// Value in any floating type; no domain check. Used for extended-precision
  /// finite differences.
  template <class T>
  T value(T x) const {
    const T p = static_cast<T>(param_);
    switch (family_) {
      case Family::Cara:
        return -std::expm1(-p * x) / p;
      case Family::Quadratic:
        return x - p * x * x / 2;
      case Family::Power:
        return std::pow(x, p);
      case Family::LogShift:
        return std::log(x + p);
    }
    return x;
  }

  friend bool operator==(const UtilityFunction&, const UtilityFunction&) = default;

 private:
  void check_domain(double x) const;

  Family family_;
  double param_;
  PayoffDomain domain_;
};

std::string_view family_name(UtilityFunction::Family family);

/// E[u(s(R))] for a piecewise-linear payoff rate s.
double expected_utility(const UtilityFunction& u, const ReturnDistribution& dist,
                        const RateTransform& payoff, const QuadratureSpec& quad = {});

/// E[u(X)] for a finite law X, summed in atom order.
double expected_utility(const UtilityFunction& u, const DiscreteLaw& law);

/// Sure payoff c in the domain with u(c) = E[u(s(R))], by bisection.
double certainty_equivalent(const UtilityFunction& u, const ReturnDistribution& dist,
                            const RateTransform& payoff, const QuadratureSpec& quad = {});

/// Inverse of u on its domain: c with u(c) = level.
double inverse_utility(const UtilityFunction& u, double level);

}  // namespace frsr
