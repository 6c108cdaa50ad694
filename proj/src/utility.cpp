#include "frsr/utility.hpp"

#include <sstream>

#include "frsr/error.hpp"

namespace frsr {

using Family = UtilityFunction::Family;

std::string_view family_name(Family family) {
  switch (family) {
    case Family::Cara:
      return "cara";
    case Family::Quadratic:
      return "quadratic";
    case Family::Power:
      return "power";
    case Family::LogShift:
      return "logshift";
  }
  return "?";
}

UtilityFunction::UtilityFunction(Family family, double param, PayoffDomain domain)
    : family_(family), param_(param), domain_(domain) {
  const std::string name(family_name(family));
  if (!std::isfinite(param) || !(param > 0.0)) {
    throw ValidationError(name + ": parameter must be > 0");
  }
  if (!(domain.lo < domain.hi) || !std::isfinite(domain.lo) || !std::isfinite(domain.hi)) {
    throw ValidationError(name + ": domain must satisfy lo < hi");
  }
  switch (family) {
    case Family::Quadratic:
      if (!(domain.hi < 1.0 / param)) {
        std::ostringstream os;
        os << name << "(" << param << "): not increasing on domain, need hi < 1/b = "
           << 1.0 / param << ", got hi = " << domain.hi;
        throw ValidationError(os.str());
      }
      break;
    case Family::Power:
      if (!(param < 1.0)) throw ValidationError(name + ": rho must lie in (0, 1)");
      if (domain.lo < 0.0) throw ValidationError(name + ": domain lo must be >= 0");
      break;
    case Family::LogShift:
      if (!(domain.lo > -param)) throw ValidationError(name + ": domain lo must exceed -c");
      break;
    case Family::Cara:
      break;
  }
  constexpr int kChecks = 64;
  for (int i = 0; i <= kChecks; ++i) {
    const double x = domain.lo + (domain.hi - domain.lo) * i / kChecks;
    const double v = eval(x);
    if (!std::isfinite(v)) throw ValidationError(name + ": unbounded on domain");
    if (!(deriv1(x) > 0.0)) throw ValidationError(name + ": u' <= 0 on domain");
    if (!(deriv2(x) < 0.0)) throw ValidationError(name + ": u'' >= 0 on domain (not concave)");
  }
}

std::string UtilityFunction::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << family_name(family_) << "(" << param_ << ")";
  return os.str();
}

void UtilityFunction::check_domain(double x) const {
  if (!(x >= domain_.lo && x <= domain_.hi)) {
    std::ostringstream os;
    os.precision(17);
    os << family_name(family_) << ": x = " << x << " outside domain ["
       << domain_.lo << ", " << domain_.hi << "]";
    throw DomainError(os.str());
  }
}

double UtilityFunction::eval(double x) const {
  check_domain(x);
  return value(x);
}

double UtilityFunction::deriv1(double x) const {
  check_domain(x);
  const double p = param_;
  switch (family_) {
    case Family::Cara:
      return std::exp(-p * x);
    case Family::Quadratic:
      return 1.0 - p * x;
    case Family::Power:
      return p * std::pow(x, p - 1.0);
    case Family::LogShift:
      return 1.0 / (x + p);
  }
  return 1.0;
}

double UtilityFunction::deriv2(double x) const {
  check_domain(x);
  const double p = param_;
  switch (family_) {
    case Family::Cara:
      return -p * std::exp(-p * x);
    case Family::Quadratic:
      return -p;
    case Family::Power:
      return p * (p - 1.0) * std::pow(x, p - 2.0);
    case Family::LogShift:
      return -1.0 / ((x + p) * (x + p));
  }
  return 0.0;
}

double UtilityFunction::deriv3(double x) const {
  check_domain(x);
  const double p = param_;
  switch (family_) {
    case Family::Cara:
      return p * p * std::exp(-p * x);
    case Family::Quadratic:
      return 0.0;
    case Family::Power:
      return p * (p - 1.0) * (p - 2.0) * std::pow(x, p - 3.0);
    case Family::LogShift:
      return 2.0 / ((x + p) * (x + p) * (x + p));
  }
  return 0.0;
}

double expected_utility(const UtilityFunction& u, const ReturnDistribution& dist,
                        const RateTransform& payoff, const QuadratureSpec& quad) {
  std::vector<double> breaks;
  if (auto k = payoff.kink()) breaks.push_back(*k);
  return expect(
      dist,
      [&](double r) {
        const double s = payoff(r);
        try {
          return u.eval(s);
        } catch (const DomainError& e) {
          std::ostringstream os;
          os.precision(17);
          os << e.what() << " (payoff at r = " << r << ")";
          throw DomainError(os.str());
        }
      },
      quad, breaks);
}

double expected_utility(const UtilityFunction& u, const DiscreteLaw& law) {
  return law.expect([&](double x) { return u.eval(x); });
}

double inverse_utility(const UtilityFunction& u, double level) {
  double lo = u.domain().lo;
  double hi = u.domain().hi;
  const double ulo = u.eval(lo);
  const double uhi = u.eval(hi);
  if (level < ulo || level > uhi) {
    std::ostringstream os;
    os.precision(17);
    os << "certainty equivalent: utility level " << level << " outside u(domain) = [" << ulo
       << ", " << uhi << "]";
    throw DomainError(os.str());
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (u.eval(mid) < level) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  // pick whichever end of the final bracket has the smaller residual
  return std::abs(u.eval(lo) - level) <= std::abs(u.eval(hi) - level) ? lo : hi;
}

double certainty_equivalent(const UtilityFunction& u, const ReturnDistribution& dist,
                            const RateTransform& payoff, const QuadratureSpec& quad) {
  return inverse_utility(u, expected_utility(u, dist, payoff, quad));
}

}  // namespace frsr
