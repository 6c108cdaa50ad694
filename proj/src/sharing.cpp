#include "frsr/sharing.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "frsr/error.hpp"

namespace frsr {

using Label = SharingRule::Label;

namespace {

void require_unit(double v, const char* what) {
  if (!(v > 0.0 && v < 1.0)) {
    std::ostringstream os;
    os << what << " must lie in (0, 1), got " << v;
    throw ValidationError(os.str());
  }
}

void require_multiplier(double m) {
  if (!(m >= 1.0) || !std::isfinite(m)) throw ValidationError("boost multiplier must be >= 1");
}

}  // namespace

SharingRule SharingRule::sr_investor(double share) {
  require_unit(share, "sr_investor: alpha");
  return {Label::SrInvestor, RateTransform::linear(share)};
}

SharingRule SharingRule::sr_financier(double share) {
  require_unit(share, "sr_financier: alpha");
  return {Label::SrFinancier, RateTransform::linear(1.0 - share)};
}

SharingRule SharingRule::fr_investor(double rate) {
  require_unit(rate, "fr_investor: D");
  return {Label::FrInvestor, RateTransform::call(rate)};
}

SharingRule SharingRule::fr_financier(double rate) {
  require_unit(rate, "fr_financier: D");
  return {Label::FrFinancier, RateTransform::cap(rate)};
}

SharingRule SharingRule::boosted_investor(double rate, double multiplier) {
  require_multiplier(multiplier);
  return {Label::BoostedInvestor, RateTransform::call(rate, multiplier)};
}

SharingRule SharingRule::boosted_financier(double rate, double multiplier) {
  require_multiplier(multiplier);
  return {Label::BoostedFinancier, RateTransform::cap(rate, multiplier)};
}

std::string_view label_name(Label label) {
  switch (label) {
    case Label::SrInvestor:
      return "sr_investor";
    case Label::SrFinancier:
      return "sr_financier";
    case Label::FrInvestor:
      return "fr_investor";
    case Label::FrFinancier:
      return "fr_financier";
    case Label::BoostedInvestor:
      return "boosted_investor";
    case Label::BoostedFinancier:
      return "boosted_financier";
  }
  return "?";
}

SharingCheck check_sharing(const SharingRule& rule, const SharingRule* partner,
                           const ReturnDistribution& dist, const QuadratureSpec& quad) {
  std::vector<double> breaks;
  if (auto k = rule.transform().kink()) breaks.push_back(*k);
  if (partner) {
    if (auto k = partner->transform().kink()) breaks.push_back(*k);
  }
  const NodeSet nodes = integration_nodes(dist, quad, breaks);
  SharingCheck out;
  for (double r : nodes.x) {
    const double s = rule(r);
    if (!rule.exempt_from_bounds()) {
      if (s < 0.0 || s > r) out.bounded = false;
      if (!(s > 0.0 && s < r)) out.strictly_inside = false;
    }
    if (partner) {
      const double excess = std::abs(s + (*partner)(r) - r);
      out.worst_excess = std::max(out.worst_excess, excess);
      if (excess > 4.0 * std::numeric_limits<double>::epsilon() * r) out.complete = false;
    }
  }
  return out;
}

double effective_share(const SharingRule& rule, const ReturnDistribution& dist,
                       const QuadratureSpec& quad) {
  return expect(dist, rule.transform(), quad) / mean(dist, quad);
}

DiscreteLaw induced_distribution(const SharingRule& rule, const DiscreteLaw& dist) {
  return dist.map([&](double r) { return rule(r); }, 1e-14);
}

MpsPair make_mps(const DiscreteLaw& base, const DiscreteLaw& noise) {
  const double m = noise.mean();
  if (std::abs(m) > 1e-12) {
    std::ostringstream os;
    os.precision(17);
    os << "make_mps: noise must have zero mean, E(Z) = " << m;
    throw ValidationError(os.str());
  }
  if (!(noise.variance() > 0.0)) throw ValidationError("make_mps: noise must have V(Z) > 0");
  DiscreteLaw spread = base.convolve(noise);
  for (const Atom& a : spread.atoms()) {
    if (!std::isfinite(a.value)) throw ValidationError("make_mps: non-finite spread atom");
  }
  return {base, noise, std::move(spread)};
}

DiscreteLaw symmetric_noise(double scale) {
  if (!(scale > 0.0)) throw ValidationError("symmetric_noise: scale must be > 0");
  return DiscreteLaw({{-scale, 0.5}, {scale, 0.5}});
}

std::string_view dominance_name(Dominance d) {
  switch (d) {
    case Dominance::Dominates:
      return "dominates";
    case Dominance::Dominated:
      return "dominated";
    case Dominance::Equal:
      return "equal";
    case Dominance::Incomparable:
      return "incomparable";
  }
  return "?";
}

SosdResult sosd_dominates(const DiscreteLaw& x, const DiscreteLaw& y, double tol) {
  SosdResult out;
  out.mean_gap = x.mean() - y.mean();
  if (std::abs(out.mean_gap) > 1e-10) {
    out.verdict = Dominance::Incomparable;
    return out;
  }

  std::vector<double> grid;
  grid.reserve(x.size() + y.size());
  for (const Atom& a : x.atoms()) grid.push_back(a.value);
  for (const Atom& a : y.atoms()) grid.push_back(a.value);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  // Integrated CDFs are piecewise linear between grid points, so checking
  // the difference at the grid points covers every t.
  const auto xa = x.atoms();
  const auto ya = y.atoms();
  std::size_t ix = 0, iy = 0;
  double fx = 0.0, fy = 0.0;    // CDFs just left of the current grid point
  double ifx = 0.0, ify = 0.0;  // integrated CDFs at the current grid point
  double lowest = 0.0, highest = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (k > 0) {
      const double dt = grid[k] - grid[k - 1];
      ifx += fx * dt;
      ify += fy * dt;
    }
    const double diff = ify - ifx;
    lowest = std::min(lowest, diff);
    highest = std::max(highest, diff);
    while (ix < xa.size() && xa[ix].value <= grid[k]) fx += xa[ix++].prob;
    while (iy < ya.size() && ya[iy].value <= grid[k]) fy += ya[iy++].prob;
  }

  const bool x_over_y = lowest >= -tol;
  const bool y_over_x = highest <= tol;
  if (x_over_y && y_over_x) {
    out.verdict = Dominance::Equal;
    out.max_violation = 0.0;
  } else if (x_over_y) {
    out.verdict = Dominance::Dominates;
    out.max_violation = std::max(0.0, -lowest);
  } else if (y_over_x) {
    out.verdict = Dominance::Dominated;
    out.max_violation = std::max(0.0, highest);
  } else {
    out.verdict = Dominance::Incomparable;
    out.max_violation = std::min(-lowest, highest);
  }
  return out;
}

TaylorGap taylor_gap(const UtilityFunction& u, const MpsPair& pair) {
  TaylorGap g;
  const double curvature = pair.base.expect([&](double x) { return u.deriv2(x); });
  g.approx = 0.5 * curvature * pair.noise.variance();
  g.exact = expected_utility(u, pair.spread) - expected_utility(u, pair.base);
  return g;
}

}  // namespace frsr
