#include "frsr/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "frsr/bisection.hpp"
#include "frsr/error.hpp"

namespace frsr {

std::string_view target_name(SolveTarget t) {
  switch (t) {
    case SolveTarget::AlphaStar:
      return "alpha_star";
    case SolveTarget::DStar:
      return "d_star";
    case SolveTarget::DpIndifference:
      return "d_p";
    case SolveTarget::DyIndifference:
      return "d_y";
    case SolveTarget::Lambda:
      return "lambda";
    case SolveTarget::Gamma:
      return "gamma";
  }
  return "?";
}

std::string_view status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Success:
      return "success";
    case SolveStatus::Boundary:
      return "boundary";
    case SolveStatus::NoRoot:
      return "no_root";
    case SolveStatus::NotConverged:
      return "not_converged";
  }
  return "?";
}

bool SolveReport::flag(std::string_view name) const {
  for (const Flag& f : flags) {
    if (f.name == name) return f.value;
  }
  return false;
}

void SolveReport::set_flag(std::string name, bool value) {
  for (Flag& f : flags) {
    if (f.name == name) {
      f.value = value;
      return;
    }
  }
  flags.push_back({std::move(name), value});
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

SolveReport solve_alpha_star(const FundAllocation& alloc, const ReturnDistribution& dist,
                             double rate, const QuadratureSpec& quad,
                             const SolverTolerances& tol) {
  SolveReport rep;
  rep.target = SolveTarget::AlphaStar;
  rep.bracket_lo = 0.0;
  rep.bracket_hi = 1.0;
  rep.set_flag("beta_ge_half", alloc.beta() >= 0.5);

  auto h = [&](double a) { return financier_gap(alloc, dist, rate, a, quad); };
  const double payoff_tol = tol.payoff * alloc.total();
  const double h0 = h(0.0);
  const double h1 = h(1.0);
  rep.set_flag("sign_change_found", h0 <= payoff_tol && h1 > 0.0);

  const double mu = mean(dist, quad);
  const double capped = expect(dist, RateTransform::cap(rate), quad);
  const double closed_form = 1.0 - (1.0 - alloc.beta()) * capped / (alloc.beta() * mu);

  if (h0 > payoff_tol) {
    rep.status = SolveStatus::NoRoot;
    rep.residual = h0;
    rep.message = "no alpha* in [0, 1]: h(0) = " + fmt(h0) +
                  " > 0 (the indifference share needs beta >= 1/2, beta = " +
                  fmt(alloc.beta()) + ")";
    rep.set_flag("closed_form_agrees", closed_form < 0.0);
    rep.set_flag("alpha_star_lt_half", false);
    return rep;
  }
  if (h0 >= -payoff_tol) {
    rep.status = SolveStatus::Boundary;
    rep.value = 0.0;
    rep.residual = std::abs(h0);
    rep.message = "boundary solution alpha* = 0";
    rep.set_flag("closed_form_agrees", std::abs(closed_form) <= 10.0 * tol.rate + payoff_tol);
    rep.set_flag("alpha_star_lt_half", true);
    return rep;
  }

  const BisectionResult b = bisect_increasing(h, 0.0, 1.0, tol.rate, tol.max_iter);
  rep.value = b.root;
  rep.residual = std::abs(b.residual);
  rep.bracket_lo = b.lo;
  rep.bracket_hi = b.hi;
  rep.iterations = b.iterations;
  rep.status = b.converged && rep.residual <= payoff_tol ? SolveStatus::Success
                                                          : SolveStatus::NotConverged;
  rep.set_flag("closed_form_agrees", std::abs(closed_form - b.root) <= 10.0 * tol.rate);
  rep.set_flag("alpha_star_lt_half", b.root < 0.5);
  if (!rep.flag("closed_form_agrees")) {
    rep.message = "closed form alpha* = " + fmt(closed_form) + " disagrees with bisection";
  }
  return rep;
}

SolveReport solve_d_star(const FundAllocation& alloc, const ReturnDistribution& dist,
                         double share, const QuadratureSpec& quad, const SolverTolerances& tol) {
  if (!(share > 0.0 && share < 1.0)) {
    throw ValidationError("solve_d_star: alpha must lie in (0, 1), got " + fmt(share));
  }
  SolveReport rep;
  rep.target = SolveTarget::DStar;
  const double z1 = alloc.sr_funds();
  const double z2 = alloc.fr_funds();
  const double target = share * z1 * mean(dist, quad);
  auto gap = [&](double d) { return target - z2 * expect(dist, RateTransform::call(d), quad); };

  const double lo = 0.0;
  const double hi = dist.hi();
  rep.bracket_lo = lo;
  rep.bracket_hi = hi;
  const double g_lo = gap(lo);
  const double payoff_tol = tol.payoff * alloc.total();
  rep.set_flag("sign_change_found", g_lo <= payoff_tol);
  if (g_lo > payoff_tol) {
    rep.status = SolveStatus::NoRoot;
    rep.residual = g_lo;
    rep.message = "E(Y1) = " + fmt(target) + " outside achievable E(Y2) range [0, " +
                  fmt(z2 * mean(dist, quad)) + "]";
    return rep;
  }
  const BisectionResult b = bisect_increasing(gap, lo, hi, tol.rate, tol.max_iter);
  rep.value = b.root;
  rep.residual = std::abs(b.residual);
  rep.bracket_lo = b.lo;
  rep.bracket_hi = b.hi;
  rep.iterations = b.iterations;
  if (!(b.converged && rep.residual <= payoff_tol)) {
    rep.status = SolveStatus::NotConverged;
  } else if (b.root <= tol.rate || b.root >= hi - tol.rate) {
    rep.status = SolveStatus::Boundary;
    rep.message = "D* at the edge of the return support";
  } else {
    rep.status = SolveStatus::Success;
  }
  return rep;
}

SolveReport solve_indifference_rate(const UtilityFunction& u, const ReturnDistribution& dist,
                                    Side side, double share, double multiplier,
                                    const QuadratureSpec& quad, const SolverTolerances& tol) {
  if (!(share > 0.0 && share < 1.0)) {
    throw ValidationError("indifference: share must lie in (0, 1), got " + fmt(share));
  }
  if (!(multiplier >= 1.0)) throw ValidationError("indifference: multiplier must be >= 1");

  SolveReport rep;
  rep.target = side == Side::Financier ? SolveTarget::DpIndifference : SolveTarget::DyIndifference;
  const double lo = 0.0;
  const double hi = multiplier * dist.hi();
  rep.bracket_lo = lo;
  rep.bracket_hi = hi;

  try {
    const double target = expected_utility(u, dist, RateTransform::linear(share), quad);
    // oriented so the objective increases in D on both sides
    auto gap = [&](double d) {
      if (side == Side::Financier) {
        return expected_utility(u, dist, RateTransform::cap(d, multiplier), quad) - target;
      }
      return target - expected_utility(u, dist, RateTransform::call(d, multiplier), quad);
    };
    const double g_lo = gap(lo);
    const double g_hi = gap(hi);
    rep.set_flag("sign_change_found", g_lo <= 0.0 && g_hi >= 0.0);
    if (!(g_lo <= 0.0 && g_hi >= 0.0)) {
      rep.status = SolveStatus::NoRoot;
      rep.residual = std::min(std::abs(g_lo), std::abs(g_hi));
      rep.message = "no sign change: utility gap " + fmt(g_lo) + " at D = " + fmt(lo) +
                    ", " + fmt(g_hi) + " at D = " + fmt(hi);
      return rep;
    }
    const BisectionResult b = bisect_increasing(gap, lo, hi, tol.rate, tol.max_iter);
    rep.value = b.root;
    rep.residual = std::abs(b.residual);
    rep.bracket_lo = b.lo;
    rep.bracket_hi = b.hi;
    rep.iterations = b.iterations;
    rep.status = b.converged && rep.residual <= tol.utility ? SolveStatus::Success
                                                            : SolveStatus::NotConverged;
  } catch (const DomainError& e) {
    rep.status = SolveStatus::NoRoot;
    rep.message = std::string("payoff leaves the utility domain: ") + e.what();
  }
  return rep;
}

bool ParetoReport::premises_hold() const {
  return std::all_of(premises.begin(), premises.end(), [](const Flag& f) { return f.value; });
}

ParetoReport pareto_construct(const FundAllocation& alloc, const ReturnDistribution& dist,
                              double rate, const UtilityFunction& u, double share,
                              const QuadratureSpec& quad, const SolverTolerances& tol) {
  ParetoReport rep;
  rep.alpha_star = solve_alpha_star(alloc, dist, rate, quad, tol);
  const double astar = rep.alpha_star.value;
  const bool astar_ok = rep.alpha_star.ok() && astar > 0.0 && astar < 0.5;

  // alpha* is only known to within the bisection width, so shares closer
  // than that sit on the boundary rather than in either branch.
  const double margin = tol.rate;
  const bool off_boundary = std::abs(share - astar) > margin;
  const bool financier_branch = off_boundary && share > astar && share < 1.0 - astar;
  const bool investor_branch = off_boundary && share > 0.0 && share < astar;

  auto membership = [&](SolveTarget target, double value, const char* flag) {
    SolveReport r;
    r.target = target;
    r.value = value;
    const bool inside = rep.alpha_star.has_value() && value > margin && value < astar - margin;
    r.status = inside ? SolveStatus::Success : SolveStatus::Boundary;
    r.set_flag(flag, inside);
    if (!inside) r.message = std::string(target_name(target)) + " outside ]0, alpha*[";
    return r;
  };
  rep.lambda = membership(SolveTarget::Lambda, share - astar, "lambda_in_open_interval");
  rep.gamma = membership(SolveTarget::Gamma, astar - share, "gamma_in_open_interval");

  rep.premises = {
      {"alpha_star_found", rep.alpha_star.ok()},
      {"alpha_star_in_open_half", astar_ok},
      {"share_off_alpha_star", off_boundary},
      {"branch_interval", financier_branch || investor_branch},
      {"reallocation_in_open_interval",
       (financier_branch && rep.lambda.ok()) || (investor_branch && rep.gamma.ok())},
  };
  if (!astar_ok) {
    rep.premises.push_back({"d_p_converged", false});
    rep.premises.push_back({"d_y_converged", false});
    return rep;
  }

  rep.d_p = solve_indifference_rate(u, dist, Side::Financier, 1.0 - astar, 1.0, quad, tol);
  rep.d_y = solve_indifference_rate(u, dist, Side::Investor, astar, 1.0, quad, tol);
  rep.premises.push_back({"d_p_converged", rep.d_p.ok()});
  rep.premises.push_back({"d_y_converged", rep.d_y.ok()});

  auto half_split = [&](Side side, double param, double base_share, const SolveReport& base) {
    HalfSplitCheck c;
    c.side = side;
    c.multiplier = 1.0 + 0.5 * param;
    c.share = base_share;
    c.resolved = solve_indifference_rate(u, dist, side, c.share, c.multiplier, quad, tol);
    c.reused_rate = base.value;
    if (base.ok()) {
      try {
        const double target = expected_utility(u, dist, RateTransform::linear(c.share), quad);
        const RateTransform fr = side == Side::Financier
                                     ? RateTransform::cap(base.value, c.multiplier)
                                     : RateTransform::call(base.value, c.multiplier);
        c.reused_residual = expected_utility(u, dist, fr, quad) - target;
      } catch (const DomainError&) {
        c.reused_residual = std::nan("");
      }
    }
    return c;
  };

  if (financier_branch && rep.lambda.ok()) {
    const double lambda = rep.lambda.value;
    rep.half_split.push_back(
        half_split(Side::Financier, lambda, 1.0 - share + 0.5 * lambda, rep.d_p));
    rep.multiplier = 1.0 + 0.5 * lambda;
  } else if (investor_branch && rep.gamma.ok()) {
    const double gamma = rep.gamma.value;
    rep.half_split.push_back(half_split(Side::Investor, gamma, share + 0.5 * gamma, rep.d_y));
    rep.multiplier = 1.0 + 0.5 * gamma;
  }
  const bool split_ok = !rep.half_split.empty() && rep.half_split.front().resolved.ok();
  rep.premises.push_back({"half_split_converged", split_ok});
  if (!rep.premises_hold()) return rep;

  // FR references at the indifference rates; SR terms (1 - alpha*, alpha*)
  // applied to the boosted output of the active branch.
  rep.fr_financier_eu = expected_utility(u, dist, RateTransform::cap(rep.d_p.value), quad);
  rep.fr_investor_eu = expected_utility(u, dist, RateTransform::call(rep.d_y.value), quad);
  rep.sr_financier_eu =
      expected_utility(u, dist, RateTransform::linear((1.0 - astar) * rep.multiplier), quad);
  rep.sr_investor_eu =
      expected_utility(u, dist, RateTransform::linear(astar * rep.multiplier), quad);
  rep.financier_weak = rep.sr_financier_eu >= rep.fr_financier_eu - tol.utility;
  rep.investor_weak = rep.sr_investor_eu >= rep.fr_investor_eu - tol.utility;
  rep.strict_somewhere = rep.sr_financier_eu > rep.fr_financier_eu + tol.utility ||
                         rep.sr_investor_eu > rep.fr_investor_eu + tol.utility;
  return rep;
}

}  // namespace frsr
