#include "frsr/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "frsr/error.hpp"

namespace frsr {

PayoffDomain default_payoff_domain(const ReturnDistribution& dist) {
  return {0.0, kMaxBoost * dist.hi() * (1.0 + 1e-6)};
}

std::vector<UtilityFunction> utility_suite(PayoffDomain domain) {
  using F = UtilityFunction::Family;
  return {
      {F::Cara, 10.0, domain},
      {F::Quadratic, 0.5, domain},
      {F::Power, 0.5, domain},
      {F::LogShift, 0.05, domain},
  };
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::string_view proposition_name(Proposition p) {
  switch (p) {
    case Proposition::P3_1:
      return "P3_1";
    case Proposition::P4_1:
      return "P4_1";
    case Proposition::P5_1:
      return "P5_1";
  }
  return "?";
}

std::optional<Proposition> parse_proposition(std::string_view s) {
  if (s == "P3_1") return Proposition::P3_1;
  if (s == "P4_1") return Proposition::P4_1;
  if (s == "P5_1") return Proposition::P5_1;
  return std::nullopt;
}

std::string_view outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Pass:
      return "pass";
    case Outcome::ConclusionFailure:
      return "conclusion_failure";
    case Outcome::PremiseFailure:
      return "premise_failure";
    case Outcome::Errored:
      return "errored";
  }
  return "?";
}

bool VerificationRecord::premises_hold() const {
  return std::all_of(premises.begin(), premises.end(), [](const Flag& f) { return f.value; });
}

Outcome VerificationRecord::outcome() const {
  if (!error.empty()) return Outcome::Errored;
  if (!premises_hold() || !conclusion_holds) return Outcome::PremiseFailure;
  return *conclusion_holds ? Outcome::Pass : Outcome::ConclusionFailure;
}

const WitnessValue* VerificationRecord::find(std::string_view name) const {
  for (const WitnessEntry& w : witness) {
    if (w.name == name) return &w.value;
  }
  return nullptr;
}

double VerificationRecord::number(std::string_view name) const {
  const WitnessValue* v = find(name);
  if (!v || !std::holds_alternative<double>(*v)) return std::nan("");
  return std::get<double>(*v);
}

bool VerificationRecord::boolean(std::string_view name) const {
  const WitnessValue* v = find(name);
  return v && std::holds_alternative<bool>(*v) && std::get<bool>(*v);
}

namespace {

void finish(VerificationRecord& rec, bool conclusion) {
  if (rec.premises_hold()) rec.conclusion_holds = conclusion;
}

}  // namespace

VerificationRecord verify_p31(const Scenario& s) {
  VerificationRecord rec;
  rec.scenario_id = s.id;
  rec.proposition = Proposition::P3_1;

  const SolveReport rep = solve_alpha_star(s.alloc, s.dist, s.rate, s.quad, s.tol);
  const double astar = rep.value;
  const bool interior = rep.ok() && astar > 0.0 && astar < 1.0;
  rec.premises = {
      {"beta_ge_half", rep.flag("beta_ge_half")},
      {"alpha_star_found", rep.has_value()},
      {"alpha_star_interior", interior},
  };
  rec.witness.push_back({"solve_status", std::string(status_name(rep.status))});
  rec.witness.push_back({"alpha_star", astar});
  rec.witness.push_back({"h_residual", rep.residual});
  rec.witness.push_back({"closed_form_agrees", rep.flag("closed_form_agrees")});
  if (!rep.message.empty()) rec.witness.push_back({"message", rep.message});

  if (!interior) {
    if (rep.status == SolveStatus::Boundary) rec.witness.push_back({"boundary", true});
    finish(rec, false);
    return rec;
  }

  // 20 shares strictly on each side of alpha*
  constexpr int kSamples = 20;
  double max_below = -std::numeric_limits<double>::infinity();
  double min_above = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= kSamples; ++k) {
    const double below = astar * k / (kSamples + 1.0);
    const double above = astar + (1.0 - astar) * k / (kSamples + 1.0);
    max_below = std::max(max_below, financier_gap(s.alloc, s.dist, s.rate, below, s.quad));
    min_above = std::min(min_above, financier_gap(s.alloc, s.dist, s.rate, above, s.quad));
  }
  const bool holds = max_below < 0.0 && min_above > 0.0;
  rec.witness.push_back({"max_h_below", max_below});
  rec.witness.push_back({"min_h_above", min_above});
  rec.witness.push_back({"sign_pattern_holds", holds});
  finish(rec, holds);
  return rec;
}

VerificationRecord verify_p41(const Scenario& s, const P41Options& opts) {
  VerificationRecord rec;
  rec.scenario_id = s.id;
  rec.proposition = Proposition::P4_1;

  const SolveReport astar_rep = solve_alpha_star(s.alloc, s.dist, s.rate, s.quad, s.tol);
  const double astar = astar_rep.value;
  const bool astar_ok = astar_rep.ok() && astar > 0.0 && astar < 1.0;
  rec.witness.push_back({"alpha_star", astar});
  if (!astar_ok) {
    rec.premises = {{"alpha_star_found", false}};
    rec.witness.push_back({"solve_status", std::string(status_name(astar_rep.status))});
    return rec;
  }
  const SolveReport dstar_rep = solve_d_star(s.alloc, s.dist, astar, s.quad, s.tol);
  rec.witness.push_back({"d_star", dstar_rep.value});

  const DiscreteLaw returns = discretize(s.dist);
  const double sosd_tol = 1e-12;  // base and spread are both exact finite laws
  const DiscreteLaw base = induced_distribution(SharingRule::sr_investor(astar), returns);

  const PayoffDomain domain = s.utility.domain();
  double scale = opts.noise_scale.value_or(0.1 * (base.max() - base.min()));
  if (!(scale > 0.0)) scale = 0.1 * base.mean();
  int halvings = 0;
  while ((base.min() - scale < domain.lo || base.max() + scale > domain.hi) && halvings < 60) {
    scale *= 0.5;
    ++halvings;
  }
  const bool in_domain = base.min() - scale >= domain.lo && base.max() + scale <= domain.hi;
  rec.witness.push_back({"noise_scale", scale});
  rec.witness.push_back({"noise_halvings", static_cast<double>(halvings)});

  std::vector<UtilityFunction> suite = utility_suite(domain);
  if (std::find(suite.begin(), suite.end(), s.utility) == suite.end()) suite.push_back(s.utility);

  bool mps_valid = false;
  bool right_all = false;
  bool taylor_all = false;
  bool sosd_ok = false;
  if (in_domain) {
    const MpsPair pair = make_mps(base, symmetric_noise(scale));
    mps_valid = std::abs(pair.spread.mean() - pair.base.mean()) <= 1e-12 &&
                pair.spread.variance() > pair.base.variance();
    right_all = true;
    taylor_all = true;
    double worst_gap = -std::numeric_limits<double>::infinity();
    for (const UtilityFunction& u : suite) {
      const double eu_base = expected_utility(u, pair.base);
      const double eu_spread = expected_utility(u, pair.spread);
      right_all = right_all && eu_base > eu_spread;
      worst_gap = std::max(worst_gap, eu_spread - eu_base);
      const TaylorGap g = taylor_gap(u, pair);
      taylor_all = taylor_all && std::signbit(g.approx) == std::signbit(g.exact) &&
                   g.approx != 0.0 && g.exact != 0.0;
    }
    const SosdResult dom = sosd_dominates(pair.base, pair.spread, sosd_tol);
    sosd_ok = dom.verdict == Dominance::Dominates;
    rec.witness.push_back({"worst_spread_minus_base_eu", worst_gap});
    rec.witness.push_back({"sosd_verdict", std::string(dominance_name(dom.verdict))});
  }
  rec.witness.push_back({"right_inequality_checked", in_domain && mps_valid});
  rec.witness.push_back({"right_inequality_holds", right_all});
  rec.witness.push_back({"base_dominates_spread", sosd_ok});
  rec.witness.push_back({"taylor_sign_agreement", taylor_all});

  // Left inequality needs E[S_P(R2)] = E[S_Y(R1)].
  bool left_equal_mean = false;
  bool left_holds = false;
  if (opts.left_case) {
    const MpsPair& left = *opts.left_case;
    left_equal_mean = std::abs(left.base.mean() - left.spread.mean()) <= 1e-10;
    left_holds = true;
    for (const UtilityFunction& u : suite) {
      left_holds = left_holds && expected_utility(u, left.base) > expected_utility(u, left.spread);
    }
    rec.witness.push_back({"left_case", std::string("supplied")});
    rec.witness.push_back({"mean_gap", left.base.mean() - left.spread.mean()});
  } else if (dstar_rep.has_value()) {
    const double rate = dstar_rep.value;
    const DiscreteLaw financier = returns.map([&](double r) { return std::min(r, rate); });
    const double gap = financier.mean() - base.mean();
    left_equal_mean = std::abs(gap) <= 1e-10;
    rec.witness.push_back({"left_case", std::string("contract")});
    rec.witness.push_back({"mean_gap", gap});
    if (left_equal_mean) {
      left_holds = true;
      for (const UtilityFunction& u : suite) {
        left_holds = left_holds && expected_utility(u, financier) > expected_utility(u, base);
      }
    }
  }
  rec.witness.push_back({"left_inequality_holds", left_holds});

  rec.premises = {
      {"alpha_star_found", true},
      {"d_star_found", dstar_rep.has_value()},
      {"noise_in_domain", in_domain},
      {"mps_valid", mps_valid},
      {"left_equal_mean", left_equal_mean},
  };
  finish(rec, right_all && sosd_ok && taylor_all && left_holds);
  return rec;
}

VerificationRecord verify_p51(const Scenario& s) {
  VerificationRecord rec;
  rec.scenario_id = s.id;
  rec.proposition = Proposition::P5_1;

  const ParetoReport rep =
      pareto_construct(s.alloc, s.dist, s.rate, s.utility, s.share, s.quad, s.tol);
  rec.premises = rep.premises;
  rec.witness = {
      {"alpha", s.share},
      {"alpha_star", rep.alpha_star.value},
      {"lambda", rep.lambda.value},
      {"gamma", rep.gamma.value},
      {"d_p", rep.d_p.value},
      {"d_p_residual", rep.d_p.residual},
      {"d_y", rep.d_y.value},
      {"d_y_residual", rep.d_y.residual},
  };
  for (const HalfSplitCheck& c : rep.half_split) {
    const std::string side = c.side == Side::Financier ? "financier" : "investor";
    rec.witness.push_back({"half_split_side", side});
    rec.witness.push_back({"half_split_multiplier", c.multiplier});
    rec.witness.push_back({"half_split_share", c.share});
    rec.witness.push_back({"half_split_rate", c.resolved.value});
    rec.witness.push_back({"half_split_residual", c.resolved.residual});
    rec.witness.push_back({"half_split_reused_rate", c.reused_rate});
    rec.witness.push_back({"half_split_reused_residual", c.reused_residual});
  }
  if (rep.premises_hold()) {
    rec.witness.push_back({"fr_financier_eu", rep.fr_financier_eu});
    rec.witness.push_back({"sr_financier_eu", rep.sr_financier_eu});
    rec.witness.push_back({"fr_investor_eu", rep.fr_investor_eu});
    rec.witness.push_back({"sr_investor_eu", rep.sr_investor_eu});
    rec.witness.push_back({"financier_weak", rep.financier_weak});
    rec.witness.push_back({"investor_weak", rep.investor_weak});
    rec.witness.push_back({"strict_somewhere", rep.strict_somewhere});
  }
  finish(rec, rep.improves());
  return rec;
}

McCheck mc_cross_check(const ReturnDistribution& dist, const RateTransform& t,
                       std::string quantity, std::span<const double> draws,
                       const QuadratureSpec& quad) {
  McCheck c;
  c.quantity = std::move(quantity);
  c.quadrature = expect(dist, t, quad);
  const auto n = static_cast<double>(draws.size());
  const kernels::Sums sums = kernels::sample_sums(t, draws);
  c.estimate = sums.s1 / n;
  const double var = draws.size() > 1 ? std::max(0.0, (sums.s2 - sums.s1 * c.estimate) / (n - 1.0))
                                      : 0.0;
  c.std_error = std::sqrt(var / n);
  const double floor = 1e-12 * std::max(1.0, std::abs(c.quadrature));
  c.agrees = std::abs(c.quadrature - c.estimate) <= 4.0 * c.std_error + floor;
  return c;
}

const PropositionSummary& GridSummary::of(Proposition p) const {
  switch (p) {
    case Proposition::P4_1:
      return p41;
    case Proposition::P5_1:
      return p51;
    case Proposition::P3_1:
      break;
  }
  return p31;
}

PropositionSummary& GridSummary::of(Proposition p) {
  return const_cast<PropositionSummary&>(std::as_const(*this).of(p));
}

int GridSummary::total_conclusion_failures() const {
  return p31.conclusion_failures + p41.conclusion_failures + p51.conclusion_failures +
         p41.right_inequality_failures;
}

namespace {

struct ScenarioResult {
  std::vector<VerificationRecord> records;
  std::vector<McCheck> mc;
};

ScenarioResult evaluate(const Scenario& s, const GridOptions& opts) {
  ScenarioResult out;
  try {
    if (opts.mc_samples > 0) {
      const std::vector<double> draws = sample(s.dist, s.seed, opts.mc_samples);
      out.mc.push_back(mc_cross_check(s.dist, RateTransform::identity(), "E[R]", draws, s.quad));
      out.mc.push_back(
          mc_cross_check(s.dist, RateTransform::cap(s.rate), "E[min(R,D)]", draws, s.quad));
      out.mc.push_back(
          mc_cross_check(s.dist, RateTransform::call(s.rate), "E[max(R-D,0)]", draws, s.quad));
    }
    for (Proposition p : opts.propositions) {
      VerificationRecord rec;
      std::optional<McCheck> mc;
      switch (p) {
        case Proposition::P3_1:
          rec = verify_p31(s);
          if (!out.mc.empty()) mc = out.mc[1];
          break;
        case Proposition::P4_1:
          rec = verify_p41(s);
          if (!out.mc.empty()) mc = out.mc[0];
          break;
        case Proposition::P5_1:
          rec = verify_p51(s);
          if (!out.mc.empty()) mc = out.mc[2];
          break;
      }
      rec.mc = mc;
      out.records.push_back(std::move(rec));
    }
  } catch (const std::exception& e) {
    out.records.clear();
    out.mc.clear();
    for (Proposition p : opts.propositions) {
      VerificationRecord rec;
      rec.scenario_id = s.id;
      rec.proposition = p;
      rec.error = e.what();
      out.records.push_back(std::move(rec));
    }
  }
  return out;
}

}  // namespace

GridResult run_grid(const std::vector<Scenario>& batch, const GridOptions& opts) {
  std::vector<ScenarioResult> results(batch.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < batch.size(); i = next++) results[i] = evaluate(batch[i], opts);
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, batch.size()));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }

  GridResult out;
  for (ScenarioResult& r : results) {
    for (const McCheck& c : r.mc) {
      ++out.summary.mc_checks;
      if (c.agrees) ++out.summary.mc_agreements;
    }
    for (VerificationRecord& rec : r.records) {
      PropositionSummary& sum = out.summary.of(rec.proposition);
      switch (rec.outcome()) {
        case Outcome::Pass:
          ++sum.passes;
          break;
        case Outcome::ConclusionFailure:
          ++sum.conclusion_failures;
          break;
        case Outcome::PremiseFailure:
          ++sum.premise_failures;
          break;
        case Outcome::Errored:
          ++sum.errored;
          break;
      }
      if (rec.proposition == Proposition::P4_1 && rec.boolean("right_inequality_checked") &&
          !(rec.boolean("right_inequality_holds") && rec.boolean("base_dominates_spread"))) {
        ++sum.right_inequality_failures;
      }
      out.records.push_back(std::move(rec));
    }
  }
  return out;
}

std::vector<std::pair<std::string, ReturnDistribution>> default_distributions() {
  return {
      {"degenerate", ReturnDistribution::degenerate(0.3)},
      {"discrete", ReturnDistribution::discrete(
                       {{0.02, 0.1}, {0.08, 0.3}, {0.15, 0.4}, {0.35, 0.2}})},
      {"uniform", ReturnDistribution::uniform(0.0, 1.0)},
      {"beta", ReturnDistribution::scaled_beta(2.0, 5.0, 0.0, 1.0)},
      {"truncnormal", ReturnDistribution::truncated_normal(0.2, 0.15, 0.0, 1.0)},
  };
}

std::vector<Scenario> default_grid(std::uint64_t seed) {
  std::vector<Scenario> out;
  const double betas[] = {0.5, 0.6, 0.75, 0.9};
  const double rates[] = {0.05, 0.1, 0.2, 0.4};
  for (const auto& [name, dist] : default_distributions()) {
    const PayoffDomain domain = default_payoff_domain(dist);
    for (const UtilityFunction& u : utility_suite(domain)) {
      for (double beta : betas) {
        for (double rate : rates) {
          Scenario s;
          std::ostringstream id;
          id << name << "/" << u.describe() << "/beta=" << beta << "/D=" << rate;
          s.id = id.str();
          s.alloc = FundAllocation(100.0, beta);
          s.dist = dist;
          s.rate = rate;
          s.share = 0.2;
          s.utility = u;
          s.seed = derive_seed(seed, out.size());
          out.push_back(std::move(s));
        }
      }
    }
  }
  return out;
}

}  // namespace frsr
