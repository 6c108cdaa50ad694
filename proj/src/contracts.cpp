#include "frsr/contracts.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "frsr/error.hpp"

namespace frsr {

namespace {

void require(bool ok, const char* what, double v) {
  if (!ok) {
    std::ostringstream os;
    os << what << " (got " << v << ")";
    throw ValidationError(os.str());
  }
}

bool open_unit(double v) { return v > 0.0 && v < 1.0; }

}  // namespace

FundAllocation::FundAllocation(double total, double beta) : total_(total), beta_(beta) {
  require(total > 0.0 && std::isfinite(total), "allocation: L must be > 0", total);
  require(open_unit(beta), "allocation: beta must lie in (0, 1)", beta);
}

ContractTerms validated(ContractTerms terms) {
  if (const auto* fr = std::get_if<FixedReturn>(&terms)) {
    require(open_unit(fr->rate), "FR terms: D must lie in (0, 1)", fr->rate);
  } else {
    const auto& sr = std::get<StochasticReturn>(terms);
    require(open_unit(sr.share), "SR terms: alpha must lie in (0, 1)", sr.share);
  }
  return terms;
}

PayoffSplit payoff_fr(double funds, double r, double rate) {
  require(funds > 0.0, "payoff_fr: funds must be > 0", funds);
  require(open_unit(r), "payoff_fr: return must lie in (0, 1)", r);
  require(open_unit(rate), "payoff_fr: D must lie in (0, 1)", rate);
  const double total = funds * r;
  const double financier = r < rate ? total : funds * rate;
  return {financier, total - financier};
}

PayoffSplit payoff_sr(double funds, double r, double share) {
  require(funds > 0.0, "payoff_sr: funds must be > 0", funds);
  require(open_unit(r), "payoff_sr: return must lie in (0, 1)", r);
  require(open_unit(share), "payoff_sr: alpha must lie in (0, 1)", share);
  const double total = funds * r;
  const double investor = share * total;
  return {total - investor, investor};
}

PayoffSplit payoff(const ContractTerms& terms, double funds, double r) {
  return std::visit(
      [&](const auto& t) -> PayoffSplit {
        if constexpr (std::is_same_v<std::decay_t<decltype(t)>, FixedReturn>) {
          return payoff_fr(funds, r, t.rate);
        } else {
          return payoff_sr(funds, r, t.share);
        }
      },
      terms);
}

PayoffSummary expected_payoffs(const FundAllocation& alloc, const ReturnDistribution& dist,
                               double rate, double share, const QuadratureSpec& quad) {
  require(open_unit(rate), "expected_payoffs: D must lie in (0, 1)", rate);
  require(share >= 0.0 && share <= 1.0, "expected_payoffs: alpha must lie in [0, 1]", share);

  const double z1 = alloc.sr_funds();
  const double z2 = alloc.fr_funds();
  const double mu = mean(dist, quad);
  const double var = variance(dist, quad);
  const auto capped = transform_moments(dist, RateTransform::cap(rate), quad);
  const double call = expect(dist, RateTransform::call(rate), quad);

  PayoffSummary s;
  s.e_p1 = (1.0 - share) * z1 * mu;
  s.e_y1 = share * z1 * mu;
  s.e_p2 = z2 * capped.s1;
  s.e_y2 = z2 * call;
  s.v_p1 = (1.0 - share) * (1.0 - share) * z1 * z1 * var;
  const double var_cap = dist.kind() == ReturnDistribution::Kind::Degenerate
                             ? 0.0
                             : std::max(0.0, capped.s2 - capped.s1 * capped.s1);
  s.v_p2 = z2 * z2 * var_cap;

  const double tol = 1e-9 * alloc.total();
  if (std::abs(s.e_p1 + s.e_y1 - z1 * mu) > tol || std::abs(s.e_p2 + s.e_y2 - z2 * mu) > tol) {
    throw InvariantError("expected_payoffs: financier + investor != funds x E(R)");
  }
  return s;
}

double financier_gap(const FundAllocation& alloc, const ReturnDistribution& dist, double rate,
                     double share, const QuadratureSpec& quad) {
  const PayoffSummary s = expected_payoffs(alloc, dist, rate, share, quad);
  return s.e_p2 - s.e_p1;
}

}  // namespace frsr
