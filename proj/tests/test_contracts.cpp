#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "frsr/contracts.hpp"
#include "frsr/error.hpp"

using namespace frsr;

namespace {
const auto kWorked = ReturnDistribution::discrete({{0.05, 0.5}, {0.15, 0.5}});
}

TEST_CASE("fund allocation") {
  const FundAllocation a(100.0, 0.5);
  CHECK(a.sr_funds() == 50.0);
  CHECK(a.fr_funds() == 50.0);
  CHECK(a.sr_funds() + a.fr_funds() == a.total());
  CHECK_THROWS_AS(FundAllocation(-1.0, 0.5), ValidationError);
  CHECK_THROWS_AS(FundAllocation(100.0, 1.0), ValidationError);
  CHECK_THROWS_AS(FundAllocation(100.0, 0.0), ValidationError);
}

TEST_CASE("per-realization payoffs split the output") {
  const PayoffSplit below = payoff_fr(50.0, 0.05, 0.10);
  CHECK(below.financier == doctest::Approx(2.5));
  CHECK(below.investor == 0.0);
  const PayoffSplit above = payoff_fr(50.0, 0.15, 0.10);
  CHECK(above.financier == doctest::Approx(5.0));
  CHECK(above.investor == doctest::Approx(2.5));
  const PayoffSplit sr = payoff_sr(50.0, 0.15, 0.25);
  CHECK(sr.investor == doctest::Approx(1.875));
  CHECK(sr.financier + sr.investor == doctest::Approx(7.5));
  CHECK(payoff(StochasticReturn{0.25}, 50.0, 0.15).investor == sr.investor);
  CHECK_THROWS_AS(validated(FixedReturn{1.5}), ValidationError);
  CHECK_THROWS_AS(validated(StochasticReturn{0.0}), ValidationError);
}

TEST_CASE("worked scenario expected payoffs") {
  const FundAllocation a(100.0, 0.5);
  const PayoffSummary s = expected_payoffs(a, kWorked, 0.10, 0.25);
  CHECK(s.e_p1 == doctest::Approx(3.75).epsilon(1e-12));
  CHECK(s.e_p2 == doctest::Approx(3.75).epsilon(1e-12));
  CHECK(s.e_y1 == doctest::Approx(1.25).epsilon(1e-12));
  CHECK(s.e_y2 == doctest::Approx(1.25).epsilon(1e-12));
  // V(P1) = (37.5)^2 Var(R) = 1406.25 * 0.0025; V(P2) = 50^2 Var(min(R, 0.1)) = 2500 * 0.000625
  CHECK(s.v_p1 == doctest::Approx(3.515625).epsilon(1e-12));
  CHECK(s.v_p2 == doctest::Approx(1.5625).epsilon(1e-12));
  CHECK(financier_gap(a, kWorked, 0.10, 0.25) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("financier gap is affine in the share") {
  const FundAllocation a(100.0, 0.5);
  // h(0.10) = 3.75 - 0.9 * 5 = -0.75
  CHECK(financier_gap(a, kWorked, 0.10, 0.10) == doctest::Approx(-0.75).epsilon(1e-12));
  CHECK(expected_payoffs(a, kWorked, 0.10, 0.10).e_p1 == doctest::Approx(4.5));
  const double h0 = financier_gap(a, kWorked, 0.10, 0.0);
  const double h1 = financier_gap(a, kWorked, 0.10, 1.0);
  CHECK(financier_gap(a, kWorked, 0.10, 0.4) == doctest::Approx(h0 + 0.4 * (h1 - h0)));
}

TEST_CASE("degenerate returns have zero variance") {
  const PayoffSummary s =
      expected_payoffs(FundAllocation(10.0, 0.6), ReturnDistribution::degenerate(0.3), 0.2, 0.3);
  CHECK(s.v_p1 == doctest::Approx(0.0).scale(1.0));
  CHECK(s.v_p2 == doctest::Approx(0.0).scale(1.0));
  CHECK(s.e_p2 == doctest::Approx(4.0 * 0.2));
  CHECK(s.e_y2 == doctest::Approx(4.0 * 0.1));
}

TEST_CASE("continuous payoffs conserve total output") {
  const FundAllocation a(100.0, 0.75);
  const auto u = ReturnDistribution::uniform(0.0, 1.0);
  const PayoffSummary s = expected_payoffs(a, u, 0.3, 0.2);
  CHECK(s.e_p1 + s.e_y1 == doctest::Approx(75.0 * 0.5).epsilon(1e-10));
  CHECK(s.e_p2 + s.e_y2 == doctest::Approx(25.0 * 0.5).epsilon(1e-10));
  CHECK(s.e_p2 == doctest::Approx(25.0 * (0.3 - 0.045)).epsilon(1e-9));
}
