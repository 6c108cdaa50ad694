#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "frsr/bisection.hpp"
#include "frsr/solvers.hpp"

using namespace frsr;
using F = UtilityFunction::Family;

namespace {
const auto kWorked = ReturnDistribution::discrete({{0.05, 0.5}, {0.15, 0.5}});
}

TEST_CASE("bisection finds the root of an increasing function") {
  const BisectionResult r = bisect_increasing([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-12, 200);
  CHECK(r.converged);
  CHECK(r.root == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(r.hi - r.lo <= 1e-12);
}

TEST_CASE("worked scenario alpha* and D*") {
  const FundAllocation a(100.0, 0.5);
  const SolveReport as = solve_alpha_star(a, kWorked, 0.10);
  REQUIRE(as.ok());
  CHECK(std::abs(as.value - 0.25) <= 1e-9);
  CHECK(as.residual <= 1e-9 * 100.0);
  CHECK(as.flag("beta_ge_half"));
  CHECK(as.flag("closed_form_agrees"));
  CHECK(as.flag("alpha_star_lt_half"));
  const SolveReport ds = solve_d_star(a, kWorked, 0.25);
  REQUIRE(ds.ok());
  CHECK(std::abs(ds.value - 0.10) <= 1e-9);
}

TEST_CASE("uniform alpha* closed form") {
  const auto unif = ReturnDistribution::uniform(0.0, 1.0);
  for (double d : {0.1, 0.3, 0.5, 0.9}) {
    const SolveReport r = solve_alpha_star(FundAllocation(100.0, 0.5), unif, d);
    REQUIRE(r.has_value());
    CHECK(std::abs(r.value - (1.0 - (d - d * d / 2) / 0.5)) <= 1e-6);
  }
}

TEST_CASE("beta below one half has no root") {
  const SolveReport r = solve_alpha_star(FundAllocation(100.0, 0.3), kWorked, 0.10);
  CHECK(r.status == SolveStatus::NoRoot);
  CHECK_FALSE(r.flag("beta_ge_half"));
  CHECK_FALSE(r.message.empty());
  CHECK(status_name(r.status) == "no_root");
}

TEST_CASE("D* is unreachable for a share above the call value") {
  // E[max(R - D, 0)] <= E(R), so alpha * Z1 E(R) > Z2 E(R) has no root
  const SolveReport r = solve_d_star(FundAllocation(100.0, 0.9), kWorked, 0.5);
  CHECK(r.status == SolveStatus::NoRoot);
}

TEST_CASE("indifference rates for a sure return") {
  const auto sure = ReturnDistribution::degenerate(0.3);
  const UtilityFunction u(F::Cara, 10.0, {0.0, 0.5});
  // min(0.3, D) = 0.75 * 0.3 and max(0.3 - D, 0) = 0.25 * 0.3
  const SolveReport dp = solve_indifference_rate(u, sure, Side::Financier, 0.75, 1.0);
  REQUIRE(dp.ok());
  CHECK(dp.value == doctest::Approx(0.225).epsilon(1e-8));
  const SolveReport dy = solve_indifference_rate(u, sure, Side::Investor, 0.25, 1.0);
  REQUIRE(dy.ok());
  CHECK(dy.value == doctest::Approx(0.225).epsilon(1e-8));
  CHECK(dy.residual <= 1e-8);
}

TEST_CASE("risk aversion pushes the financier rate below the mean-equivalent rate") {
  const UtilityFunction u(F::Cara, 10.0, {0.0, 0.2});
  const SolveReport dp = solve_indifference_rate(u, kWorked, Side::Financier, 0.75, 1.0);
  REQUIRE(dp.ok());
  CHECK(dp.value < 0.10);
}

TEST_CASE("Pareto construction on the financier branch") {
  const FundAllocation a(100.0, 0.5);
  const UtilityFunction u(F::Cara, 10.0, {0.0, 0.2});
  const ParetoReport rep = pareto_construct(a, kWorked, 0.10, u, 0.35);
  REQUIRE(rep.premises_hold());
  CHECK(rep.lambda.value == doctest::Approx(0.10).epsilon(1e-8));
  CHECK(rep.multiplier == doctest::Approx(1.05).epsilon(1e-8));
  REQUIRE(rep.half_split.size() == 1);
  CHECK(rep.half_split[0].side == Side::Financier);
  CHECK(rep.d_p.residual <= 1e-8);
  CHECK(rep.d_y.residual <= 1e-8);
  CHECK(rep.improves());
}

TEST_CASE("Pareto construction on the investor branch") {
  const UtilityFunction u(F::Cara, 10.0, {0.0, 0.2});
  const ParetoReport rep = pareto_construct(FundAllocation(100.0, 0.5), kWorked, 0.10, u, 0.15);
  REQUIRE(rep.premises_hold());
  CHECK(rep.gamma.value == doctest::Approx(0.10).epsilon(1e-8));
  CHECK(rep.half_split[0].side == Side::Investor);
}

TEST_CASE("Pareto construction flags the boundary alpha = alpha*") {
  const UtilityFunction u(F::Cara, 10.0, {0.0, 0.2});
  const ParetoReport rep = pareto_construct(FundAllocation(100.0, 0.5), kWorked, 0.10, u, 0.25);
  CHECK_FALSE(rep.premises_hold());
  bool off = true;
  for (const Flag& f : rep.premises) {
    if (f.name == "share_off_alpha_star") off = f.value;
  }
  CHECK_FALSE(off);
}
