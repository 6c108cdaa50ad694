#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/special_functions/beta.hpp>
#include <random>

#include "doctest.h"
#include "frsr/error.hpp"
#include "frsr/returns.hpp"

using namespace frsr;

namespace {

double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI); }
double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

TEST_CASE("uniform partial expectations match closed forms") {
  const auto u = ReturnDistribution::uniform(0.0, 1.0);
  CHECK(mean(u) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(variance(u) == doctest::Approx(1.0 / 12.0).epsilon(1e-7));
  for (double d : {0.1, 0.3, 0.5, 0.9}) {
    CAPTURE(d);
    CHECK(std::abs(partial_expectation_min(u, d) - (d - d * d / 2)) < 1e-8);
    CHECK(std::abs(partial_expectation_call(u, d) - (1 - d) * (1 - d) / 2) < 1e-8);
  }
}

TEST_CASE("discrete partial expectations by enumeration") {
  const auto r = ReturnDistribution::discrete({{0.05, 0.5}, {0.15, 0.5}});
  CHECK(mean(r) == doctest::Approx(0.10));
  CHECK(partial_expectation_min(r, 0.10) == doctest::Approx(0.075));
  CHECK(partial_expectation_call(r, 0.10) == doctest::Approx(0.025));
  const auto d = ReturnDistribution::degenerate(0.3);
  CHECK(partial_expectation_min(d, 0.2) == doctest::Approx(0.2));
  CHECK(partial_expectation_call(d, 0.2) == doctest::Approx(0.1));
  CHECK(variance(d) == 0.0);
}

TEST_CASE("beta moments") {
  const auto b = ReturnDistribution::scaled_beta(2.0, 5.0, 0.0, 1.0);
  CHECK(mean(b) == doctest::Approx(2.0 / 7.0).epsilon(1e-9));
  CHECK(variance(b) == doctest::Approx(10.0 / (49.0 * 8.0)).epsilon(1e-8));
  // endpoint singularities at both ends
  const auto arcsine = ReturnDistribution::scaled_beta(0.5, 0.5, 0.0, 1.0);
  CHECK(mean(arcsine) == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(variance(arcsine) == doctest::Approx(0.125).epsilon(1e-6));
  const auto skew = ReturnDistribution::scaled_beta(0.5, 3.0, 0.1, 0.7);
  CHECK(mean(skew) == doctest::Approx(0.1 + 0.6 * 0.5 / 3.5).epsilon(1e-8));
}

TEST_CASE("truncated normal mean against the closed form") {
  const double mu = 0.2, sigma = 0.15;
  const auto t = ReturnDistribution::truncated_normal(mu, sigma, 0.0, 1.0);
  const double a = (0.0 - mu) / sigma, b = (1.0 - mu) / sigma;
  const double z = normal_cdf(b) - normal_cdf(a);
  const double expected = mu + sigma * (normal_pdf(a) - normal_pdf(b)) / z;
  CHECK(mean(t) == doctest::Approx(expected).epsilon(1e-8));
  CHECK(t.cdf(t.quantile(0.3)) == doctest::Approx(0.3).epsilon(1e-10));
}

TEST_CASE("support is clipped inside the open unit interval") {
  const auto u = ReturnDistribution::uniform(0.0, 1.0);
  CHECK(u.lo() > 0.0);
  CHECK(u.hi() < 1.0);
  CHECK(u.lo() == ReturnDistribution::kEdge);
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(ReturnDistribution::degenerate(1.2), ValidationError);
  CHECK_THROWS_AS(ReturnDistribution::uniform(0.6, 0.4), ValidationError);
  CHECK_THROWS_AS(ReturnDistribution::scaled_beta(-1.0, 2.0, 0.0, 1.0), ValidationError);
  CHECK_THROWS_AS(ReturnDistribution::truncated_normal(0.2, 0.0, 0.0, 1.0), ValidationError);
  CHECK_THROWS_AS(ReturnDistribution::discrete({{0.1, 0.3}, {0.2, 0.3}}), ValidationError);
  const auto u = ReturnDistribution::uniform(0.0, 1.0);
  CHECK_THROWS_AS(partial_expectation_min(u, 0.0), ValidationError);
  CHECK_THROWS_AS(partial_expectation_call(u, 1.0), ValidationError);
}

TEST_CASE("non-finite integrand reports its abscissa") {
  const auto u = ReturnDistribution::uniform(0.0, 1.0);
  try {
    expect(u, [](double r) { return r > 0.5 ? std::nan("") : r; });
    FAIL("expected EvaluationError");
  } catch (const EvaluationError& e) {
    CHECK(e.abscissa() > 0.5);
  }
}

TEST_CASE("sampling is deterministic and unbiased") {
  for (const auto& dist : {ReturnDistribution::uniform(0.0, 1.0),
                           ReturnDistribution::scaled_beta(2.0, 5.0, 0.0, 1.0),
                           ReturnDistribution::truncated_normal(0.2, 0.15, 0.0, 1.0),
                           ReturnDistribution::discrete({{0.02, 0.1}, {0.35, 0.9}})}) {
    CAPTURE(dist.describe());
    const auto a = sample(dist, 42, 200'000);
    const auto b = sample(dist, 42, 200'000);
    CHECK(a == b);
    CHECK(sample(dist, 43, 10) != sample(dist, 42, 10));
    const double m = std::accumulate(a.begin(), a.end(), 0.0) / a.size();
    const double se = std::sqrt(variance(dist) / a.size());
    CHECK(std::abs(m - mean(dist)) < 5 * se);
    CHECK(std::all_of(a.begin(), a.end(), [&](double x) { return x >= dist.lo() && x <= dist.hi(); }));
  }
}

TEST_CASE("far-tail truncated normal falls back to quantile sampling") {
  const auto t = ReturnDistribution::truncated_normal(-0.5, 0.1, 0.0, 1.0);
  const auto draws = sample(t, 7, 50'000);
  const double m = std::accumulate(draws.begin(), draws.end(), 0.0) / draws.size();
  CHECK(std::abs(m - mean(t)) < 5 * std::sqrt(variance(t) / draws.size()));
}

TEST_CASE("discretization keeps equal weights and the mean") {
  const auto b = ReturnDistribution::scaled_beta(2.0, 5.0, 0.0, 1.0);
  const DiscreteLaw law = discretize(b, 512);
  CHECK(law.size() == 512);
  CHECK(law.mean() == doctest::Approx(mean(b)).epsilon(1e-4));
  const auto d = ReturnDistribution::discrete({{0.05, 0.5}, {0.15, 0.5}});
  CHECK(discretize(d) == d.law());
}

TEST_CASE("integration nodes carry unit mass with breaks") {
  const auto u = ReturnDistribution::uniform(0.0, 1.0);
  const double breaks[] = {0.3, 0.7};
  const NodeSet nodes = integration_nodes(u, {64}, breaks);
  CHECK(nodes.x.size() == 3 * 64);
  CHECK(std::accumulate(nodes.w.begin(), nodes.w.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("beta partial expectations against the incomplete beta function") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 40; ++i) {
    const double a = 0.3 + 6.0 * unit(rng), b = 0.3 + 6.0 * unit(rng), d = 0.02 + 0.96 * unit(rng);
    const auto dist = ReturnDistribution::scaled_beta(a, b, 0.0, 1.0);
    const double span = dist.hi() - dist.lo();
    const double y = (d - dist.lo()) / span;
    // E[min(Y, y)] = a/(a+b) I_y(a+1, b) + y (1 - I_y(a, b))
    const double emin = dist.lo() + span * (a / (a + b) * boost::math::ibeta(a + 1, b, y) +
                                            y * boost::math::ibetac(a, b, y));
    CAPTURE(dist.describe());
    CAPTURE(d);
    CHECK(std::abs(partial_expectation_min(dist, d) - emin) < 1e-12);
    CHECK(std::abs(mean(dist) - (dist.lo() + span * a / (a + b))) < 1e-12);
  }
}
