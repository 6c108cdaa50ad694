#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "frsr/error.hpp"
#include "frsr/quadrature.hpp"

using namespace frsr;

namespace {

// int_{-1}^{1} (1 - z)^a (1 + z)^(b + k) dz, by the beta function
double jacobi_moment(double a, double b, int k) {
  const double bk = b + k;
  return std::exp((a + bk + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(bk + 1.0) -
                  std::lgamma(a + bk + 2.0));
}

}  // namespace

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n - 1 exactly") {
  for (int n : {2, 5, 16, 256}) {
    const auto rule = gauss_legendre(n);
    CHECK(std::accumulate(rule->weights.begin(), rule->weights.end(), 0.0) ==
          doctest::Approx(2.0).epsilon(1e-14));
    double m = 0.0;
    for (int i = 0; i < n; ++i) m += rule->weights[i] * std::pow(rule->nodes[i], 2 * (n - 1));
    CHECK(m == doctest::Approx(2.0 / (2 * n - 1)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(gauss_legendre(1), ValidationError);
  CHECK(gauss_legendre(64) == gauss_legendre(64));
}

TEST_CASE("mapped rule") {
  const GaussLegendreRule r = gauss_legendre(8, 0.2, 0.7);
  double area = 0.0, first = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    area += r.weights[i];
    first += r.weights[i] * r.nodes[i];
  }
  CHECK(area == doctest::Approx(0.5));
  CHECK(first == doctest::Approx((0.49 - 0.04) / 2));
}

TEST_CASE("Gauss-Jacobi matches beta-function moments") {
  for (auto [a, b] : {std::pair{-0.5, -0.5}, {0.147, 3.2}, {-0.3, 0.0}, {4.0, -0.8}, {-0.5, 0.5}}) {
    for (int n : {4, 32, 256}) {
      CAPTURE(a);
      CAPTURE(b);
      CAPTURE(n);
      const auto rule = gauss_jacobi(n, a, b);
      // (1 + z)^k is a polynomial of degree k, integrated exactly while k <= 2n - 1
      for (int k : {0, 1, 3, std::min(2 * n - 1, 12)}) {
        double m = 0.0;
        for (int i = 0; i < n; ++i) m += rule->weights[i] * std::pow(1.0 + rule->nodes[i], k);
        CHECK(m == doctest::Approx(jacobi_moment(a, b, k)).epsilon(1e-12));
      }
      for (int i = 0; i < n; ++i) {
        REQUIRE(rule->weights[i] > 0.0);
        REQUIRE(std::abs(rule->nodes[i]) < 1.0);
      }
    }
  }
  CHECK(gauss_jacobi(16, 0.0, 0.0) == gauss_legendre(16));
  CHECK_THROWS_AS(gauss_jacobi(16, -1.0, 0.5), ValidationError);
}
