#pragma once

#include <memory>
#include <vector>

namespace frsr {

/// Quadrature settings for continuous return distributions.
struct QuadratureSpec {
  static constexpr int kDefaultNodes = 256;
  int nodes = kDefaultNodes;  ///< Gauss-Legendre order per integration piece
  friend bool operator==(const QuadratureSpec&, const QuadratureSpec&) = default;
};

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Shared, cached rule of the given order (order >= 2). Thread-safe.
std::shared_ptr<const GaussLegendreRule> gauss_legendre(int order);

/// Rule mapped onto [lo, hi]; weights sum to hi - lo.
GaussLegendreRule gauss_legendre(int order, double lo, double hi);

/// Gauss-Jacobi rule on [-1, 1] for the weight (1 - z)^alpha (1 + z)^beta,
/// alpha, beta > -1, by Golub-Welsch. Cached and thread-safe like the
/// Legendre rules; alpha = beta = 0 returns the Legendre rule.
std::shared_ptr<const GaussLegendreRule> gauss_jacobi(int order, double alpha, double beta);

}  // namespace frsr
