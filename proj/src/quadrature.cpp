#include "frsr/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "frsr/error.hpp"

namespace frsr {

namespace {

// Newton iteration on P_n from the Chebyshev-like initial guess; nodes are
// symmetric so only half are computed.
GaussLegendreRule compute_rule(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double step = p1 / dp;
      z -= step;
      if (std::abs(step) < 1e-16) break;
    }
    // recompute the derivative at the converged node
    double p0 = 1.0, p1 = z;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n * (z * p1 - p0) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

// Golub-Welsch: nodes are the eigenvalues of the Jacobi matrix of the monic
// recurrence, weights mu0 times the squared first eigenvector components.
GaussLegendreRule compute_jacobi_rule(int n, double a, double b) {
  const double ab = a + b;
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(n);  // sub[k - 1] = sqrt(b_k), k = 1..n; b_n only feeds the recurrence
  diag[0] = (b - a) / (ab + 2.0);
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + ab;
    diag[k] = (b * b - a * a) / (s * (s + 2.0));
  }
  for (int k = 1; k <= n; ++k) {
    const double s = 2.0 * k + ab;
    const double num = 4.0 * k * (k + a) * (k + b) * (k + ab);
    // k = 1 has a removable 0/0 when a + b = -1
    const double b2 = k == 1 ? 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab))
                             : num / (s * s * (s + 1.0) * (s - 1.0));
    sub[k - 1] = std::sqrt(b2);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw InvariantError("gauss_jacobi: eigensolver failed");

  // Christoffel numbers: w_i = 1 / sum_k p_k(z_i)^2 over the orthonormal
  // polynomials, evaluated by the same three-term recurrence.
  const double log_mu0 = (ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                         std::lgamma(ab + 2.0);
  const double p0 = std::exp(-0.5 * log_mu0);
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // p_n and its derivative at z, plus sum_{k<n} p_k(z)^2
  auto evaluate = [&](double z, double& pn, double& dpn) {
    double prev = 0.0, cur = p0, dprev = 0.0, dcur = 0.0, sum = p0 * p0;
    for (int k = 0; k < n; ++k) {
      const double back = k > 0 ? sub[k - 1] : 0.0;
      const double next = ((z - diag[k]) * cur - back * prev) / sub[k];
      const double dnext = ((z - diag[k]) * dcur + cur - back * dprev) / sub[k];
      prev = cur;
      cur = next;
      dprev = dcur;
      dcur = dnext;
      if (k + 1 < n) sum += cur * cur;
    }
    pn = cur;
    dpn = dcur;
    return sum;
  };
  for (int i = 0; i < n; ++i) {
    double z = solver.eigenvalues()[i];
    double pn = 0.0, dpn = 0.0;
    for (int iter = 0; iter < 3; ++iter) {
      evaluate(z, pn, dpn);
      const double step = pn / dpn;
      if (!std::isfinite(step) || std::abs(step) > 1e-10) break;
      z -= step;
      if (std::abs(step) < 1e-17) break;
    }
    rule.nodes[i] = z;
    rule.weights[i] = 1.0 / evaluate(z, pn, dpn);
  }
  return rule;
}

}  // namespace

std::shared_ptr<const GaussLegendreRule> gauss_jacobi(int order, double alpha, double beta) {
  if (alpha == 0.0 && beta == 0.0) return gauss_legendre(order);
  if (order < 2) throw ValidationError("quadrature: node_count must be >= 2");
  if (!(alpha > -1.0 && beta > -1.0)) throw ValidationError("gauss_jacobi: exponents must be > -1");
  static std::mutex mutex;
  static std::map<std::tuple<int, double, double>, std::shared_ptr<const GaussLegendreRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{order, alpha, beta}];
  if (!slot) slot = std::make_shared<const GaussLegendreRule>(compute_jacobi_rule(order, alpha, beta));
  return slot;
}

std::shared_ptr<const GaussLegendreRule> gauss_legendre(int order) {
  if (order < 2) throw ValidationError("quadrature: node_count must be >= 2");
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const GaussLegendreRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[order];
  if (!slot) slot = std::make_shared<const GaussLegendreRule>(compute_rule(order));
  return slot;
}

GaussLegendreRule gauss_legendre(int order, double lo, double hi) {
  const auto base = gauss_legendre(order);
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  GaussLegendreRule out;
  out.nodes.reserve(order);
  out.weights.reserve(order);
  for (int i = 0; i < order; ++i) {
    out.nodes.push_back(mid + half * base->nodes[i]);
    out.weights.push_back(half * base->weights[i]);
  }
  return out;
}

}  // namespace frsr
