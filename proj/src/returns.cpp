#include "frsr/returns.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/normal.hpp>

#include "frsr/error.hpp"

namespace frsr {

namespace {

using Kind = ReturnDistribution::Kind;

void require_open_unit(double v, const char* what) {
  if (!(v > 0.0 && v < 1.0)) {
    std::ostringstream os;
    os << what << " must lie in (0, 1), got " << v;
    throw ValidationError(os.str());
  }
}

// Clip a [0, 1]-style support to [eps, 1 - eps]; anything outside [0, 1] is an error.
std::pair<double, double> clip_support(double lo, double hi, const char* family) {
  if (!(lo >= 0.0 && hi <= 1.0 && lo < hi)) {
    std::ostringstream os;
    os << family << ": support [" << lo << ", " << hi << "] must satisfy 0 <= lo < hi <= 1";
    throw ValidationError(os.str());
  }
  lo = std::max(lo, ReturnDistribution::kEdge);
  hi = std::min(hi, 1.0 - ReturnDistribution::kEdge);
  if (!(lo < hi)) throw ValidationError(std::string(family) + ": support collapses after clipping");
  return {lo, hi};
}

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

}  // namespace

std::string_view kind_name(Kind kind) {
  switch (kind) {
    case Kind::Degenerate:
      return "degenerate";
    case Kind::Discrete:
      return "discrete";
    case Kind::Uniform:
      return "uniform";
    case Kind::ScaledBeta:
      return "beta";
    case Kind::TruncatedNormal:
      return "truncnormal";
  }
  return "?";
}

ReturnDistribution ReturnDistribution::degenerate(double r0) {
  require_open_unit(r0, "degenerate: r0");
  ReturnDistribution d;
  d.kind_ = Kind::Degenerate;
  d.lo_ = d.hi_ = r0;
  d.law_ = DiscreteLaw::point(r0);
  return d;
}

ReturnDistribution ReturnDistribution::discrete(std::vector<Atom> atoms) {
  for (const Atom& a : atoms) require_open_unit(a.value, "discrete: atom value");
  ReturnDistribution d;
  d.kind_ = Kind::Discrete;
  d.law_ = DiscreteLaw(std::move(atoms));
  d.lo_ = d.law_.min();
  d.hi_ = d.law_.max();
  return d;
}

ReturnDistribution ReturnDistribution::uniform(double lo, double hi) {
  ReturnDistribution d;
  d.kind_ = Kind::Uniform;
  std::tie(d.lo_, d.hi_) = clip_support(lo, hi, "uniform");
  d.log_norm_ = -std::log(d.hi_ - d.lo_);
  return d;
}

ReturnDistribution ReturnDistribution::scaled_beta(double a, double b, double lo, double hi) {
  if (!(a > 0.0 && b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw ValidationError("beta: shape parameters a, b must be > 0");
  }
  ReturnDistribution d;
  d.kind_ = Kind::ScaledBeta;
  std::tie(d.lo_, d.hi_) = clip_support(lo, hi, "beta");
  d.p1_ = a;
  d.p2_ = b;
  const double log_beta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  d.log_norm_ = -log_beta - std::log(d.hi_ - d.lo_);
  return d;
}

ReturnDistribution ReturnDistribution::truncated_normal(double mu, double sigma, double lo,
                                                        double hi) {
  if (!(sigma > 0.0) || !std::isfinite(sigma) || !std::isfinite(mu)) {
    throw ValidationError("truncnormal: sigma must be > 0 and mu finite");
  }
  ReturnDistribution d;
  d.kind_ = Kind::TruncatedNormal;
  std::tie(d.lo_, d.hi_) = clip_support(lo, hi, "truncnormal");
  d.p1_ = mu;
  d.p2_ = sigma;
  const double mass = std_normal_cdf((d.hi_ - mu) / sigma) - std_normal_cdf((d.lo_ - mu) / sigma);
  if (!(mass > 1e-300)) throw ValidationError("truncnormal: support carries no probability mass");
  d.log_norm_ = -std::log(mass) - std::log(sigma) - 0.5 * std::log(2.0 * std::numbers::pi);
  return d;
}

const DiscreteLaw& ReturnDistribution::law() const {
  if (!is_discrete()) throw ValidationError("law(): distribution is continuous");
  return law_;
}

double ReturnDistribution::pdf(double x) const {
  if (x < lo_ || x > hi_) return 0.0;
  switch (kind_) {
    case Kind::Uniform:
      return std::exp(log_norm_);
    case Kind::ScaledBeta: {
      const double y = (x - lo_) / (hi_ - lo_);
      return std::exp(log_norm_ + (p1_ - 1.0) * std::log(y) + (p2_ - 1.0) * std::log1p(-y));
    }
    case Kind::TruncatedNormal: {
      const double z = (x - p1_) / p2_;
      return std::exp(log_norm_ - 0.5 * z * z);
    }
    case Kind::Degenerate:
    case Kind::Discrete:
      break;
  }
  throw ValidationError("pdf(): distribution is discrete");
}

double ReturnDistribution::cdf(double x) const {
  if (x < lo_) return 0.0;
  if (x >= hi_) return 1.0;
  switch (kind_) {
    case Kind::Degenerate:
    case Kind::Discrete: {
      double acc = 0.0;
      for (const Atom& a : law_.atoms()) {
        if (a.value > x) break;
        acc += a.prob;
      }
      return std::min(acc, 1.0);
    }
    case Kind::Uniform:
      return (x - lo_) / (hi_ - lo_);
    case Kind::ScaledBeta:
      return boost::math::cdf(boost::math::beta_distribution<>(p1_, p2_),
                              (x - lo_) / (hi_ - lo_));
    case Kind::TruncatedNormal: {
      const double a = std_normal_cdf((lo_ - p1_) / p2_);
      const double b = std_normal_cdf((hi_ - p1_) / p2_);
      return (std_normal_cdf((x - p1_) / p2_) - a) / (b - a);
    }
  }
  return 0.0;
}

double ReturnDistribution::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("quantile: p must lie in [0, 1]");
  switch (kind_) {
    case Kind::Degenerate:
    case Kind::Discrete: {
      double acc = 0.0;
      for (const Atom& a : law_.atoms()) {
        acc += a.prob;
        if (acc >= p) return a.value;
      }
      return hi_;
    }
    case Kind::Uniform:
      return lo_ + p * (hi_ - lo_);
    case Kind::ScaledBeta:
      return lo_ + (hi_ - lo_) *
                       boost::math::quantile(boost::math::beta_distribution<>(p1_, p2_), p);
    case Kind::TruncatedNormal: {
      const boost::math::normal_distribution<> n(p1_, p2_);
      const double a = boost::math::cdf(n, lo_);
      const double b = boost::math::cdf(n, hi_);
      const double q = a + p * (b - a);
      if (q <= 0.0) return lo_;
      if (q >= 1.0) return hi_;
      return std::clamp(boost::math::quantile(n, q), lo_, hi_);
    }
  }
  return lo_;
}

std::string ReturnDistribution::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << kind_name(kind_) << "(";
  switch (kind_) {
    case Kind::Degenerate:
      os << lo_;
      break;
    case Kind::Discrete: {
      bool first = true;
      for (const Atom& a : law_.atoms()) {
        os << (first ? "" : ", ") << a.value << ":" << a.prob;
        first = false;
      }
      break;
    }
    case Kind::Uniform:
      os << lo_ << ", " << hi_;
      break;
    case Kind::ScaledBeta:
    case Kind::TruncatedNormal:
      os << p1_ << ", " << p2_ << ", " << lo_ << ", " << hi_;
      break;
  }
  os << ")";
  return os.str();
}

namespace {

// Algebraic endpoint factors of the density. A beta density on [lo, hi] is
// (x - lo)^(a - 1) (hi - x)^(b - 1) times a constant; pieces touching an
// endpoint absorb that factor into a Gauss-Jacobi weight so only smooth
// factors are sampled.
struct EndpointPowers {
  double left = 0.0;
  double right = 0.0;
};

void append_piece(const ReturnDistribution& dist, int order, double x0, double x1,
                  EndpointPowers powers, NodeSet& out) {
  const double width = x1 - x0;
  if (dist.kind() != ReturnDistribution::Kind::ScaledBeta ||
      (powers.left == 0.0 && powers.right == 0.0)) {
    const auto rule = gauss_legendre(order);
    for (int i = 0; i < order; ++i) {
      const double x = x0 + 0.5 * width * (rule->nodes[i] + 1.0);
      out.x.push_back(x);
      out.w.push_back(0.5 * width * rule->weights[i] * dist.pdf(x));
    }
    return;
  }

  // weight (1 - z)^right (1 + z)^left on [-1, 1], z = 2 t - 1, x = x0 + width t
  const auto rule = gauss_jacobi(order, powers.right, powers.left);
  const double span = dist.hi() - dist.lo();
  const double a1 = dist.shape1() - 1.0;
  const double b1 = dist.shape2() - 1.0;
  const double log_c = std::lgamma(dist.shape1() + dist.shape2()) - std::lgamma(dist.shape1()) -
                       std::lgamma(dist.shape2()) - std::log(span);
  // (x - lo)/span = (width/span) t on a left-end piece, likewise for the right end
  const double log_scale = std::log(width / span);
  const double log_jac = std::log(0.5 * width) - (powers.left + powers.right) * std::log(2.0);
  for (int i = 0; i < order; ++i) {
    const double z = rule->nodes[i];
    const double t = 0.5 * (1.0 + z);
    const double x = x0 + width * t;
    const double y = std::clamp((x - dist.lo()) / span, 0.0, 1.0);
    double log_w = log_c + log_jac;
    log_w += powers.left != 0.0 ? powers.left * log_scale : a1 * std::log(y);
    log_w += powers.right != 0.0 ? powers.right * log_scale : b1 * std::log1p(-y);
    out.x.push_back(x);
    out.w.push_back(rule->weights[i] * std::exp(log_w));
  }
}

}  // namespace

NodeSet integration_nodes(const ReturnDistribution& dist, const QuadratureSpec& quad,
                          std::span<const double> breaks) {
  NodeSet out;
  if (dist.is_discrete()) {
    for (const Atom& a : dist.law().atoms()) {
      out.x.push_back(a.value);
      out.w.push_back(a.prob);
    }
    return out;
  }
  if (quad.nodes < 2) throw ValidationError("quadrature: node_count must be >= 2");

  std::vector<double> cuts{dist.lo()};
  for (double b : breaks) {
    if (b > dist.lo() && b < dist.hi()) cuts.push_back(b);
  }
  cuts.push_back(dist.hi());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  EndpointPowers ends;
  if (dist.kind() == ReturnDistribution::Kind::ScaledBeta) {
    ends.left = dist.shape1() - 1.0;
    ends.right = dist.shape2() - 1.0;
  }

  out.x.reserve(quad.nodes * (cuts.size() + 1));
  out.w.reserve(quad.nodes * (cuts.size() + 1));
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    EndpointPowers p;
    if (k == 0) p.left = ends.left;
    if (k + 2 == cuts.size()) p.right = ends.right;
    append_piece(dist, quad.nodes, cuts[k], cuts[k + 1], p, out);
  }
  return out;
}

double expect(const ReturnDistribution& dist, const std::function<double(double)>& f,
              const QuadratureSpec& quad, std::span<const double> breaks) {
  const NodeSet nodes = integration_nodes(dist, quad, breaks);
  double acc = 0.0;
  for (std::size_t i = 0; i < nodes.x.size(); ++i) {
    const double v = f(nodes.x[i]);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os.precision(17);
      os << "expect: transform is non-finite at r = " << nodes.x[i];
      throw EvaluationError(os.str(), nodes.x[i]);
    }
    acc += nodes.w[i] * v;
  }
  return acc;
}

kernels::Sums transform_moments(const ReturnDistribution& dist, const RateTransform& t,
                                const QuadratureSpec& quad) {
  if (dist.is_discrete()) {
    // ordered scalar enumeration keeps discrete results bit-reproducible
    const auto atoms = dist.law().atoms();
    kernels::Sums acc;
    for (const Atom& a : atoms) {
      const double v = t(a.value);
      const double wv = a.prob * v;
      acc.s1 += wv;
      acc.s2 += wv * v;
    }
    return acc;
  }
  std::vector<double> breaks;
  if (auto k = t.kink()) breaks.push_back(*k);
  const NodeSet nodes = integration_nodes(dist, quad, breaks);
  return kernels::weighted_sums(t, nodes.x, nodes.w);
}

double expect(const ReturnDistribution& dist, const RateTransform& t, const QuadratureSpec& quad) {
  return transform_moments(dist, t, quad).s1;
}

double mean(const ReturnDistribution& dist, const QuadratureSpec& quad) {
  if (dist.kind() == ReturnDistribution::Kind::Degenerate) return dist.lo();
  return expect(dist, RateTransform::identity(), quad);
}

double variance(const ReturnDistribution& dist, const QuadratureSpec& quad) {
  if (dist.kind() == ReturnDistribution::Kind::Degenerate) return 0.0;
  if (dist.is_discrete()) return dist.law().variance();
  const auto s = transform_moments(dist, RateTransform::identity(), quad);
  return std::max(0.0, s.s2 - s.s1 * s.s1);
}

double partial_expectation_min(const ReturnDistribution& dist, double rate,
                               const QuadratureSpec& quad) {
  require_open_unit(rate, "partial_expectation_min: D");
  return expect(dist, RateTransform::cap(rate), quad);
}

double partial_expectation_call(const ReturnDistribution& dist, double rate,
                                const QuadratureSpec& quad) {
  require_open_unit(rate, "partial_expectation_call: D");
  return expect(dist, RateTransform::call(rate), quad);
}

std::vector<double> sample(const ReturnDistribution& dist, std::uint64_t seed, std::size_t n) {
  if (n == 0) throw ValidationError("sample: n must be >= 1");
  std::vector<double> out(n);
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  switch (dist.kind()) {
    case Kind::Degenerate:
      std::fill(out.begin(), out.end(), dist.lo());
      break;
    case Kind::Discrete: {
      const auto atoms = dist.law().atoms();
      std::vector<double> cum;
      cum.reserve(atoms.size());
      double acc = 0.0;
      for (const Atom& a : atoms) cum.push_back(acc += a.prob);
      for (double& x : out) {
        const double u = unit(gen) * acc;
        auto it = std::upper_bound(cum.begin(), cum.end(), u);
        if (it == cum.end()) --it;
        x = atoms[static_cast<std::size_t>(it - cum.begin())].value;
      }
      break;
    }
    case Kind::Uniform:
      for (double& x : out) x = dist.lo() + (dist.hi() - dist.lo()) * unit(gen);
      break;
    case Kind::ScaledBeta: {
      std::gamma_distribution<double> ga(dist.shape1(), 1.0);
      std::gamma_distribution<double> gb(dist.shape2(), 1.0);
      for (double& x : out) {
        const double g1 = ga(gen);
        const double g2 = gb(gen);
        const double y = g1 + g2 > 0.0 ? g1 / (g1 + g2) : 0.5;
        x = dist.lo() + (dist.hi() - dist.lo()) * y;
      }
      break;
    }
    case Kind::TruncatedNormal: {
      const double mu = dist.shape1();
      const double sigma = dist.shape2();
      const double mass = std_normal_cdf((dist.hi() - mu) / sigma) -
                          std_normal_cdf((dist.lo() - mu) / sigma);
      if (mass >= 0.05) {
        std::normal_distribution<double> normal(mu, sigma);
        for (double& x : out) {
          do {
            x = normal(gen);
          } while (!(x >= dist.lo() && x <= dist.hi()));
        }
      } else {
        for (double& x : out) x = dist.quantile(unit(gen));
      }
      break;
    }
  }
  return out;
}

DiscreteLaw discretize(const ReturnDistribution& dist, std::size_t atoms) {
  if (dist.is_discrete()) return dist.law();
  if (atoms == 0) throw ValidationError("discretize: atoms must be >= 1");
  std::vector<Atom> out;
  out.reserve(atoms);
  const double p = 1.0 / static_cast<double>(atoms);
  for (std::size_t k = 0; k < atoms; ++k) {
    out.push_back({dist.quantile((static_cast<double>(k) + 0.5) * p), p});
  }
  return DiscreteLaw(std::move(out), 1e-14);
}

}  // namespace frsr
