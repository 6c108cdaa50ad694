#include "frsr/kernels.hpp"

namespace frsr::kernels::scalar {

namespace {

template <RateTransform::Kind K>
inline double apply(double x, double scale, double level) {
  const double v = scale * x;
  if constexpr (K == RateTransform::Kind::Cap) {
    return v < level ? v : level;
  } else if constexpr (K == RateTransform::Kind::Call) {
    const double c = v - level;
    return c > 0.0 ? c : 0.0;
  } else {
    return v;
  }
}

template <RateTransform::Kind K>
Sums weighted(const double* x, const double* w, std::size_t n, double scale, double level) {
  Sums out;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = apply<K>(x[i], scale, level);
    const double wt = w[i] * t;
    out.s1 += wt;
    out.s2 += wt * t;
  }
  return out;
}

template <RateTransform::Kind K>
Sums unweighted(const double* x, std::size_t n, double scale, double level) {
  Sums out;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = apply<K>(x[i], scale, level);
    out.s1 += t;
    out.s2 += t * t;
  }
  return out;
}

}  // namespace

Sums weighted_sums(const RateTransform& t, const double* x, const double* w, std::size_t n) {
  switch (t.kind) {
    case RateTransform::Kind::Cap:
      return weighted<RateTransform::Kind::Cap>(x, w, n, t.scale, t.level);
    case RateTransform::Kind::Call:
      return weighted<RateTransform::Kind::Call>(x, w, n, t.scale, t.level);
    case RateTransform::Kind::Linear:
      break;
  }
  return weighted<RateTransform::Kind::Linear>(x, w, n, t.scale, t.level);
}

Sums sample_sums(const RateTransform& t, const double* x, std::size_t n) {
  switch (t.kind) {
    case RateTransform::Kind::Cap:
      return unweighted<RateTransform::Kind::Cap>(x, n, t.scale, t.level);
    case RateTransform::Kind::Call:
      return unweighted<RateTransform::Kind::Call>(x, n, t.scale, t.level);
    case RateTransform::Kind::Linear:
      break;
  }
  return unweighted<RateTransform::Kind::Linear>(x, n, t.scale, t.level);
}

}  // namespace frsr::kernels::scalar
