#include "frsr/kernels.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)
#include <arm_neon.h>

namespace frsr::kernels::neon {

namespace {

template <RateTransform::Kind K>
inline float64x2_t apply(float64x2_t x, float64x2_t scale, float64x2_t level, float64x2_t zero) {
  const float64x2_t v = vmulq_f64(scale, x);
  if constexpr (K == RateTransform::Kind::Cap) {
    return vminq_f64(v, level);
  } else if constexpr (K == RateTransform::Kind::Call) {
    return vmaxq_f64(vsubq_f64(v, level), zero);
  } else {
    return v;
  }
}

template <RateTransform::Kind K>
Sums reduce(const double* x, const double* w, std::size_t n, double scale_s, double level_s) {
  const float64x2_t scale = vdupq_n_f64(scale_s);
  const float64x2_t level = vdupq_n_f64(level_s);
  const float64x2_t zero = vdupq_n_f64(0.0);
  float64x2_t a1 = zero, a2 = zero, b1 = zero, b2 = zero;

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const float64x2_t ta = apply<K>(vld1q_f64(x + i), scale, level, zero);
    const float64x2_t tb = apply<K>(vld1q_f64(x + i + 2), scale, level, zero);
    const float64x2_t wa = w ? vmulq_f64(vld1q_f64(w + i), ta) : ta;
    const float64x2_t wb = w ? vmulq_f64(vld1q_f64(w + i + 2), tb) : tb;
    a1 = vaddq_f64(a1, wa);
    b1 = vaddq_f64(b1, wb);
    a2 = vaddq_f64(a2, vmulq_f64(wa, ta));
    b2 = vaddq_f64(b2, vmulq_f64(wb, tb));
  }
  Sums out{vaddvq_f64(vaddq_f64(a1, b1)), vaddvq_f64(vaddq_f64(a2, b2))};
  if (i < n) {
    const Sums tail = w ? scalar::weighted_sums({K, scale_s, level_s}, x + i, w + i, n - i)
                        : scalar::sample_sums({K, scale_s, level_s}, x + i, n - i);
    out.s1 += tail.s1;
    out.s2 += tail.s2;
  }
  return out;
}

Sums dispatch(const RateTransform& t, const double* x, const double* w, std::size_t n) {
  switch (t.kind) {
    case RateTransform::Kind::Cap:
      return reduce<RateTransform::Kind::Cap>(x, w, n, t.scale, t.level);
    case RateTransform::Kind::Call:
      return reduce<RateTransform::Kind::Call>(x, w, n, t.scale, t.level);
    case RateTransform::Kind::Linear:
      break;
  }
  return reduce<RateTransform::Kind::Linear>(x, w, n, t.scale, t.level);
}

}  // namespace

Sums weighted_sums(const RateTransform& t, const double* x, const double* w, std::size_t n) {
  return dispatch(t, x, w, n);
}

Sums sample_sums(const RateTransform& t, const double* x, std::size_t n) {
  return dispatch(t, x, nullptr, n);
}

}  // namespace frsr::kernels::neon

#else

namespace frsr::kernels::neon {

Sums weighted_sums(const RateTransform& t, const double* x, const double* w, std::size_t n) {
  return scalar::weighted_sums(t, x, w, n);
}

Sums sample_sums(const RateTransform& t, const double* x, std::size_t n) {
  return scalar::sample_sums(t, x, n);
}

}  // namespace frsr::kernels::neon

#endif
