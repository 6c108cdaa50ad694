// Built with -mavx2 only on x86-64; the dispatcher never calls into this
// translation unit unless the CPU reports AVX2.
#include "frsr/kernels.hpp"

#if defined(__AVX2__)
#include <immintrin.h>

namespace frsr::kernels::avx2 {

namespace {

template <RateTransform::Kind K>
inline __m256d apply(__m256d x, __m256d scale, __m256d level, __m256d zero) {
  const __m256d v = _mm256_mul_pd(scale, x);
  if constexpr (K == RateTransform::Kind::Cap) {
    return _mm256_min_pd(v, level);
  } else if constexpr (K == RateTransform::Kind::Call) {
    return _mm256_max_pd(_mm256_sub_pd(v, level), zero);
  } else {
    return v;
  }
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

template <RateTransform::Kind K>
Sums reduce(const double* x, const double* w, std::size_t n, double scale_s, double level_s) {
  const __m256d scale = _mm256_set1_pd(scale_s);
  const __m256d level = _mm256_set1_pd(level_s);
  const __m256d zero = _mm256_setzero_pd();
  __m256d a1 = zero, a2 = zero, b1 = zero, b2 = zero;

  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d ta = apply<K>(_mm256_loadu_pd(x + i), scale, level, zero);
    const __m256d tb = apply<K>(_mm256_loadu_pd(x + i + 4), scale, level, zero);
    const __m256d wa = w ? _mm256_mul_pd(_mm256_loadu_pd(w + i), ta) : ta;
    const __m256d wb = w ? _mm256_mul_pd(_mm256_loadu_pd(w + i + 4), tb) : tb;
    a1 = _mm256_add_pd(a1, wa);
    b1 = _mm256_add_pd(b1, wb);
    a2 = _mm256_add_pd(a2, _mm256_mul_pd(wa, ta));
    b2 = _mm256_add_pd(b2, _mm256_mul_pd(wb, tb));
  }
  Sums out{hsum(_mm256_add_pd(a1, b1)), hsum(_mm256_add_pd(a2, b2))};

  // tail through the scalar reference so both paths share the edge semantics
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

}  // namespace frsr::kernels::avx2

#else

namespace frsr::kernels::avx2 {

Sums weighted_sums(const RateTransform& t, const double* x, const double* w, std::size_t n) {
  return scalar::weighted_sums(t, x, w, n);
}

Sums sample_sums(const RateTransform& t, const double* x, std::size_t n) {
  return scalar::sample_sums(t, x, n);
}

}  // namespace frsr::kernels::avx2

#endif
