#include <cstdlib>
#include <stdexcept>
#include <string>

#include "frsr/kernels.hpp"

namespace frsr::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(FRSR_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__)) && \
    (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

bool cpu_has_neon() {
#if defined(__aarch64__) && defined(__ARM_NEON)
  return true;
#else
  return false;
#endif
}

Isa detect() {
  if (const char* forced = std::getenv("FRSR_ISA")) {
    const std::string f(forced);
    if (f == "scalar") return Isa::Scalar;
    if (f == "avx2" && cpu_has_avx2()) return Isa::Avx2;
    if (f == "neon" && cpu_has_neon()) return Isa::Neon;
  }
  if (cpu_has_avx2()) return Isa::Avx2;
  if (cpu_has_neon()) return Isa::Neon;
  return Isa::Scalar;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Avx2:
      return "avx2";
    case Isa::Neon:
      return "neon";
    case Isa::Scalar:
      break;
  }
  return "scalar";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Avx2:
      return cpu_has_avx2();
    case Isa::Neon:
      return cpu_has_neon();
    case Isa::Scalar:
      break;
  }
  return true;
}

Isa active_isa() {
  static const Isa isa = detect();
  return isa;
}

Sums weighted_sums(Isa isa, const RateTransform& t, std::span<const double> x,
                   std::span<const double> w) {
  if (x.size() != w.size()) throw std::invalid_argument("weighted_sums: size mismatch");
  switch (isa) {
    case Isa::Avx2:
      return avx2::weighted_sums(t, x.data(), w.data(), x.size());
    case Isa::Neon:
      return neon::weighted_sums(t, x.data(), w.data(), x.size());
    case Isa::Scalar:
      break;
  }
  return scalar::weighted_sums(t, x.data(), w.data(), x.size());
}

Sums sample_sums(Isa isa, const RateTransform& t, std::span<const double> x) {
  switch (isa) {
    case Isa::Avx2:
      return avx2::sample_sums(t, x.data(), x.size());
    case Isa::Neon:
      return neon::sample_sums(t, x.data(), x.size());
    case Isa::Scalar:
      break;
  }
  return scalar::sample_sums(t, x.data(), x.size());
}

Sums weighted_sums(const RateTransform& t, std::span<const double> x, std::span<const double> w) {
  return weighted_sums(active_isa(), t, x, w);
}

Sums sample_sums(const RateTransform& t, std::span<const double> x) {
  return sample_sums(active_isa(), t, x);
}

}  // namespace frsr::kernels
