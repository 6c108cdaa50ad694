#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "frsr/kernels.hpp"

using namespace frsr;
using kernels::Isa;

namespace {

std::vector<RateTransform> transforms() {
  return {RateTransform::identity(), RateTransform::linear(0.37), RateTransform::cap(0.3),
          RateTransform::call(0.3), RateTransform::cap(0.2, 1.1), RateTransform::call(0.45, 1.05)};
}

void check_close(const kernels::Sums& a, const kernels::Sums& b) {
  CHECK(std::abs(a.s1 - b.s1) <= 1e-13 * std::max(1.0, std::abs(b.s1)));
  CHECK(std::abs(a.s2 - b.s2) <= 1e-13 * std::max(1.0, std::abs(b.s2)));
}

}  // namespace

TEST_CASE("scalar kernel matches a naive loop") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> x(101), w(101);
  for (auto& v : x) v = unif(rng);
  for (auto& v : w) v = unif(rng);
  for (const RateTransform& t : transforms()) {
    double s1 = 0, s2 = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double y = t(x[i]);
      s1 += w[i] * y;
      s2 += w[i] * y * y;
    }
    check_close(kernels::weighted_sums(Isa::Scalar, t, x, w), {s1, s2});
  }
}

TEST_CASE("transform values") {
  CHECK(RateTransform::cap(0.1)(0.05) == 0.05);
  CHECK(RateTransform::cap(0.1)(0.15) == 0.1);
  CHECK(RateTransform::call(0.1)(0.05) == 0.0);
  CHECK(RateTransform::call(0.1)(0.15) == doctest::Approx(0.05));
  CHECK(RateTransform::cap(0.2, 1.25).kink() == doctest::Approx(0.16));
}

TEST_CASE("vector kernels agree with the scalar reference") {
  for (Isa isa : {Isa::Avx2, Isa::Neon}) {
    if (!kernels::isa_available(isa)) {
      MESSAGE("skipping " << kernels::isa_name(isa) << ": not available on this machine");
      continue;
    }
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (std::size_t n : {0, 1, 3, 4, 7, 8, 9, 15, 16, 17, 33, 256, 1001}) {
      std::vector<double> x(n), w(n);
      for (auto& v : x) v = unif(rng);
      for (auto& v : w) v = unif(rng);
      for (const RateTransform& t : transforms()) {
        CAPTURE(n);
        check_close(kernels::weighted_sums(isa, t, x, w), kernels::weighted_sums(Isa::Scalar, t, x, w));
        check_close(kernels::sample_sums(isa, t, x), kernels::sample_sums(Isa::Scalar, t, x));
      }
    }
  }
}

TEST_CASE("dispatcher picks an available instruction set") {
  const Isa isa = kernels::active_isa();
  CHECK(kernels::isa_available(isa));
  CHECK(kernels::isa_available(Isa::Scalar));
#if defined(__x86_64__)
  CHECK_FALSE(kernels::isa_available(Isa::Neon));
#endif
}
