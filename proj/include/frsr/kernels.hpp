#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "frsr/transform.hpp"

namespace frsr::kernels {

/// First and second raw moments of a transformed sample or node set.
struct Sums {
  double s1 = 0.0;  ///< sum of w * t(x)
  double s2 = 0.0;  ///< sum of w * t(x)^2
};

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);

/// Instruction set picked at first use: the widest one the CPU supports,
/// unless FRSR_ISA=scalar|avx2|neon overrides it.
Isa active_isa();

/// True when `isa` can run on this machine with this build.
bool isa_available(Isa isa);

/// Weighted reduction over quadrature nodes: x and w must have equal length.
Sums weighted_sums(const RateTransform& t, std::span<const double> x, std::span<const double> w);

/// Unweighted reduction over Monte Carlo draws.
Sums sample_sums(const RateTransform& t, std::span<const double> x);

/// Explicit-ISA entry points, used by the equivalence tests and the dispatcher.
Sums weighted_sums(Isa isa, const RateTransform& t, std::span<const double> x,
                   std::span<const double> w);
Sums sample_sums(Isa isa, const RateTransform& t, std::span<const double> x);

namespace scalar {
Sums weighted_sums(const RateTransform& t, const double* x, const double* w, std::size_t n);
Sums sample_sums(const RateTransform& t, const double* x, std::size_t n);
}  // namespace scalar

namespace avx2 {
Sums weighted_sums(const RateTransform& t, const double* x, const double* w, std::size_t n);
Sums sample_sums(const RateTransform& t, const double* x, std::size_t n);
}  // namespace avx2

namespace neon {
Sums weighted_sums(const RateTransform& t, const double* x, const double* w, std::size_t n);
Sums sample_sums(const RateTransform& t, const double* x, std::size_t n);
}  // namespace neon

}  // namespace frsr::kernels
