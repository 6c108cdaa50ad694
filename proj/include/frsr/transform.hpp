#pragma once

#include <algorithm>
#include <optional>

namespace frsr {

/// Piecewise-linear payoff rate applied to a realized return r.
///
/// Every contract payoff in the model is one of three shapes:
///   Linear: scale * r                   (SR shares)
///   Cap:    min(scale * r, level)       (FR financier, boosted or not)
///   Call:   max(scale * r - level, 0)   (FR investor, boosted or not)
struct RateTransform {
  enum class Kind { Linear, Cap, Call };

  Kind kind = Kind::Linear;
  double scale = 1.0;
  double level = 0.0;

  static constexpr RateTransform identity() { return {Kind::Linear, 1.0, 0.0}; }
  static constexpr RateTransform linear(double s) { return {Kind::Linear, s, 0.0}; }
  static constexpr RateTransform cap(double d, double m = 1.0) { return {Kind::Cap, m, d}; }
  static constexpr RateTransform call(double d, double m = 1.0) { return {Kind::Call, m, d}; }

  constexpr double operator()(double r) const {
    const double x = scale * r;
    switch (kind) {
      case Kind::Cap:
        return std::min(x, level);
      case Kind::Call:
        return std::max(x - level, 0.0);
      case Kind::Linear:
        break;
    }
    return x;
  }

  /// Return value at which the transform is non-smooth, if any.
  constexpr std::optional<double> kink() const {
    if (kind == Kind::Linear || scale == 0.0) return std::nullopt;
    return level / scale;
  }

  friend constexpr bool operator==(const RateTransform&, const RateTransform&) = default;
};

}  // namespace frsr
