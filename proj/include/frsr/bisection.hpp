#pragma once

#include <cmath>
#include <utility>

namespace frsr {

struct BisectionResult {
  double root = 0.0;
  double residual = 0.0;  ///< f(root)
  double lo = 0.0;        ///< final bracket
  double hi = 0.0;
  int iterations = 0;
  bool converged = false;  ///< bracket shrank below xtol (or hit an exact zero)
};

/// Bisection for a root of a continuous f on [lo, hi] given f(lo) <= 0 <= f(hi).
/// Stops once hi - lo <= xtol, so it takes at most ceil(log2((hi - lo) / xtol))
/// halvings. The returned root is the midpoint of the final bracket, or the
/// regula falsi point of that bracket when it has the smaller residual (exact
/// for functions that are affine across the bracket).
template <class F>
BisectionResult bisect_increasing(F&& f, double lo, double hi, double xtol, int max_iter) {
  BisectionResult out;
  double flo = std::nan(""), fhi = std::nan("");
  while (out.iterations < max_iter) {
    if (hi - lo <= xtol) {
      out.converged = true;
      break;
    }
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) {  // bracket is one ulp wide
      out.converged = true;
      break;
    }
    const double fm = f(mid);
    ++out.iterations;
    if (fm == 0.0) {
      lo = hi = mid;
      out.converged = true;
      break;
    }
    if (fm < 0.0) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  if (!out.converged && hi - lo <= xtol) out.converged = true;
  out.lo = lo;
  out.hi = hi;
  out.root = 0.5 * (lo + hi);
  out.residual = f(out.root);
  if (out.residual != 0.0 && hi > lo) {
    if (std::isnan(flo)) flo = f(lo);
    if (std::isnan(fhi)) fhi = f(hi);
    if (flo < 0.0 && fhi > 0.0) {
      const double s = lo - flo * (hi - lo) / (fhi - flo);
      if (s > lo && s < hi) {
        const double fs = f(s);
        if (std::abs(fs) < std::abs(out.residual)) {
          out.root = s;
          out.residual = fs;
        }
      }
    }
  }
  return out;
}

}  // namespace frsr
