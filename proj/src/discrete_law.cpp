#include "frsr/discrete_law.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "frsr/error.hpp"

namespace frsr {

DiscreteLaw::DiscreteLaw(std::vector<Atom> atoms, double merge_tol) {
  if (atoms.empty()) throw ValidationError("discrete law: no atoms");
  double total = 0.0;
  for (const Atom& a : atoms) {
    if (!std::isfinite(a.value)) throw ValidationError("discrete law: non-finite atom value");
    if (!(a.prob > 0.0) || !std::isfinite(a.prob)) {
      throw ValidationError("discrete law: atom probability must be > 0, got " +
                            std::to_string(a.prob));
    }
    total += a.prob;
  }
  if (std::abs(total - 1.0) > kProbTol) {
    throw ValidationError("discrete law: probabilities sum to " + std::to_string(total) +
                          ", expected 1");
  }
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const Atom& a, const Atom& b) { return a.value < b.value; });
  atoms_.reserve(atoms.size());
  for (const Atom& a : atoms) {
    if (!atoms_.empty() && a.value - atoms_.back().value <= merge_tol) {
      atoms_.back().prob += a.prob;
    } else {
      atoms_.push_back(a);
    }
  }
}

double DiscreteLaw::expect(const std::function<double(double)>& f) const {
  double acc = 0.0;
  for (const Atom& a : atoms_) acc += a.prob * f(a.value);
  return acc;
}

double DiscreteLaw::mean() const {
  double acc = 0.0;
  for (const Atom& a : atoms_) acc += a.prob * a.value;
  return acc;
}

double DiscreteLaw::variance() const {
  const double m = mean();
  double acc = 0.0;
  for (const Atom& a : atoms_) {
    const double d = a.value - m;
    acc += a.prob * d * d;
  }
  return acc;
}

DiscreteLaw DiscreteLaw::convolve(const DiscreteLaw& other) const {
  std::vector<Atom> out;
  out.reserve(atoms_.size() * other.atoms_.size());
  for (const Atom& x : atoms_) {
    for (const Atom& z : other.atoms_) out.push_back({x.value + z.value, x.prob * z.prob});
  }
  // equal sums from different pairs land within a few ulps of each other
  return DiscreteLaw(std::move(out), 1e-14);
}

DiscreteLaw DiscreteLaw::map(const std::function<double(double)>& f, double merge_tol) const {
  std::vector<Atom> out;
  out.reserve(atoms_.size());
  for (const Atom& a : atoms_) out.push_back({f(a.value), a.prob});
  return DiscreteLaw(std::move(out), merge_tol);
}

}  // namespace frsr
