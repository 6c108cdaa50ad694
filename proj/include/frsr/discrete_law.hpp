#pragma once

#include <functional>
#include <span>
#include <vector>

namespace frsr {

struct Atom {
  double value = 0.0;
  double prob = 0.0;
  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Finite-support probability law on the real line.
///
/// Atoms are kept sorted ascending by value with strictly positive
/// probabilities summing to one (within 1e-12). Values closer than
/// `merge_tol` are merged into one atom. All sums run in atom order so
/// results are reproducible bit for bit.
class DiscreteLaw {
 public:
  static constexpr double kProbTol = 1e-12;

  DiscreteLaw() = default;
  explicit DiscreteLaw(std::vector<Atom> atoms, double merge_tol = 0.0);

  static DiscreteLaw point(double value) { return DiscreteLaw({{value, 1.0}}); }

  std::span<const Atom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  double min() const { return atoms_.front().value; }
  double max() const { return atoms_.back().value; }

  double expect(const std::function<double(double)>& f) const;
  double mean() const;
  double variance() const;

  /// Law of x + z for independent x ~ *this and z ~ other.
  DiscreteLaw convolve(const DiscreteLaw& other) const;

  /// Law of f(x); equal images (within merge_tol) merge.
  DiscreteLaw map(const std::function<double(double)>& f, double merge_tol = 1e-14) const;

  friend bool operator==(const DiscreteLaw&, const DiscreteLaw&) = default;

 private:
  std::vector<Atom> atoms_;
};

}  // namespace frsr
