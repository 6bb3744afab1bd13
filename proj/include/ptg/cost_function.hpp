#pragma once

#include "ptg/ext_value.hpp"
#include "ptg/rational.hpp"

#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace ptg {

struct Affine {
  Rational slope;
  Rational intercept;

  Rational at(const Rational& x) const { return slope * x + intercept; }
  friend bool operator==(const Affine&, const Affine&) = default;
};

struct Infinite {
  bool positive = true;
  ExtValue value() const { return positive ? ExtValue::plus_inf() : ExtValue::minus_inf(); }
  friend bool operator==(const Infinite&, const Infinite&) = default;
};

using Piece = std::variant<Affine, Infinite>;

// Piecewise-affine function on a closed interval [lo, hi], continuous between
// consecutive affine pieces. A function on a point domain has one breakpoint
// and one piece. Collinear neighbours are merged, so equal functions compare equal.
class CostFunction {
 public:
  CostFunction(std::vector<Rational> breakpoints, std::vector<Piece> pieces);

  static CostFunction affine(const Rational& lo, const Rational& hi, const Affine& f);
  static CostFunction constant(const Rational& lo, const Rational& hi, const ExtValue& v);
  // Linear interpolation through points with strictly increasing abscissas.
  static CostFunction interpolate(const std::vector<std::pair<Rational, Rational>>& points);

  const Rational& lo() const { return bp_.front(); }
  const Rational& hi() const { return bp_.back(); }
  const std::vector<Rational>& breakpoints() const { return bp_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  bool is_point() const { return bp_.size() == 1; }
  bool is_finite() const;
  bool is_infinite() const { return !is_finite(); }

  // Throws DomainError outside [lo, hi]. At an interior breakpoint both pieces agree.
  ExtValue evaluate(const Rational& x) const;
  // Slope of the piece containing the open interval right (or left) of x.
  Rational right_slope(const Rational& x) const;
  Rational left_slope(const Rational& x) const;

  // Restriction to [a, b] within the domain.
  CostFunction restrict(const Rational& a, const Rational& b) const;
  // Breakpoints where the derivative is undefined, excluding domain ends.
  std::vector<Rational> cutpoints() const;

  friend bool operator==(const CostFunction&, const CostFunction&) = default;

 private:
  void canonicalize();
  std::size_t piece_index(const Rational& x) const;

  std::vector<Rational> bp_;
  std::vector<Piece> pieces_;
};

// f |> f' : f on [a, b] glued to the right of f' on [c, a].
CostFunction concat(const CostFunction& right, const CostFunction& left);

// (f(v2) - f(v1)) / (v2 - v1). Throws DomainError when v1 == v2, InfinitePiece when f is infinite there.
Rational slope_between(const CostFunction& f, const Rational& v1, const Rational& v2);

// All abscissas in [lo, hi] where two non-parallel lines of the family meet. Sorted, unique.
std::vector<Rational> pairwise_intersections(std::span<const Affine> lines, const Rational& lo,
                                             const Rational& hi);

// Piecewise function over consecutive closed domains; value functions of games
// with several regions may jump at region borders. Adjacent segments that agree
// at their seam are merged.
class ValueFunction {
 public:
  ValueFunction() = default;
  explicit ValueFunction(CostFunction f);
  explicit ValueFunction(std::vector<CostFunction> segments);

  const std::vector<CostFunction>& segments() const { return seg_; }
  const Rational& lo() const { return seg_.front().lo(); }
  const Rational& hi() const { return seg_.back().hi(); }
  bool is_finite() const;
  bool all_infinite() const;

  // Point segments win; otherwise the segment whose interior holds x, else the left one.
  ExtValue evaluate(const Rational& x) const;
  // Sorted, unique breakpoints of every segment.
  std::vector<Rational> breakpoints() const;

  friend bool operator==(const ValueFunction&, const ValueFunction&) = default;

 private:
  void canonicalize();
  std::vector<CostFunction> seg_;
};

}  // namespace ptg
