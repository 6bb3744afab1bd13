#include "ptg/cost_function.hpp"

#include "ptg/errors.hpp"

#include <algorithm>

namespace ptg {

namespace {

ExtValue piece_at(const Piece& p, const Rational& x) {
  if (const auto* a = std::get_if<Affine>(&p)) return ExtValue(a->at(x));
  return std::get<Infinite>(p).value();
}

void sort_unique(std::vector<Rational>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

CostFunction::CostFunction(std::vector<Rational> breakpoints, std::vector<Piece> pieces)
    : bp_(std::move(breakpoints)), pieces_(std::move(pieces)) {
  if (bp_.empty()) throw DomainError("cost function needs at least one breakpoint");
  for (std::size_t i = 1; i < bp_.size(); ++i)
    if (!(bp_[i - 1] < bp_[i])) throw DomainError("breakpoints must be strictly increasing");
  std::size_t want = std::max<std::size_t>(1, bp_.size() - 1);
  if (pieces_.size() != want) throw DomainError("piece count does not match breakpoints");
  bool any_inf = false, any_aff = false;
  for (const auto& p : pieces_) (std::holds_alternative<Infinite>(p) ? any_inf : any_aff) = true;
  if (any_inf && any_aff) throw DomainError("cost function mixes finite and infinite pieces");
  for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) {
    if (piece_at(pieces_[i], bp_[i + 1]) != piece_at(pieces_[i + 1], bp_[i + 1]))
      throw SeamMismatch("cost function is discontinuous at " + bp_[i + 1].str());
  }
  canonicalize();
}

void CostFunction::canonicalize() {
  if (bp_.size() == 1) {
    if (auto* a = std::get_if<Affine>(&pieces_[0])) *a = Affine{0, a->at(bp_[0])};
    return;
  }
  std::vector<Rational> bp{bp_.front()};
  std::vector<Piece> ps{pieces_.front()};
  for (std::size_t i = 1; i < pieces_.size(); ++i) {
    if (pieces_[i] == ps.back()) continue;
    bp.push_back(bp_[i]);
    ps.push_back(pieces_[i]);
  }
  bp.push_back(bp_.back());
  bp_ = std::move(bp);
  pieces_ = std::move(ps);
}

CostFunction CostFunction::affine(const Rational& lo, const Rational& hi, const Affine& f) {
  if (lo == hi) return CostFunction({lo}, {f});
  return CostFunction({lo, hi}, {f});
}

CostFunction CostFunction::constant(const Rational& lo, const Rational& hi, const ExtValue& v) {
  Piece p = v.is_finite() ? Piece(Affine{0, v.value()}) : Piece(Infinite{v.is_plus_inf()});
  if (lo == hi) return CostFunction({lo}, {p});
  return CostFunction({lo, hi}, {p});
}

CostFunction CostFunction::interpolate(const std::vector<std::pair<Rational, Rational>>& points) {
  if (points.empty()) throw DomainError("interpolate needs at least one point");
  std::vector<Rational> bp;
  std::vector<Piece> ps;
  bp.reserve(points.size());
  for (const auto& [x, v] : points) bp.push_back(x);
  if (points.size() == 1) return CostFunction(bp, {Affine{0, points[0].second}});
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const auto& [x0, v0] = points[i];
    const auto& [x1, v1] = points[i + 1];
    if (!(x0 < x1)) throw DomainError("interpolation abscissas must increase");
    Rational s = (v1 - v0) / (x1 - x0);
    ps.emplace_back(Affine{s, v0 - s * x0});
  }
  return CostFunction(std::move(bp), std::move(ps));
}

bool CostFunction::is_finite() const { return std::holds_alternative<Affine>(pieces_.front()); }

std::size_t CostFunction::piece_index(const Rational& x) const {
  if (x < lo() || x > hi()) throw DomainError(x.str() + " outside [" + lo().str() + ", " + hi().str() + "]");
  if (bp_.size() == 1) return 0;
  auto it = std::lower_bound(bp_.begin() + 1, bp_.end(), x);
  return static_cast<std::size_t>(it - bp_.begin()) - 1;
}

ExtValue CostFunction::evaluate(const Rational& x) const { return piece_at(pieces_[piece_index(x)], x); }

Rational CostFunction::right_slope(const Rational& x) const {
  std::size_t i = piece_index(x);
  if (bp_.size() > 1 && i + 1 < pieces_.size() && bp_[i + 1] == x) ++i;
  const auto* a = std::get_if<Affine>(&pieces_[i]);
  if (!a) throw InfinitePiece("slope of an infinite piece");
  return a->slope;
}

Rational CostFunction::left_slope(const Rational& x) const {
  const auto* a = std::get_if<Affine>(&pieces_[piece_index(x)]);
  if (!a) throw InfinitePiece("slope of an infinite piece");
  return a->slope;
}

CostFunction CostFunction::restrict(const Rational& a, const Rational& b) const {
  if (a > b || a < lo() || b > hi()) throw DomainError("restriction outside the domain");
  if (a == b) return CostFunction({a}, {pieces_[piece_index(a)]});
  std::vector<Rational> bp{a};
  std::vector<Piece> ps;
  for (const auto& x : bp_)
    if (a < x && x < b) bp.push_back(x);
  bp.push_back(b);
  for (std::size_t i = 0; i + 1 < bp.size(); ++i)
    ps.push_back(pieces_[piece_index((bp[i] + bp[i + 1]) / 2)]);
  return CostFunction(std::move(bp), std::move(ps));
}

std::vector<Rational> CostFunction::cutpoints() const {
  if (bp_.size() <= 2) return {};
  return {bp_.begin() + 1, bp_.end() - 1};
}

CostFunction concat(const CostFunction& right, const CostFunction& left) {
  if (right.lo() != left.hi())
    throw DomainError("cannot glue domains [" + left.lo().str() + "," + left.hi().str() + "] and [" +
                      right.lo().str() + "," + right.hi().str() + "]");
  if (right.evaluate(right.lo()) != left.evaluate(left.hi()))
    throw SeamMismatch("values differ at " + right.lo().str());
  if (left.is_point()) return right;
  if (right.is_point()) return left;
  std::vector<Rational> bp = left.breakpoints();
  bp.insert(bp.end(), right.breakpoints().begin() + 1, right.breakpoints().end());
  std::vector<Piece> ps = left.pieces();
  ps.insert(ps.end(), right.pieces().begin(), right.pieces().end());
  return CostFunction(std::move(bp), std::move(ps));
}

Rational slope_between(const CostFunction& f, const Rational& v1, const Rational& v2) {
  if (v1 == v2) throw DomainError("slope between identical points");
  ExtValue a = f.evaluate(v1), b = f.evaluate(v2);
  if (!a.is_finite() || !b.is_finite()) throw InfinitePiece("slope across an infinite value");
  return (b.value() - a.value()) / (v2 - v1);
}

std::vector<Rational> pairwise_intersections(std::span<const Affine> lines, const Rational& lo,
                                             const Rational& hi) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      if (lines[i].slope == lines[j].slope) continue;
      Rational x = (lines[j].intercept - lines[i].intercept) / (lines[i].slope - lines[j].slope);
      if (lo <= x && x <= hi) out.push_back(std::move(x));
    }
  sort_unique(out);
  return out;
}

ValueFunction::ValueFunction(CostFunction f) : seg_{std::move(f)} {}

ValueFunction::ValueFunction(std::vector<CostFunction> segments) : seg_(std::move(segments)) {
  if (seg_.empty()) throw DomainError("value function without segments");
  for (std::size_t i = 1; i < seg_.size(); ++i)
    if (seg_[i - 1].hi() != seg_[i].lo()) throw DomainError("value function segments are not contiguous");
  canonicalize();
}

void ValueFunction::canonicalize() {
  // A point segment is only absorbed when it agrees with every neighbour, so a
  // jump stays attached to its explicit point value.
  auto seam_ok = [&](std::size_t i) {
    return seg_[i].evaluate(seg_[i].hi()) == seg_[i + 1].evaluate(seg_[i + 1].lo());
  };
  std::vector<bool> pinned(seg_.size(), false);
  for (std::size_t i = 0; i < seg_.size(); ++i) {
    if (!seg_[i].is_point()) continue;
    bool ok = (i == 0 || seam_ok(i - 1)) && (i + 1 == seg_.size() || seam_ok(i));
    pinned[i] = !ok;
  }
  std::vector<CostFunction> out{seg_.front()};
  bool last_pinned = pinned[0];
  for (std::size_t i = 1; i < seg_.size(); ++i) {
    const auto& s = seg_[i];
    if (!last_pinned && !pinned[i] && seam_ok(i - 1)) {
      out.back() = concat(s, out.back());
    } else {
      out.push_back(s);
      last_pinned = pinned[i];
    }
  }
  seg_ = std::move(out);
}

bool ValueFunction::is_finite() const {
  return std::all_of(seg_.begin(), seg_.end(), [](const auto& s) { return s.is_finite(); });
}

bool ValueFunction::all_infinite() const {
  return std::none_of(seg_.begin(), seg_.end(), [](const auto& s) { return s.is_finite(); });
}

ExtValue ValueFunction::evaluate(const Rational& x) const {
  if (x < lo() || x > hi()) throw DomainError(x.str() + " outside the value domain");
  const CostFunction* hit = nullptr;
  for (const auto& s : seg_) {
    if (s.is_point() && s.lo() == x) return s.evaluate(x);
    if (s.lo() < x && x < s.hi()) return s.evaluate(x);
    if (!hit && (s.lo() == x || s.hi() == x)) hit = &s;
  }
  return hit->evaluate(x);
}

std::vector<Rational> ValueFunction::breakpoints() const {
  std::vector<Rational> out;
  for (const auto& s : seg_) out.insert(out.end(), s.breakpoints().begin(), s.breakpoints().end());
  sort_unique(out);
  return out;
}

}  // namespace ptg
