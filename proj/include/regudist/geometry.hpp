#pragma once

#include "regudist/scalar.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

namespace regudist {

template <Scalar T>
struct Point {
  T x, y;
  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  friend auto operator<=>(const Point& a, const Point& b) {
    if (a.x < b.x) return std::weak_ordering::less;
    if (b.x < a.x) return std::weak_ordering::greater;
    if (a.y < b.y) return std::weak_ordering::less;
    if (b.y < a.y) return std::weak_ordering::greater;
    return std::weak_ordering::equivalent;
  }
};

/// Closed axis-aligned box [x_lo, x_hi] x [y_lo, y_hi]; used as the closure of
/// an open rectangular domain.
template <Scalar T>
struct Rect {
  T x_lo, x_hi, y_lo, y_hi;

  bool contains_open(const Point<T>& p) const {
    return x_lo < p.x && p.x < x_hi && y_lo < p.y && p.y < y_hi;
  }
  friend bool operator==(const Rect& a, const Rect& b) {
    return a.x_lo == b.x_lo && a.x_hi == b.x_hi && a.y_lo == b.y_lo && a.y_hi == b.y_hi;
  }
};

/// Line a x + b y = c.
template <Scalar T>
struct Line {
  T a, b, c;

  /// Scaled so the first nonzero of (a, b) is 1; equal lines compare equal.
  Line normalized() const {
    const T lead = a != T(0) ? a : b;
    return {a / lead, b / lead, c / lead};
  }
  friend bool operator==(const Line& l, const Line& r) { return l.a == r.a && l.b == r.b && l.c == r.c; }
  friend bool operator<(const Line& l, const Line& r) {
    if (l.a != r.a) return l.a < r.a;
    if (l.b != r.b) return l.b < r.b;
    return l.c < r.c;
  }
};

enum class Sense { kLess, kLessEqual };

/// Half-plane a x + b y < c (or <= c).
template <Scalar T>
struct HalfPlane {
  T a, b, c;
  Sense sense = Sense::kLess;

  HalfPlane(T a_, T b_, T c_, Sense s = Sense::kLess)
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), sense(s) {
    if (a == T(0) && b == T(0)) throw std::invalid_argument("HalfPlane: zero normal");
  }

  T slack(const Point<T>& p) const { return a * p.x + b * p.y - c; }

  bool contains(const Point<T>& p) const {
    const int s = scalar_sign(slack(p));
    return s < 0 || (s == 0 && sense == Sense::kLessEqual);
  }

  /// Membership of p + t d for all sufficiently small t > 0.
  bool contains_limit(const Point<T>& p, const Point<T>& d) const {
    const int s = scalar_sign(slack(p));
    if (s != 0) return s < 0;
    const int ds = scalar_sign(a * d.x + b * d.y);
    if (ds != 0) return ds < 0;
    return sense == Sense::kLessEqual;
  }

  Line<T> boundary() const { return Line<T>{a, b, c}.normalized(); }
  HalfPlane complement() const {
    return HalfPlane(-a, -b, -c, sense == Sense::kLess ? Sense::kLessEqual : Sense::kLess);
  }
};

/// Convex region: intersection of finitely many half-planes (none = whole plane).
template <Scalar T>
struct Region {
  std::vector<HalfPlane<T>> halfplanes;

  bool contains(const Point<T>& p) const {
    return std::all_of(halfplanes.begin(), halfplanes.end(), [&](const auto& h) { return h.contains(p); });
  }
  bool contains_limit(const Point<T>& p, const Point<T>& d) const {
    return std::all_of(halfplanes.begin(), halfplanes.end(),
                       [&](const auto& h) { return h.contains_limit(p, d); });
  }
  Region intersect(const Region& o) const {
    Region r = *this;
    r.halfplanes.insert(r.halfplanes.end(), o.halfplanes.begin(), o.halfplanes.end());
    return r;
  }
};

/// Union of the positive regions minus the union of the negative regions.
template <Scalar T>
struct RegionSet {
  struct Term {
    Region<T> region;
    bool positive = true;
  };
  std::vector<Term> terms;

  static RegionSet everything() { return RegionSet{{Term{Region<T>{}, true}}}; }
  static RegionSet of(Region<T> r) { return RegionSet{{Term{std::move(r), true}}}; }

  bool contains(const Point<T>& p) const {
    return membership([&](const Region<T>& r) { return r.contains(p); });
  }
  bool contains_limit(const Point<T>& p, const Point<T>& d) const {
    return membership([&](const Region<T>& r) { return r.contains_limit(p, d); });
  }

  /// (∪A − ∪N) ∩ (∪B − ∪M) = ∪(A_i ∩ B_j) − (∪N ∪ ∪M).
  RegionSet intersect(const RegionSet& o) const {
    RegionSet out;
    for (const auto& ta : terms)
      for (const auto& tb : o.terms)
        if (ta.positive && tb.positive) out.terms.push_back({ta.region.intersect(tb.region), true});
    for (const auto* src : {&terms, &o.terms})
      for (const auto& t : *src)
        if (!t.positive) out.terms.push_back(t);
    return out;
  }

  std::vector<Line<T>> boundary_lines() const {
    std::vector<Line<T>> out;
    for (const auto& t : terms)
      for (const auto& h : t.region.halfplanes) out.push_back(h.boundary());
    return out;
  }

 private:
  template <class Pred>
  bool membership(Pred in) const {
    bool any_pos = false;
    for (const auto& t : terms) {
      if (!t.positive) continue;
      if (in(t.region)) {
        any_pos = true;
        break;
      }
    }
    if (!any_pos) return false;
    for (const auto& t : terms)
      if (!t.positive && in(t.region)) return false;
    return true;
  }
};

// --- polygon utilities -----------------------------------------------------

template <Scalar T>
using Polygon = std::vector<Point<T>>;

template <Scalar T>
Polygon<T> rect_polygon(const Rect<T>& r) {
  return {{r.x_lo, r.y_lo}, {r.x_hi, r.y_lo}, {r.x_hi, r.y_hi}, {r.x_lo, r.y_hi}};
}

/// Clips a convex polygon to the closed half-plane a x + b y <= c.
template <Scalar T>
Polygon<T> clip(const Polygon<T>& poly, const HalfPlane<T>& h) {
  Polygon<T> out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point<T>& cur = poly[i];
    const Point<T>& nxt = poly[(i + 1) % n];
    const T sc = h.slack(cur), sn = h.slack(nxt);
    const bool in_c = !(sc > T(0)), in_n = !(sn > T(0));
    if (in_c) out.push_back(cur);
    if (in_c != in_n) {
      const T t = sc / (sc - sn);
      out.push_back({cur.x + (nxt.x - cur.x) * t, cur.y + (nxt.y - cur.y) * t});
    }
  }
  return out;
}

template <Scalar T>
T polygon_area(const Polygon<T>& poly) {
  T twice(0);
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % n];
    twice += p.x * q.y - q.x * p.y;
  }
  return twice / T(2);
}

/// Closure of region ∩ box as a convex polygon (possibly degenerate).
template <Scalar T>
Polygon<T> clip_to_box(const Region<T>& region, const Rect<T>& box) {
  Polygon<T> poly = rect_polygon(box);
  for (const auto& h : region.halfplanes) {
    poly = clip(poly, h);
    if (poly.empty()) break;
  }
  return poly;
}

/// Whether region ∩ interior(box) has positive area.
template <Scalar T>
bool has_interior_in(const Region<T>& region, const Rect<T>& box) {
  const auto poly = clip_to_box(region, box);
  return poly.size() >= 3 && scalar_sign(polygon_area(poly)) > 0;
}

/// Drops terms with empty interior inside `box`; a set with no positive term
/// left is empty.
template <Scalar T>
RegionSet<T> prune(const RegionSet<T>& set, const Rect<T>& box) {
  RegionSet<T> out;
  for (const auto& t : set.terms)
    if (has_interior_in(t.region, box)) out.terms.push_back(t);
  return out;
}

template <Scalar T>
bool has_positive_term(const RegionSet<T>& set) {
  return std::any_of(set.terms.begin(), set.terms.end(), [](const auto& t) { return t.positive; });
}

}  // namespace regudist
