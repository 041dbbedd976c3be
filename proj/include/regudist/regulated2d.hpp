#pragma once

#include "regudist/angular.hpp"
#include "regudist/arrangement.hpp"
#include "regudist/bipoly.hpp"
#include "regudist/geometry.hpp"
#include "regudist/regulated1d.hpp"

#include <cmath>
#include <span>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

namespace regudist {

/// Regulated function on an open rectangle, defined by an ordered list of
/// (region set, polynomial) clauses with first-match semantics and a fallback
/// polynomial for points matched by no clause.
template <Scalar T>
class PiecewiseFn2D {
 public:
  struct Clause {
    RegionSet<T> region;
    BiPoly<T> poly;
  };

  explicit PiecewiseFn2D(Rect<T> domain, std::vector<Clause> clauses = {}, BiPoly<T> fallback = {})
      : domain_(std::move(domain)), clauses_(std::move(clauses)), fallback_(std::move(fallback)) {
    if (!(domain_.x_lo < domain_.x_hi) || !(domain_.y_lo < domain_.y_hi))
      throw std::invalid_argument("PiecewiseFn2D: empty domain");
  }

  static PiecewiseFn2D constant(const Rect<T>& domain, const T& c) {
    return PiecewiseFn2D(domain, {}, BiPoly<T>::constant(c));
  }
  static PiecewiseFn2D polynomial(const Rect<T>& domain, BiPoly<T> p) {
    return PiecewiseFn2D(domain, {}, std::move(p));
  }
  static PiecewiseFn2D indicator(const Rect<T>& domain, RegionSet<T> set) {
    return PiecewiseFn2D(domain, {Clause{std::move(set), BiPoly<T>::constant(T(1))}}, {});
  }
  /// Lifts u(x) (axis 1) or u(y) (axis 2) to the rectangle as vertical or
  /// horizontal strips.
  static PiecewiseFn2D from_axis(const PiecewiseFn1D<T>& u, int axis, const Rect<T>& domain) {
    std::vector<Clause> clauses;
    const T zero(0), one(1);
    for (std::size_t i = 0; i < u.size(); ++i) {
      Region<T> strip;
      const T& a = u.piece_lo(i);
      const T& b = u.piece_hi(i);
      // coordinate > a and coordinate < b
      if (axis == 1) {
        strip.halfplanes.emplace_back(-one, zero, -a);
        strip.halfplanes.emplace_back(one, zero, b);
      } else {
        strip.halfplanes.emplace_back(zero, -one, -a);
        strip.halfplanes.emplace_back(zero, one, b);
      }
      clauses.push_back({RegionSet<T>::of(std::move(strip)), BiPoly<T>::from_univariate(u.pieces()[i], axis)});
    }
    return PiecewiseFn2D(domain, std::move(clauses), {});
  }

  const Rect<T>& domain() const { return domain_; }
  const std::vector<Clause>& clauses() const { return clauses_; }
  const BiPoly<T>& fallback() const { return fallback_; }

  const BiPoly<T>& active_poly(const Point<T>& p) const {
    for (const auto& c : clauses_)
      if (c.region.contains(p)) return c.poly;
    return fallback_;
  }
  /// Polynomial governing p + t d for small t > 0.
  const BiPoly<T>& active_poly_limit(const Point<T>& p, const Point<T>& d) const {
    for (const auto& c : clauses_)
      if (c.region.contains_limit(p, d)) return c.poly;
    return fallback_;
  }

  /// Raw representative value (first matching clause).
  T eval(const Point<T>& p) const {
    if (!domain_.contains_open(p)) throw std::out_of_range("PiecewiseFn2D::eval: point outside the domain");
    return active_poly(p)(p.x, p.y);
  }

  /// lim_{t->0+} g(p + t d).
  T eval_limit(const Point<T>& p, const Point<T>& d) const {
    return active_poly_limit(p, d)(p.x, p.y);
  }

  std::vector<Line<T>> boundary_lines() const {
    std::vector<Line<T>> out;
    for (const auto& c : clauses_) {
      auto l = c.region.boundary_lines();
      out.insert(out.end(), l.begin(), l.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  /// Surrounding value s -> lim_{t->0+} g(p + t (cos s, sin s)).
  ///
  /// Boundary lines through p cut the circle into arcs on which every
  /// half-plane's membership is constant; each arc is classified exactly with a
  /// rational direction strictly inside it. A direction along a boundary line
  /// takes the value of the arc that starts there (the counterclockwise one).
  AngularFn surrounding_value(const Point<T>& p) const {
    if (!domain_.contains_open(p)) throw std::out_of_range("surrounding_value: point outside the domain");
    std::vector<Point<T>> dirs;
    for (const auto& l : boundary_lines()) {
      if (l.a * p.x + l.b * p.y != l.c) continue;
      dirs.push_back({l.b, -l.a});
      dirs.push_back({-l.b, l.a});
    }
    if (dirs.empty()) return AngularFn(to_double(eval(p)));
    std::sort(dirs.begin(), dirs.end(), angle_less);
    dirs.erase(std::unique(dirs.begin(), dirs.end(),
                           [](const auto& u, const auto& v) { return !angle_less(u, v) && !angle_less(v, u); }),
               dirs.end());
    // dirs is sorted by angle from 0, so the arc starts increase.
    std::vector<double> starts, values;
    const std::size_t n = dirs.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point<T>& d0 = dirs[i];
      const Point<T>& d1 = dirs[(i + 1) % n];
      const T cr = cross(d0, d1);
      Point<T> mid;
      if (cr > T(0)) {
        mid = {d0.x + d1.x, d0.y + d1.y};
      } else if (cr < T(0)) {
        mid = {-(d0.x + d1.x), -(d0.y + d1.y)};
      } else {
        mid = {-d0.y, d0.x};
      }
      const double a0 = angle_of(d0);
      if (!starts.empty() && !(starts.back() < a0)) continue;
      starts.push_back(a0);
      values.push_back(to_double(eval_limit(p, mid)));
    }
    if (starts.front() != 0.0) {
      starts.insert(starts.begin(), 0.0);
      values.insert(values.begin(), values.back());
    }
    return AngularFn(std::move(starts), std::move(values));
  }

  /// One-variable regulated function obtained by approaching the line
  /// x_axis = at from the given side: axis 2 gives x1 -> g(x1, at±), axis 1
  /// gives x2 -> g(at±, x2).
  PiecewiseFn1D<T> slice_limits(int axis, const T& at, int side) const {
    if (axis == 1) return transpose().slice_limits(2, at, side);
    if (axis != 2) throw std::invalid_argument("slice_limits: axis must be 1 or 2");
    if (side != 1 && side != -1) throw std::invalid_argument("slice_limits: side must be +1 or -1");
    if (!(domain_.y_lo < at && at < domain_.y_hi))
      throw std::out_of_range("slice_limits: line must be interior to the domain");
    std::vector<T> xs;
    for (const auto& l : boundary_lines()) {
      if (l.a == T(0)) continue;
      const T x = (l.c - l.b * at) / l.a;
      if (domain_.x_lo < x && x < domain_.x_hi) xs.push_back(x);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<Polynomial<T>> pieces;
    const Point<T> dir{T(0), T(side)};
    for (std::size_t i = 0; i <= xs.size(); ++i) {
      const T a = i == 0 ? domain_.x_lo : xs[i - 1];
      const T b = i == xs.size() ? domain_.x_hi : xs[i];
      const Point<T> mid{(a + b) / T(2), at};
      pieces.push_back(active_poly_limit(mid, dir).restrict_y(at));
    }
    return PiecewiseFn1D<T>(domain_.x_lo, domain_.x_hi, std::move(xs), std::move(pieces));
  }

  PiecewiseFn2D transpose() const {
    std::vector<Clause> clauses;
    for (const auto& c : clauses_) {
      RegionSet<T> set;
      for (const auto& t : c.region.terms) {
        Region<T> r;
        for (const auto& h : t.region.halfplanes) r.halfplanes.emplace_back(h.b, h.a, h.c, h.sense);
        set.terms.push_back({std::move(r), t.positive});
      }
      clauses.push_back({std::move(set), c.poly.transpose()});
    }
    return PiecewiseFn2D(Rect<T>{domain_.y_lo, domain_.y_hi, domain_.x_lo, domain_.x_hi}, std::move(clauses),
                         fallback_.transpose());
  }

  /// Pointwise combination. Clause pairs (i, j) in lexicographic order, with
  /// each fallback treated as a whole-plane clause, reproduce first-match
  /// semantics of both operands; pairs with empty interior are dropped.
  template <class Op>
  static PiecewiseFn2D combine(const PiecewiseFn2D& g, const PiecewiseFn2D& h, Op op) {
    if (!(g.domain_ == h.domain_)) throw std::domain_error("PiecewiseFn2D: domain mismatch");
    auto extended = [](const PiecewiseFn2D& f) {
      std::vector<Clause> cs = f.clauses_;
      cs.push_back({RegionSet<T>::everything(), f.fallback_});
      return cs;
    };
    const auto gc = extended(g);
    const auto hc = extended(h);
    std::vector<Clause> out;
    for (const auto& cg : gc) {
      const RegionSet<T> gset = prune(cg.region, g.domain_);
      if (!has_positive_term(gset)) continue;
      for (const auto& ch : hc) {
        RegionSet<T> set = prune(gset.intersect(ch.region), g.domain_);
        if (!has_positive_term(set)) continue;
        out.push_back({std::move(set), op(cg.poly, ch.poly)});
      }
    }
    return PiecewiseFn2D(g.domain_, std::move(out), op(g.fallback_, h.fallback_));
  }

  friend PiecewiseFn2D operator*(const PiecewiseFn2D& g, const PiecewiseFn2D& h) {
    return combine(g, h, [](const BiPoly<T>& a, const BiPoly<T>& b) { return a * b; });
  }
  friend PiecewiseFn2D operator+(const PiecewiseFn2D& g, const PiecewiseFn2D& h) {
    return combine(g, h, [](const BiPoly<T>& a, const BiPoly<T>& b) { return a + b; });
  }
  friend PiecewiseFn2D operator*(PiecewiseFn2D g, const T& s) {
    for (auto& c : g.clauses_) c.poly *= s;
    g.fallback_ *= s;
    return g;
  }
  friend PiecewiseFn2D operator*(const T& s, PiecewiseFn2D g) { return std::move(g) * s; }
  friend PiecewiseFn2D operator+(const PiecewiseFn2D& g, const T& s) {
    PiecewiseFn2D out = g;
    for (auto& c : out.clauses_) c.poly += BiPoly<T>::constant(s);
    out.fallback_ += BiPoly<T>::constant(s);
    return out;
  }

  template <Scalar U>
  PiecewiseFn2D<U> cast() const {
    auto cast_set = [](const RegionSet<T>& set) {
      RegionSet<U> out;
      for (const auto& t : set.terms) {
        Region<U> r;
        for (const auto& h : t.region.halfplanes)
          r.halfplanes.emplace_back(scalar_cast<U>(h.a), scalar_cast<U>(h.b), scalar_cast<U>(h.c), h.sense);
        out.terms.push_back({std::move(r), t.positive});
      }
      return out;
    };
    std::vector<typename PiecewiseFn2D<U>::Clause> clauses;
    for (const auto& c : clauses_) clauses.push_back({cast_set(c.region), c.poly.template cast<U>()});
    return PiecewiseFn2D<U>(Rect<U>{scalar_cast<U>(domain_.x_lo), scalar_cast<U>(domain_.x_hi),
                                    scalar_cast<U>(domain_.y_lo), scalar_cast<U>(domain_.y_hi)},
                            std::move(clauses), fallback_.template cast<U>());
  }

  static double angle_of(const Point<T>& d) { return wrap_angle(std::atan2(to_double(d.y), to_double(d.x))); }

 private:
  static T cross(const Point<T>& u, const Point<T>& v) { return u.x * v.y - u.y * v.x; }
  static int half(const Point<T>& d) { return (d.y > T(0) || (d.y == T(0) && d.x > T(0))) ? 0 : 1; }
  /// Exact counterclockwise order of directions starting at angle 0.
  static bool angle_less(const Point<T>& u, const Point<T>& v) {
    const int hu = half(u), hv = half(v);
    if (hu != hv) return hu < hv;
    return cross(u, v) > T(0);
  }

  Rect<T> domain_;
  std::vector<Clause> clauses_;
  BiPoly<T> fallback_;
};

// --- exact integration over the slab arrangement ----------------------------

template <Scalar T>
using FactorList = std::span<const PiecewiseFn2D<T>* const>;

namespace detail {

template <Scalar T>
std::vector<Line<T>> collect_lines(FactorList<T> factors) {
  std::vector<Line<T>> lines;
  for (const auto* f : factors) {
    auto l = f->boundary_lines();
    lines.insert(lines.end(), l.begin(), l.end());
  }
  return lines;
}

template <Scalar T>
BiPoly<T> product_at(FactorList<T> factors, const Point<T>& rep) {
  BiPoly<T> p = BiPoly<T>::constant(T(1));
  for (const auto* f : factors) {
    p = p * f->active_poly(rep);
    if (p.is_zero()) break;
  }
  return p;
}

}  // namespace detail

/// Exact integral of the product of `factors` over the closed box.
template <Scalar T>
T integrate_box(FactorList<T> factors, const Rect<T>& box) {
  const Arrangement<T> arr(detail::collect_lines(factors), box);
  T total(0);
  for (const auto& slab : arr.slabs())
    for (const auto& cell : slab.cells) {
      const BiPoly<T> p = detail::product_at(factors, cell.rep);
      if (p.is_zero()) continue;
      total += p.integrate_y_between(cell.lower.slope, cell.lower.intercept, cell.upper.slope,
                                     cell.upper.intercept)
                   .integrate(slab.x_lo, slab.x_hi);
    }
  return total;
}

template <Scalar T>
T integrate_box(const PiecewiseFn2D<T>& f, const Rect<T>& box) {
  const PiecewiseFn2D<T>* fs[] = {&f};
  return integrate_box<T>(FactorList<T>(fs), box);
}

/// x -> ∫_{y_lo}^{y_hi} prod(factors)(x, y) dy as a regulated function of x
/// on the open interval (box.x_lo, box.x_hi).
template <Scalar T>
PiecewiseFn1D<T> integrate_out_y(FactorList<T> factors, const Rect<T>& box) {
  const Arrangement<T> arr(detail::collect_lines(factors), box);
  std::vector<T> breaks;
  std::vector<Polynomial<T>> pieces;
  for (const auto& slab : arr.slabs()) {
    Polynomial<T> acc;
    for (const auto& cell : slab.cells) {
      const BiPoly<T> p = detail::product_at(factors, cell.rep);
      if (p.is_zero()) continue;
      acc += p.integrate_y_between(cell.lower.slope, cell.lower.intercept, cell.upper.slope,
                                   cell.upper.intercept);
    }
    if (!pieces.empty()) breaks.push_back(slab.x_lo);
    pieces.push_back(std::move(acc));
  }
  return PiecewiseFn1D<T>(box.x_lo, box.x_hi, std::move(breaks), std::move(pieces));
}

/// Whether the closure of supp(f) lies inside the open domain.
template <Scalar T>
bool has_compact_support(const PiecewiseFn2D<T>& f) {
  const Arrangement<T> arr(f.boundary_lines(), f.domain());
  for (const auto& slab : arr.slabs())
    for (const auto& cell : slab.cells)
      if (arr.on_boundary(slab, cell) && !f.active_poly(cell.rep).is_zero()) return false;
  return true;
}

namespace detail {

/// Candidate extremum points of p on a convex polygon: vertices, critical
/// points of p along each edge, and (total degree 2) the interior stationary
/// point. Higher-degree interiors fall back to a 16x16 sample of the cell.
template <Scalar T>
std::vector<Point<T>> extremum_candidates(const BiPoly<T>& p, const Polygon<T>& poly) {
  std::vector<Point<T>> out(poly.begin(), poly.end());
  const int deg = p.total_degree();
  if (deg <= 1) return out;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % poly.size()];
    const auto along = p.restrict_ray(a.x, a.y, b.x - a.x, b.y - a.y);
    for (const T& t : real_roots_in(along.derivative(), T(0), T(1)))
      out.push_back({a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t});
  }
  if (deg == 2) {
    // Solve grad p = 0 (linear).
    const auto px = p.partial_x(), py = p.partial_y();
    auto coef = [](const BiPoly<T>& q, int i, int j) {
      auto it = q.terms().find({i, j});
      return it == q.terms().end() ? T(0) : it->second;
    };
    const T a11 = coef(px, 1, 0), a12 = coef(px, 0, 1), b1 = -coef(px, 0, 0);
    const T a21 = coef(py, 1, 0), a22 = coef(py, 0, 1), b2 = -coef(py, 0, 0);
    const T det = a11 * a22 - a12 * a21;
    if (det != T(0)) {
      const Point<T> c{(b1 * a22 - a12 * b2) / det, (a11 * b2 - b1 * a21) / det};
      bool inside = true;
      for (std::size_t i = 0; i < poly.size() && inside; ++i) {
        const auto& a = poly[i];
        const auto& b = poly[(i + 1) % poly.size()];
        inside = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x) >= T(0);
      }
      if (inside) out.push_back(c);
    }
  } else {
    T x0 = poly[0].x, x1 = poly[0].x, y0 = poly[0].y, y1 = poly[0].y;
    for (const auto& v : poly) {
      x0 = std::min(x0, v.x), x1 = std::max(x1, v.x);
      y0 = std::min(y0, v.y), y1 = std::max(y1, v.y);
    }
    for (int i = 0; i < 16; ++i)
      for (int j = 0; j < 16; ++j) {
        const Point<T> c{x0 + (x1 - x0) * T(2 * i + 1) / T(32), y0 + (y1 - y0) * T(2 * j + 1) / T(32)};
        bool inside = true;
        for (std::size_t k = 0; k < poly.size() && inside; ++k) {
          const auto& a = poly[k];
          const auto& b = poly[(k + 1) % poly.size()];
          inside = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x) >= T(0);
        }
        if (inside) out.push_back(c);
      }
  }
  return out;
}

}  // namespace detail

/// Minimum of f over the closed box (cell closures, so one-sided limits are
/// included). Exact for total degree <= 2.
template <Scalar T>
T min_over(const PiecewiseFn2D<T>& f, const Rect<T>& box) {
  const Arrangement<T> arr(f.boundary_lines(), box);
  bool first = true;
  T best(0);
  for (const auto& slab : arr.slabs())
    for (const auto& cell : slab.cells) {
      const auto& p = f.active_poly(cell.rep);
      for (const auto& c : detail::extremum_candidates(p, Arrangement<T>::cell_polygon(slab, cell))) {
        const T v = p(c.x, c.y);
        if (first || v < best) best = v;
        first = false;
      }
    }
  return best;
}

/// f >= 0 on the whole domain.
template <Scalar T>
bool nonneg(const PiecewiseFn2D<T>& f) {
  const Arrangement<T> arr(f.boundary_lines(), f.domain());
  for (const auto& slab : arr.slabs())
    for (const auto& cell : slab.cells) {
      const auto& p = f.active_poly(cell.rep);
      const auto poly = Arrangement<T>::cell_polygon(slab, cell);
      for (std::size_t i = 0; i < poly.size(); ++i) {
        const auto& a = poly[i];
        const auto& b = poly[(i + 1) % poly.size()];
        if (!nonneg_on(p.restrict_ray(a.x, a.y, b.x - a.x, b.y - a.y), T(0), T(1))) return false;
      }
      for (const auto& c : detail::extremum_candidates(p, poly))
        if (scalar_sign(p(c.x, c.y)) < 0) return false;
    }
  return true;
}

}  // namespace regudist
