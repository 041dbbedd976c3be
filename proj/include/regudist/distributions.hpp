#pragma once

#include "regudist/angular.hpp"
#include "regudist/regulated1d.hpp"
#include "regudist/regulated2d.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace regudist {

/// Density on the unit sphere with total mass 1. In 1D it is the pair
/// (β, 1 − β) on the directions (+1, −1); in 2D a piecewise-constant arc
/// function on [0, 2π).
template <Scalar T>
class AngularDensity {
 public:
  static AngularDensity one_dim(T beta) {
    AngularDensity a;
    a.dim_ = 1;
    a.beta_ = std::move(beta);
    return a;
  }
  static AngularDensity two_dim(AngularFn arcs, double tol = 1e-12) {
    if (std::abs(arcs.integral() - 1.0) > tol)
      throw std::invalid_argument("AngularDensity: total mass must be 1, got " + std::to_string(arcs.integral()));
    AngularDensity a;
    a.dim_ = 2;
    a.arcs_ = std::move(arcs);
    return a;
  }
  static AngularDensity uniform_2d() { return two_dim(AngularFn(1.0 / kTwoPi)); }

  int dim() const { return dim_; }
  const T& beta() const { return beta_; }
  const AngularFn& arcs() const { return arcs_; }

 private:
  int dim_ = 1;
  T beta_{};
  AngularFn arcs_;
};

// --- one dimension -----------------------------------------------------------

/// Directional atom at a point of the line, stored as the masses on the two
/// directions: the functional φ ↦ plus·φ(p+) + minus·φ(p−). weight = plus +
/// minus and β = plus / weight when weight ≠ 0; a zero-weight atom with
/// plus = −minus ≠ 0 is a nonzero functional and is kept.
template <Scalar T>
struct Atom1D {
  T plus{0};
  T minus{0};

  T weight() const { return plus + minus; }
  T beta() const { return plus / weight(); }
  bool is_zero() const { return scalar_is_zero(plus) && scalar_is_zero(minus); }
  friend bool operator==(const Atom1D& a, const Atom1D& b) {
    return scalar_eq(a.plus, b.plus) && scalar_eq(a.minus, b.minus);
  }
};

template <Scalar T>
class Distribution1D {
 public:
  explicit Distribution1D(PiecewiseFn1D<T> regular) : regular_(std::move(regular)) {}
  static Distribution1D zero(const T& lo, const T& hi) { return Distribution1D(PiecewiseFn1D<T>::zero(lo, hi)); }

  /// weight · δ_p^α with α(1) = beta.
  static Distribution1D delta(const T& lo, const T& hi, const T& p, const T& beta, const T& weight = T(1)) {
    Distribution1D d = zero(lo, hi);
    d.add_atom(p, {weight * beta, weight * (T(1) - beta)});
    return d;
  }
  static Distribution1D delta_plus(const T& lo, const T& hi, const T& p) { return delta(lo, hi, p, T(1)); }
  static Distribution1D delta_minus(const T& lo, const T& hi, const T& p) { return delta(lo, hi, p, T(0)); }

  const PiecewiseFn1D<T>& regular() const { return regular_; }
  const std::map<T, Atom1D<T>>& atoms() const { return atoms_; }
  const T& lo() const { return regular_.lo(); }
  const T& hi() const { return regular_.hi(); }

  /// Adds an atom, merging with an existing one at the same point.
  void add_atom(const T& p, const Atom1D<T>& a) {
    if (!(lo() < p && p < hi())) throw std::out_of_range("Distribution1D: atom outside the open domain");
    auto [it, inserted] = atoms_.try_emplace(p, a);
    if (!inserted) {
      it->second.plus += a.plus;
      it->second.minus += a.minus;
    }
    if (it->second.is_zero()) atoms_.erase(it);
  }

  /// (f, φ) for φ with compact support in the open domain.
  T pair(const PiecewiseFn1D<T>& phi) const {
    require_compact(phi);
    T total = (regular_ * phi).integral();
    for (const auto& [p, a] : atoms_) total += a.plus * phi.limit_right(p) + a.minus * phi.limit_left(p);
    return total;
  }

  /// Per-atom contributions to (f, φ), in atom order.
  std::vector<std::pair<T, T>> atom_contributions(const PiecewiseFn1D<T>& phi) const {
    std::vector<std::pair<T, T>> out;
    for (const auto& [p, a] : atoms_) out.emplace_back(p, a.plus * phi.limit_right(p) + a.minus * phi.limit_left(p));
    return out;
  }

  /// g · f, defined by (g f, φ) = (f, g φ).
  Distribution1D multiply(const PiecewiseFn1D<T>& g) const {
    Distribution1D out(g * regular_);
    for (const auto& [p, a] : atoms_) out.add_atom(p, {a.plus * g.limit_right(p), a.minus * g.limit_left(p)});
    return out;
  }

  /// ∫_{(a, b)} f = (f, χ_(a,b)); [a, b] must lie in the open domain.
  T integrate(const T& a, const T& b) const {
    if (!(lo() < a && a < b && b < hi()))
      throw std::out_of_range("Distribution1D::integrate: interval not compactly contained");
    return pair(PiecewiseFn1D<T>::indicator(lo(), hi(), a, b));
  }

  /// Σ c_i f_i.
  static Distribution1D linear_combine(const std::vector<T>& coeffs, const std::vector<Distribution1D>& fs) {
    if (coeffs.size() != fs.size() || fs.empty())
      throw std::invalid_argument("linear_combine: coefficient count mismatch");
    Distribution1D out = zero(fs[0].lo(), fs[0].hi());
    for (std::size_t i = 0; i < fs.size(); ++i) {
      out.regular_ = out.regular_ + fs[i].regular_ * coeffs[i];
      for (const auto& [p, a] : fs[i].atoms_) out.add_atom(p, {a.plus * coeffs[i], a.minus * coeffs[i]});
    }
    return out;
  }

  friend Distribution1D operator+(const Distribution1D& f, const Distribution1D& g) {
    return linear_combine({T(1), T(1)}, {f, g});
  }
  friend Distribution1D operator*(const T& c, const Distribution1D& f) { return linear_combine({c}, {f}); }

  /// f ≥ 0 as a functional: the density is nonnegative on every piece and
  /// each atom puts nonnegative mass on both directions.
  bool is_nonneg() const {
    if (!regular_.nonneg()) return false;
    for (const auto& [p, a] : atoms_)
      if (scalar_sign(a.plus) < 0 || scalar_sign(a.minus) < 0) return false;
    return true;
  }

  friend bool operator==(const Distribution1D& f, const Distribution1D& g) {
    if (!(f.regular_ == g.regular_)) return false;
    auto nonzero = [](const Distribution1D& d) {
      std::vector<std::pair<T, Atom1D<T>>> v;
      for (const auto& [p, a] : d.atoms_)
        if (!a.is_zero()) v.emplace_back(p, a);
      return v;
    };
    const auto a = nonzero(f), b = nonzero(g);
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!scalar_eq(a[i].first, b[i].first) || !(a[i].second == b[i].second)) return false;
    return true;
  }

  template <Scalar U>
  Distribution1D<U> cast() const {
    Distribution1D<U> out(regular_.template cast<U>());
    for (const auto& [p, a] : atoms_) out.add_atom(scalar_cast<U>(p), {scalar_cast<U>(a.plus), scalar_cast<U>(a.minus)});
    return out;
  }

 private:
  void require_compact(const PiecewiseFn1D<T>& phi) const {
    if (!(phi.lo() == lo()) || !(phi.hi() == hi())) throw std::domain_error("pair: domain mismatch");
    if (phi.is_zero()) return;
    if (!phi.pieces().front().is_zero() || !phi.pieces().back().is_zero())
      throw std::domain_error("pair: test function support is not compact in the domain");
  }

  PiecewiseFn1D<T> regular_;
  std::map<T, Atom1D<T>> atoms_;
};

// --- two dimensions ----------------------------------------------------------

/// Directional atom in the plane: φ ↦ ∫ measure(s) φ(p)(s) ds. The measure is
/// weight · α and is kept unnormalized, so zero-weight atoms survive.
template <Scalar T>
struct Atom2D {
  Point<T> p;
  AngularFn measure;

  double weight() const { return measure.integral(); }
  /// α = measure / weight (requires weight ≠ 0).
  AngularFn density() const { return measure * (1.0 / weight()); }
};

template <Scalar T>
class Distribution2D {
 public:
  explicit Distribution2D(PiecewiseFn2D<T> regular) : regular_(std::move(regular)) {}
  static Distribution2D zero(const Rect<T>& domain) {
    return Distribution2D(PiecewiseFn2D<T>::constant(domain, T(0)));
  }
  static Distribution2D delta(const Rect<T>& domain, const Point<T>& p, const AngularDensity<T>& alpha,
                              double weight = 1.0) {
    if (alpha.dim() != 2) throw std::invalid_argument("Distribution2D::delta: needs a 2D angular density");
    Distribution2D d = zero(domain);
    d.add_atom(p, alpha.arcs() * weight);
    return d;
  }

  const PiecewiseFn2D<T>& regular() const { return regular_; }
  const std::vector<Atom2D<T>>& atoms() const { return atoms_; }
  const Rect<T>& domain() const { return regular_.domain(); }

  void add_atom(const Point<T>& p, const AngularFn& measure) {
    if (!domain().contains_open(p)) throw std::out_of_range("Distribution2D: atom outside the open domain");
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), p,
                               [](const Atom2D<T>& a, const Point<T>& q) { return a.p < q; });
    if (it != atoms_.end() && it->p == p) {
      it->measure = it->measure + measure;
      if (it->measure.is_zero()) atoms_.erase(it);
    } else if (!measure.is_zero()) {
      atoms_.insert(it, Atom2D<T>{p, measure});
    }
  }

  T pair(const PiecewiseFn2D<T>& phi) const {
    if (!(phi.domain() == domain())) throw std::domain_error("pair: domain mismatch");
    if (!has_compact_support(phi)) throw std::domain_error("pair: test function support is not compact in the domain");
    const PiecewiseFn2D<T>* fs[] = {&regular_, &phi};
    T total = integrate_box<T>(FactorList<T>(fs), domain());
    for (const auto& a : atoms_) total += from_double<T>(atom_value(a, phi));
    return total;
  }

  std::vector<std::pair<Point<T>, double>> atom_contributions(const PiecewiseFn2D<T>& phi) const {
    std::vector<std::pair<Point<T>, double>> out;
    for (const auto& a : atoms_) out.emplace_back(a.p, atom_value(a, phi));
    return out;
  }

  Distribution2D multiply(const PiecewiseFn2D<T>& g) const {
    Distribution2D out(g * regular_);
    for (const auto& a : atoms_) out.add_atom(a.p, a.measure * g.surrounding_value(a.p));
    return out;
  }

  /// ∫_S f = (f, χ_S) for a bounded S with closure inside the open domain.
  T integrate(const RegionSet<T>& set) const {
    const auto chi = PiecewiseFn2D<T>::indicator(domain(), set);
    if (!has_compact_support(chi)) throw std::out_of_range("Distribution2D::integrate: set not compactly contained");
    return pair(chi);
  }

  static Distribution2D linear_combine(const std::vector<T>& coeffs, const std::vector<Distribution2D>& fs) {
    if (coeffs.size() != fs.size() || fs.empty())
      throw std::invalid_argument("linear_combine: coefficient count mismatch");
    Distribution2D out = zero(fs[0].domain());
    for (std::size_t i = 0; i < fs.size(); ++i) {
      out.regular_ = out.regular_ + fs[i].regular_ * coeffs[i];
      for (const auto& a : fs[i].atoms_) out.add_atom(a.p, a.measure * to_double(coeffs[i]));
    }
    return out;
  }

  bool is_nonneg() const {
    if (!nonneg(regular_)) return false;
    for (const auto& a : atoms_)
      if (a.measure.min_value() < 0) return false;
    return true;
  }

  /// Equality of functionals: the densities agree (their difference is zero on
  /// every cell) and atoms agree arcwise within `tol`.
  bool equals(const Distribution2D& o, double tol = 1e-12) const {
    if (!(domain() == o.domain())) return false;
    const auto diff = regular_ + o.regular_ * T(-1);
    const Arrangement<T> arr(diff.boundary_lines(), domain());
    for (const auto& slab : arr.slabs())
      for (const auto& cell : slab.cells)
        if (!diff.active_poly(cell.rep).is_zero()) return false;
    if (atoms_.size() != o.atoms_.size()) return false;
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      if (!(atoms_[i].p == o.atoms_[i].p) || !atoms_[i].measure.approx_equal(o.atoms_[i].measure, tol)) return false;
    return true;
  }

 private:
  static double atom_value(const Atom2D<T>& a, const PiecewiseFn2D<T>& phi) {
    return (a.measure * phi.surrounding_value(a.p)).integral();
  }

  PiecewiseFn2D<T> regular_;
  std::vector<Atom2D<T>> atoms_;
};

// --- regions used by the calculus ------------------------------------------

namespace detail {

template <Scalar T>
Point<T> direction(double s) {
  return {from_double<T>(std::cos(s)), from_double<T>(std::sin(s))};
}

/// Closed-on-the-left wedge p + {t (cos s, sin s) : lo <= s < hi}, hi - lo <= π.
template <Scalar T>
Region<T> convex_wedge(const Point<T>& p, double lo, double hi) {
  const Point<T> a = direction<T>(lo), b = direction<T>(hi);
  Region<T> r;
  // cross(a, x - p) >= 0  <=>  a.y x - a.x y <= a.y p.x - a.x p.y
  r.halfplanes.emplace_back(a.y, -a.x, a.y * p.x - a.x * p.y, Sense::kLessEqual);
  // cross(x - p, b) > 0  <=>  -b.y x + b.x y < -b.y p.x + b.x p.y
  r.halfplanes.emplace_back(-b.y, b.x, -b.y * p.x + b.x * p.y, Sense::kLess);
  return r;
}

}  // namespace detail

/// Regular polygon with `sides` vertices on the circle of radius r about p,
/// as an intersection of half-planes.
template <Scalar T>
Region<T> polygon_disk(const Point<T>& p, double r, int sides = 64) {
  std::vector<Point<T>> v;
  for (int i = 0; i < sides; ++i) {
    const double s = kTwoPi * i / sides;
    v.push_back({p.x + from_double<T>(r * std::cos(s)), p.y + from_double<T>(r * std::sin(s))});
  }
  Region<T> out;
  for (int i = 0; i < sides; ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % sides];
    // Interior is to the left of a -> b: cross(b - a, x - a) > 0.
    const T nx = b.y - a.y, ny = -(b.x - a.x);
    out.halfplanes.emplace_back(nx, ny, nx * a.x + ny * a.y, Sense::kLess);
  }
  return out;
}

/// Sector p + {t (cos s, sin s) : lo <= s < hi, 0 < t}, cut to the polygonal
/// disk of radius r. Arcs longer than π are split into convex pieces.
template <Scalar T>
RegionSet<T> sector(const Point<T>& p, double lo, double hi, double r, int sides = 64) {
  if (!(lo < hi) || hi - lo > kTwoPi) throw std::invalid_argument("sector: malformed arc");
  const Region<T> disk = polygon_disk(p, r, sides);
  RegionSet<T> out;
  const int pieces = static_cast<int>(std::ceil((hi - lo) / (kTwoPi / 4)));
  for (int i = 0; i < pieces; ++i) {
    const double a = lo + (hi - lo) * i / pieces, b = lo + (hi - lo) * (i + 1) / pieces;
    out.terms.push_back({detail::convex_wedge(p, a, b).intersect(disk), true});
  }
  return out;
}

}  // namespace regudist
