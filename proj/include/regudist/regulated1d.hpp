#pragma once

#include "regudist/polynomial.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace regudist {

/// Regulated function on an open interval (lo, hi) made of finitely many
/// polynomial pieces.
///
/// Point values at breakpoints are never stored: two functions that differ
/// only there are the same element. Construction canonicalises by merging
/// neighbouring pieces with identical polynomials, so equal elements have equal
/// representations.
template <Scalar T>
class PiecewiseFn1D {
 public:
  using Poly = Polynomial<T>;

  PiecewiseFn1D(T lo, T hi, std::vector<T> breakpoints, std::vector<Poly> pieces)
      : lo_(std::move(lo)), hi_(std::move(hi)), breaks_(std::move(breakpoints)), pieces_(std::move(pieces)) {
    if (!(lo_ < hi_)) throw std::invalid_argument("PiecewiseFn1D: empty domain");
    if (pieces_.size() != breaks_.size() + 1)
      throw std::invalid_argument("PiecewiseFn1D: need one more piece than breakpoints");
    for (std::size_t i = 0; i < breaks_.size(); ++i) {
      if (!(lo_ < breaks_[i] && breaks_[i] < hi_))
        throw std::invalid_argument("PiecewiseFn1D: breakpoint outside the open domain");
      if (i > 0 && !(breaks_[i - 1] < breaks_[i]))
        throw std::invalid_argument("PiecewiseFn1D: breakpoints must be strictly increasing");
    }
    canonicalize();
  }

  static PiecewiseFn1D constant(const T& lo, const T& hi, const T& c) {
    return PiecewiseFn1D(lo, hi, {}, {Poly::constant(c)});
  }
  static PiecewiseFn1D zero(const T& lo, const T& hi) { return constant(lo, hi, T(0)); }
  static PiecewiseFn1D polynomial(const T& lo, const T& hi, Poly p) {
    return PiecewiseFn1D(lo, hi, {}, {std::move(p)});
  }
  /// Heaviside step at `at`: 0 to the left, 1 to the right.
  static PiecewiseFn1D heaviside(const T& lo, const T& hi, const T& at) {
    return PiecewiseFn1D(lo, hi, {at}, {Poly{}, Poly::constant(T(1))});
  }
  /// Characteristic function of (a, b), clipped to the domain.
  static PiecewiseFn1D indicator(const T& lo, const T& hi, const T& a, const T& b) {
    std::vector<T> br;
    std::vector<Poly> pc;
    const T from = std::max(a, lo), to = std::min(b, hi);
    if (!(from < to)) return zero(lo, hi);
    if (lo < from) {
      br.push_back(from);
      pc.push_back(Poly{});
    }
    pc.push_back(Poly::constant(T(1)));
    if (to < hi) {
      br.push_back(to);
      pc.push_back(Poly{});
    }
    return PiecewiseFn1D(lo, hi, std::move(br), std::move(pc));
  }

  const T& lo() const { return lo_; }
  const T& hi() const { return hi_; }
  const std::vector<T>& breakpoints() const { return breaks_; }
  const std::vector<Poly>& pieces() const { return pieces_; }
  std::size_t size() const { return pieces_.size(); }

  /// Closed cell [left(i), right(i)] of piece i.
  const T& piece_lo(std::size_t i) const { return i == 0 ? lo_ : breaks_[i - 1]; }
  const T& piece_hi(std::size_t i) const { return i == breaks_.size() ? hi_ : breaks_[i]; }

  /// g(x+), defined for x in [lo, hi).
  T limit_right(const T& x) const {
    if (x < lo_ || !(x < hi_)) throw std::out_of_range("limit_right: point outside [lo, hi)");
    const auto idx = std::upper_bound(breaks_.begin(), breaks_.end(), x) - breaks_.begin();
    return pieces_[idx](x);
  }

  /// g(x-), defined for x in (lo, hi].
  T limit_left(const T& x) const {
    if (!(lo_ < x) || hi_ < x) throw std::out_of_range("limit_left: point outside (lo, hi]");
    const auto idx = std::lower_bound(breaks_.begin(), breaks_.end(), x) - breaks_.begin();
    return pieces_[idx](x);
  }

  /// Value at an interior point; at a breakpoint this is the right limit.
  T operator()(const T& x) const { return limit_right(x); }

  /// sup over the domain of max(|g(x+)|, |g(x-)|), endpoint limits included.
  T norm() const {
    T best(0);
    for (std::size_t i = 0; i < pieces_.size(); ++i)
      best = std::max(best, sup_abs_on(pieces_[i], piece_lo(i), piece_hi(i)));
    return best;
  }

  /// sup of g on the closure of (a, b) ∩ domain, one-sided limits included.
  T sup_on(const T& a, const T& b) const { return extremum_on(a, b, true); }
  T inf_on(const T& a, const T& b) const { return extremum_on(a, b, false); }

  /// Breakpoints where g(x+) != g(x-).
  std::vector<T> discontinuity_set() const {
    std::vector<T> out;
    for (std::size_t i = 0; i < breaks_.size(); ++i)
      if (!scalar_eq(pieces_[i](breaks_[i]), pieces_[i + 1](breaks_[i]))) out.push_back(breaks_[i]);
    return out;
  }

  bool is_piecewise_constant() const {
    return std::all_of(pieces_.begin(), pieces_.end(), [](const Poly& p) { return p.is_constant(); });
  }
  bool is_zero() const { return pieces_.size() == 1 && pieces_[0].is_zero(); }

  /// Piecewise-constant h with norm(g - h) < eps. Each piece is cut into the
  /// fewest uniform cells whose oscillation stays below eps (searched up to a
  /// Lipschitz bound); each cell takes the midrange of the polynomial.
  PiecewiseFn1D pc_approximate(const T& eps) const {
    if (!(eps > T(0))) throw std::invalid_argument("pc_approximate: eps must be positive");
    std::vector<T> br;
    std::vector<Poly> pc;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      const Poly& p = pieces_[i];
      const T a = piece_lo(i), b = piece_hi(i);
      if (i > 0) br.push_back(a);
      if (p.is_constant()) {
        pc.push_back(p);
        continue;
      }
      const long cells = cells_needed(p, a, b, eps);
      const T width = (b - a) / T(cells);
      for (long c = 0; c < cells; ++c) {
        const T ca = a + width * T(c);
        const T cb = c + 1 == cells ? b : a + width * T(c + 1);
        if (c > 0) br.push_back(ca);
        pc.push_back(Poly::constant((max_on(p, ca, cb) + min_on(p, ca, cb)) / T(2)));
      }
    }
    return PiecewiseFn1D(lo_, hi_, std::move(br), std::move(pc));
  }

  /// Exact integral over (a, b) ∩ domain.
  T integral(const T& a, const T& b) const {
    T total(0);
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      const T from = std::max(a, piece_lo(i)), to = std::min(b, piece_hi(i));
      if (from < to) total += pieces_[i].integrate(from, to);
    }
    return total;
  }
  T integral() const { return integral(lo_, hi_); }

  /// g >= 0 everywhere (every piece on its closed cell).
  bool nonneg() const {
    for (std::size_t i = 0; i < pieces_.size(); ++i)
      if (!nonneg_on(pieces_[i], piece_lo(i), piece_hi(i))) return false;
    return true;
  }

  /// Pointwise combination over the merged breakpoint set.
  template <class Op>
  static PiecewiseFn1D combine(const PiecewiseFn1D& g, const PiecewiseFn1D& h, Op op) {
    if (!(g.lo_ == h.lo_) || !(g.hi_ == h.hi_)) throw std::domain_error("PiecewiseFn1D: domain mismatch");
    std::vector<T> br;
    std::set_union(g.breaks_.begin(), g.breaks_.end(), h.breaks_.begin(), h.breaks_.end(),
                   std::back_inserter(br));
    std::vector<Poly> pc;
    pc.reserve(br.size() + 1);
    std::size_t gi = 0, hj = 0;
    for (std::size_t k = 0; k <= br.size(); ++k) {
      pc.push_back(op(g.pieces_[gi], h.pieces_[hj]));
      if (k < br.size()) {
        if (gi < g.breaks_.size() && g.breaks_[gi] == br[k]) ++gi;
        if (hj < h.breaks_.size() && h.breaks_[hj] == br[k]) ++hj;
      }
    }
    return PiecewiseFn1D(g.lo_, g.hi_, std::move(br), std::move(pc));
  }

  friend PiecewiseFn1D operator+(const PiecewiseFn1D& g, const PiecewiseFn1D& h) {
    return combine(g, h, [](const Poly& a, const Poly& b) { return a + b; });
  }
  friend PiecewiseFn1D operator-(const PiecewiseFn1D& g, const PiecewiseFn1D& h) {
    return combine(g, h, [](const Poly& a, const Poly& b) { return a - b; });
  }
  friend PiecewiseFn1D operator*(const PiecewiseFn1D& g, const PiecewiseFn1D& h) {
    return combine(g, h, [](const Poly& a, const Poly& b) { return a * b; });
  }
  friend PiecewiseFn1D operator*(PiecewiseFn1D g, const T& s) {
    for (auto& p : g.pieces_) p *= s;
    g.canonicalize();
    return g;
  }
  friend PiecewiseFn1D operator*(const T& s, PiecewiseFn1D g) { return std::move(g) * s; }
  friend PiecewiseFn1D operator+(const PiecewiseFn1D& g, const T& s) {
    return g + constant(g.lo_, g.hi_, s);
  }

  friend bool operator==(const PiecewiseFn1D& g, const PiecewiseFn1D& h) {
    if (!(g.lo_ == h.lo_) || !(g.hi_ == h.hi_)) return false;
    const PiecewiseFn1D diff = g - h;
    return std::all_of(diff.pieces_.begin(), diff.pieces_.end(), [](const Poly& p) { return p == Poly{}; });
  }

  template <Scalar U>
  PiecewiseFn1D<U> cast() const {
    std::vector<U> br;
    for (const T& b : breaks_) br.push_back(scalar_cast<U>(b));
    std::vector<Polynomial<U>> pc;
    for (const Poly& p : pieces_) {
      std::vector<U> c;
      for (const T& v : p.coeffs()) c.push_back(scalar_cast<U>(v));
      pc.emplace_back(std::move(c));
    }
    return PiecewiseFn1D<U>(scalar_cast<U>(lo_), scalar_cast<U>(hi_), std::move(br), std::move(pc));
  }

 private:
  void canonicalize() {
    std::vector<T> br;
    std::vector<Poly> pc{pieces_.front()};
    for (std::size_t i = 0; i < breaks_.size(); ++i) {
      if (pieces_[i + 1] == pc.back()) continue;
      br.push_back(breaks_[i]);
      pc.push_back(pieces_[i + 1]);
    }
    breaks_ = std::move(br);
    pieces_ = std::move(pc);
  }

  T extremum_on(const T& a, const T& b, bool want_max) const {
    const T from = std::max(a, lo_), to = std::min(b, hi_);
    if (!(from < to)) throw std::invalid_argument("sup_on/inf_on: empty range");
    bool first = true;
    T best(0);
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      const T ca = std::max(from, piece_lo(i)), cb = std::min(to, piece_hi(i));
      if (!(ca < cb)) continue;
      const T v = want_max ? max_on(pieces_[i], ca, cb) : min_on(pieces_[i], ca, cb);
      if (first || (want_max ? best < v : v < best)) best = v;
      first = false;
    }
    return best;
  }

  static long cells_needed(const Poly& p, const T& a, const T& b, const T& eps) {
    auto oscillation_ok = [&](long cells) {
      const T width = (b - a) / T(cells);
      for (long c = 0; c < cells; ++c) {
        const T ca = a + width * T(c), cb = a + width * T(c + 1);
        if (!(max_on(p, ca, cb) - min_on(p, ca, cb) < eps)) return false;
      }
      return true;
    };
    // Oscillation per cell <= max|p'| * width, so this count always works.
    const T lipschitz = sup_abs_on(p.derivative(), a, b);
    const double bound = to_double(lipschitz * (b - a) / eps);
    long upper = static_cast<long>(bound) + 1;
    while (!oscillation_ok(upper)) upper *= 2;
    // Cheap cases first; the uniform search is monotone enough at desk scale.
    for (long cells = 1; cells < upper && cells <= 64; ++cells)
      if (oscillation_ok(cells)) return cells;
    return upper;
  }

  T lo_, hi_;
  std::vector<T> breaks_;
  std::vector<Poly> pieces_;
};

}  // namespace regudist
