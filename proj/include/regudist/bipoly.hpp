#pragma once

#include "regudist/polynomial.hpp"

#include <map>
#include <tuple>
#include <utility>
#include <vector>

namespace regudist {

/// Sparse bivariate polynomial sum c_ij x^i y^j with no stored zero terms.
template <Scalar T>
class BiPoly {
 public:
  using Monomial = std::pair<int, int>;

  BiPoly() = default;
  static BiPoly constant(const T& c) {
    BiPoly p;
    p.add_term(c, 0, 0);
    return p;
  }
  static BiPoly x() {
    BiPoly p;
    p.add_term(T(1), 1, 0);
    return p;
  }
  static BiPoly y() {
    BiPoly p;
    p.add_term(T(1), 0, 1);
    return p;
  }
  /// Lifts a univariate polynomial in x (axis 1) or y (axis 2).
  static BiPoly from_univariate(const Polynomial<T>& u, int axis) {
    BiPoly p;
    for (int k = 0; k <= u.degree(); ++k)
      p.add_term(u.coeff(k), axis == 1 ? k : 0, axis == 1 ? 0 : k);
    return p;
  }

  void add_term(const T& c, int i, int j) {
    if (i < 0 || j < 0) throw std::invalid_argument("negative exponent");
    auto [it, inserted] = terms_.try_emplace({i, j}, c);
    if (!inserted) it->second += c;
    if (it->second == T(0)) terms_.erase(it);
  }

  const std::map<Monomial, T>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.first + m.second);
    return d;
  }

  T operator()(const T& x, const T& y) const {
    T acc(0);
    for (const auto& [m, c] : terms_) acc += c * ipow(x, m.first) * ipow(y, m.second);
    return acc;
  }

  /// x -> p(x, y0).
  Polynomial<T> restrict_y(const T& y0) const {
    std::vector<T> out;
    for (const auto& [m, c] : terms_) {
      if (static_cast<int>(out.size()) <= m.first) out.resize(m.first + 1, T(0));
      out[m.first] += c * ipow(y0, m.second);
    }
    return Polynomial<T>(std::move(out));
  }
  /// y -> p(x0, y).
  Polynomial<T> restrict_x(const T& x0) const { return transpose().restrict_y(x0); }

  /// t -> p(x0 + t dx, y0 + t dy).
  Polynomial<T> restrict_ray(const T& x0, const T& y0, const T& dx, const T& dy) const {
    const Polynomial<T> px(std::vector<T>{x0, dx});
    const Polynomial<T> py(std::vector<T>{y0, dy});
    Polynomial<T> out;
    for (const auto& [m, c] : terms_) out += upow(px, m.first) * upow(py, m.second) * c;
    return out;
  }

  /// x -> integral_{lower(x)}^{upper(x)} p(x, y) dy for linear bounds
  /// lower(x) = ml x + ql and upper(x) = mu x + qu.
  Polynomial<T> integrate_y_between(const T& ml, const T& ql, const T& mu, const T& qu) const {
    const Polynomial<T> lower(std::vector<T>{ql, ml});
    const Polynomial<T> upper(std::vector<T>{qu, mu});
    Polynomial<T> out;
    for (const auto& [m, c] : terms_) {
      const T scale = c / T(static_cast<long>(m.second + 1));
      const Polynomial<T> diff = upow(upper, m.second + 1) - upow(lower, m.second + 1);
      out += monomial_x(m.first) * diff * scale;
    }
    return out;
  }

  BiPoly transpose() const {
    BiPoly p;
    for (const auto& [m, c] : terms_) p.terms_.emplace(Monomial{m.second, m.first}, c);
    return p;
  }

  BiPoly partial_x() const {
    BiPoly p;
    for (const auto& [m, c] : terms_)
      if (m.first > 0) p.add_term(c * T(static_cast<long>(m.first)), m.first - 1, m.second);
    return p;
  }
  BiPoly partial_y() const { return transpose().partial_x().transpose(); }

  template <Scalar U>
  BiPoly<U> cast() const {
    BiPoly<U> p;
    for (const auto& [m, c] : terms_) p.add_term(scalar_cast<U>(c), m.first, m.second);
    return p;
  }

  BiPoly& operator+=(const BiPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(c, m.first, m.second);
    return *this;
  }
  BiPoly& operator*=(const T& s) {
    if (s == T(0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }
  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a += b * T(-1); }
  friend BiPoly operator*(BiPoly a, const T& s) { return a *= s; }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly p;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) p.add_term(ca * cb, ma.first + mb.first, ma.second + mb.second);
    return p;
  }
  friend bool operator==(const BiPoly& a, const BiPoly& b) {
    for (const auto& [m, c] : a.terms_) {
      auto it = b.terms_.find(m);
      if (!scalar_eq(c, it == b.terms_.end() ? T(0) : it->second)) return false;
    }
    for (const auto& [m, c] : b.terms_)
      if (!a.terms_.contains(m) && !scalar_is_zero(c)) return false;
    return true;
  }

 private:
  static T ipow(const T& base, int e) {
    T r(1);
    for (int k = 0; k < e; ++k) r *= base;
    return r;
  }
  static Polynomial<T> upow(const Polynomial<T>& base, int e) {
    Polynomial<T> r = Polynomial<T>::constant(T(1));
    for (int k = 0; k < e; ++k) r = r * base;
    return r;
  }
  static Polynomial<T> monomial_x(int i) {
    std::vector<T> c(i + 1, T(0));
    c[i] = T(1);
    return Polynomial<T>(std::move(c));
  }

  std::map<Monomial, T> terms_;
};

}  // namespace regudist
