#pragma once

#include "regudist/scalar.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

namespace regudist {

/// Dense univariate polynomial c0 + c1 x + ... + cn x^n.
///
/// Trailing exact zeros are trimmed, so the zero polynomial has no
/// coefficients and degree() == -1.
template <Scalar T>
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<T> coeffs) : coeffs_(coeffs) { trim(); }
  explicit Polynomial(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static Polynomial constant(const T& c) { return Polynomial(std::vector<T>{c}); }
  static Polynomial identity() { return Polynomial(std::vector<T>{T(0), T(1)}); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  const std::vector<T>& coeffs() const { return coeffs_; }
  T coeff(int i) const {
    return i >= 0 && i < static_cast<int>(coeffs_.size()) ? coeffs_[i] : T(0);
  }
  T leading() const { return coeffs_.empty() ? T(0) : coeffs_.back(); }

  T operator()(const T& x) const {
    T acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Polynomial derivative() const {
    std::vector<T> out;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) out.push_back(coeffs_[i] * T(static_cast<long>(i)));
    return Polynomial(std::move(out));
  }

  /// Antiderivative with zero constant term.
  Polynomial antiderivative() const {
    std::vector<T> out(coeffs_.size() + 1, T(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i + 1] = coeffs_[i] / T(static_cast<long>(i + 1));
    return Polynomial(std::move(out));
  }

  T integrate(const T& a, const T& b) const {
    const Polynomial anti = antiderivative();
    return anti(b) - anti(a);
  }

  /// p(m x + q).
  Polynomial compose_linear(const T& m, const T& q) const {
    Polynomial result;
    const Polynomial inner(std::vector<T>{q, m});
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
      result = result * inner + constant(*it);
    return result;
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), T(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) { return *this += o * T(-1); }
  Polynomial& operator*=(const T& s) {
    for (auto& c : coeffs_) c *= s;
    trim();
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
  friend Polynomial operator*(const T& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> out(a.coeffs_.size() + b.coeffs_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(out));
  }

  /// Coefficientwise equality (exact for Rational, within tolerance for double).
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    const std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
    for (std::size_t i = 0; i < n; ++i)
      if (!scalar_eq(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)))) return false;
    return true;
  }

  /// Euclidean division; requires a nonzero divisor.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<T> rem = coeffs_;
    std::vector<T> quot(std::max<int>(0, degree() - d.degree() + 1), T(0));
    for (int k = degree() - d.degree(); k >= 0; --k) {
      const T factor = rem[k + d.degree()] / d.leading();
      quot[k] = factor;
      for (int j = 0; j <= d.degree(); ++j) rem[k + j] -= factor * d.coeffs_[j];
      rem[k + d.degree()] = T(0);
    }
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
  }

  Polynomial monic() const {
    if (is_zero()) return {};
    return *this * (T(1) / leading());
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == T(0)) coeffs_.pop_back();
  }

  std::vector<T> coeffs_;
};

namespace poly_detail {

template <Scalar T>
Polynomial<T> gcd(Polynomial<T> a, Polynomial<T> b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Sturm chain of a square-free polynomial.
template <Scalar T>
std::vector<Polynomial<T>> sturm_chain(const Polynomial<T>& p) {
  std::vector<Polynomial<T>> chain{p, p.derivative()};
  while (!chain.back().is_zero()) {
    auto r = chain[chain.size() - 2].divmod(chain.back()).second;
    chain.push_back(r * T(-1));
  }
  chain.pop_back();
  return chain;
}

template <Scalar T>
int sign_variations(const std::vector<Polynomial<T>>& chain, const T& x) {
  int count = 0;
  int last = 0;
  for (const auto& p : chain) {
    const int s = scalar_sign(p(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

/// Removes a simple root at x (p(x) == 0) by exact synthetic division.
template <Scalar T>
Polynomial<T> deflate(const Polynomial<T>& p, const T& x) {
  return p.divmod(Polynomial<T>(std::vector<T>{-x, T(1)})).first;
}

/// Odd-multiplicity part of p (product of the square-free factors with odd
/// exponent), via Yun's square-free factorisation.
template <Scalar T>
Polynomial<T> odd_part(const Polynomial<T>& p) {
  if (p.degree() <= 0) return Polynomial<T>::constant(T(1));
  Polynomial<T> a = p.monic();
  Polynomial<T> b = a.derivative();
  Polynomial<T> c = gcd(a, b);
  Polynomial<T> w = a.divmod(c).first;
  Polynomial<T> y = b.divmod(c).first;
  Polynomial<T> z = y - w.derivative();
  Polynomial<T> result = Polynomial<T>::constant(T(1));
  int multiplicity = 1;
  while (w.degree() > 0) {
    Polynomial<T> factor = gcd(w, z);
    if (multiplicity % 2 == 1) result = result * factor;
    w = w.divmod(factor).first;
    y = z.divmod(factor).first;
    z = y - w.derivative();
    ++multiplicity;
  }
  return result;
}

/// Isolating intervals (lo, hi) with nonzero endpoint values, each holding
/// exactly one root of the square-free polynomial s, covering the open (a, b).
template <Scalar T>
void isolate(const std::vector<Polynomial<T>>& chain, const Polynomial<T>& s, T lo, T hi,
             std::vector<std::pair<T, T>>& out) {
  const int count = sign_variations(chain, lo) - sign_variations(chain, hi);
  if (count <= 0) return;
  if (count == 1) {
    out.emplace_back(lo, hi);
    return;
  }
  // Pick a split point that is not itself a root.
  T mid = (lo + hi) / T(2);
  for (int k = 3; s(mid) == T(0); ++k) mid = lo + (hi - lo) / T(k);
  isolate(chain, s, lo, mid, out);
  isolate(chain, s, mid, hi, out);
}

}  // namespace poly_detail

/// Approximations of the distinct real roots of p in the open interval (a, b).
///
/// Exact scalars: Sturm isolation followed by bisection to width `width`
/// (roots that are found exactly are returned exactly). Floating scalars:
/// sign-change scan on a fine mesh plus bisection.
template <Scalar T>
std::vector<T> real_roots_in(const Polynomial<T>& p, const T& a, const T& b, double width = 1e-40) {
  std::vector<T> roots;
  if (p.degree() <= 0 || !(a < b)) return roots;
  if (p.degree() == 1) {
    const T r = -p.coeff(0) / p.coeff(1);
    if (a < r && r < b) roots.push_back(r);
    return roots;
  }
  if constexpr (ScalarTraits<T>::exact) {
    using poly_detail::deflate;
    Polynomial<T> s = p.divmod(poly_detail::gcd(p, p.derivative())).first;
    if (s(a) == T(0)) s = deflate(s, a);
    if (s(b) == T(0)) s = deflate(s, b);
    if (s.degree() <= 0) return roots;
    const auto chain = poly_detail::sturm_chain(s);
    std::vector<std::pair<T, T>> intervals;
    poly_detail::isolate(chain, s, a, b, intervals);
    const T tol = from_double<T>(width);
    for (auto [lo, hi] : intervals) {
      int s_lo = scalar_sign(s(lo));
      bool exact_hit = false;
      while (hi - lo > tol * (T(1) + abs(lo))) {
        const T mid = (lo + hi) / T(2);
        const int s_mid = scalar_sign(s(mid));
        if (s_mid == 0) {
          roots.push_back(mid);
          exact_hit = true;
          break;
        }
        if (s_mid == s_lo) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      if (!exact_hit) roots.push_back((lo + hi) / T(2));
    }
  } else {
    constexpr int kMesh = 512;
    const T h = (b - a) / T(kMesh);
    T prev_x = a;
    T prev_v = p(a);
    for (int i = 1; i <= kMesh; ++i) {
      const T x = i == kMesh ? b : a + h * T(i);
      const T v = p(x);
      if (v == T(0) && i < kMesh) {
        roots.push_back(x);
      } else if ((prev_v < 0 && v > 0) || (prev_v > 0 && v < 0)) {
        T lo = prev_x, hi = x;
        for (int it = 0; it < 200 && hi - lo > 1e-15 * (1 + std::abs(lo)); ++it) {
          const T mid = (lo + hi) / 2;
          if ((p(mid) < 0) == (prev_v < 0)) lo = mid; else hi = mid;
        }
        roots.push_back((lo + hi) / 2);
      }
      prev_x = x;
      prev_v = v;
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

/// Maximum of p on the closed interval [a, b] (endpoints and critical points).
template <Scalar T>
T max_on(const Polynomial<T>& p, const T& a, const T& b) {
  T best = std::max(p(a), p(b));
  for (const T& r : real_roots_in(p.derivative(), a, b)) best = std::max(best, p(r));
  return best;
}

template <Scalar T>
T min_on(const Polynomial<T>& p, const T& a, const T& b) {
  return -max_on(p * T(-1), a, b);
}

/// Sup of |p| on [a, b].
template <Scalar T>
T sup_abs_on(const Polynomial<T>& p, const T& a, const T& b) {
  return std::max(max_on(p, a, b), -min_on(p, a, b));
}

/// Whether p(x) >= 0 for all x in [a, b].
///
/// Exact scalars decide this exactly: p changes sign only at roots of odd
/// multiplicity, so p >= 0 iff its odd part has no root inside (a, b) and p is
/// nonnegative at the endpoints and at one interior non-root point.
template <Scalar T>
bool nonneg_on(const Polynomial<T>& p, const T& a, const T& b) {
  if (p.is_zero()) return true;
  if constexpr (ScalarTraits<T>::exact) {
    if (p(a) < 0 || p(b) < 0) return false;
    if (!(a < b)) return true;
    Polynomial<T> odd = poly_detail::odd_part(p);
    if (odd.degree() > 0) {
      if (odd(a) == T(0)) odd = poly_detail::deflate(odd, a);
      if (odd(b) == T(0)) odd = poly_detail::deflate(odd, b);
      if (odd.degree() > 0) {
        const auto chain = poly_detail::sturm_chain(odd);
        if (poly_detail::sign_variations(chain, a) != poly_detail::sign_variations(chain, b))
          return false;
      }
    }
    T probe = (a + b) / T(2);
    for (int k = 3; p(probe) == T(0); ++k) probe = a + (b - a) / T(k);
    return p(probe) > 0;
  } else {
    return min_on(p, a, b) >= -kFloatTolerance;
  }
}

}  // namespace regudist
