#pragma once

#include "regudist/angular.hpp"
#include "regudist/distributions.hpp"
#include "regudist/quadrature.hpp"
#include "regudist/regulated1d.hpp"
#include "regudist/regulated2d.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace regudist {

/// ω_k = k (β χ_(p, p+1/k) + (1 − β) χ_(p−1/k, p)) on (lo, hi).
template <Scalar T>
PiecewiseFn1D<T> delta_sequence_1d(const T& lo, const T& hi, const T& p, const T& beta, long k) {
  if (k < 1) throw std::invalid_argument("delta_sequence: k must be positive");
  const T h = T(1) / T(k);
  if (!(lo < p - h && p + h < hi)) throw std::out_of_range("delta_sequence: 1/k-neighborhood escapes the domain");
  using Poly = Polynomial<T>;
  return PiecewiseFn1D<T>(lo, hi, {p - h, p, p + h},
                          {Poly{}, Poly::constant(T(k) * (T(1) - beta)), Poly::constant(T(k) * beta), Poly{}});
}

/// ω_k(x) = 2k² α(angle(x − p)) for |x − p| < 1/k, zero elsewhere. Its
/// cone-ball integrals are k² min(r, 1/k)² ∫_K α, equal to ∫_K α once kr >= 1.
class DeltaSequence2D {
 public:
  DeltaSequence2D(double px, double py, AngularFn alpha, long k) : px_(px), py_(py), alpha_(std::move(alpha)), k_(k) {
    if (k < 1) throw std::invalid_argument("delta_sequence: k must be positive");
  }

  double radius() const { return 1.0 / static_cast<double>(k_); }
  long k() const { return k_; }

  double operator()(double x, double y) const {
    const double dx = x - px_, dy = y - py_;
    if (dx * dx + dy * dy >= radius() * radius()) return 0.0;
    return 2.0 * static_cast<double>(k_) * static_cast<double>(k_) * alpha_(std::atan2(dy, dx));
  }

  double cone_ball_integral(double lo, double hi, double r) const {
    return scale(r) * alpha_.integral_over(lo, hi);
  }
  double abs_cone_ball_integral(double lo, double hi, double r) const {
    AngularFn a = AngularFn::combine(alpha_, alpha_, [](double v, double) { return std::abs(v); });
    return scale(r) * a.integral_over(lo, hi);
  }

  /// ∫ ω_k φ in polar coordinates about p: the radial integral is exact along
  /// each ray; the angular one is Gauss–Legendre between the angles where the
  /// sequence of boundary crossings inside the disk can change.
  template <Scalar T>
  double pair(const PiecewiseFn2D<T>& phi_in) const {
    const PiecewiseFn2D<double> phi = phi_in.template cast<double>();
    const auto lines = phi.boundary_lines();
    const double R = radius();
    std::vector<double> cuts(alpha_.starts().begin(), alpha_.starts().end());
    auto add_dir = [&](double dx, double dy) {
      if (dx != 0.0 || dy != 0.0) cuts.push_back(wrap_angle(std::atan2(dy, dx)));
    };
    for (const auto& l : lines) {
      const double nn = std::hypot(l.a, l.b);
      const double dist = (l.c - l.a * px_ - l.b * py_) / nn;
      if (std::abs(dist) <= 1e-14) {
        add_dir(l.b, -l.a);
        add_dir(-l.b, l.a);
        continue;
      }
      if (std::abs(dist) < R) {
        const double fx = px_ + dist * l.a / nn, fy = py_ + dist * l.b / nn;  // foot of the perpendicular
        const double half = std::sqrt(R * R - dist * dist);
        add_dir(fx + half * l.b / nn - px_, fy - half * l.a / nn - py_);
        add_dir(fx - half * l.b / nn - px_, fy + half * l.a / nn - py_);
      }
    }
    for (std::size_t i = 0; i < lines.size(); ++i)
      for (std::size_t j = i + 1; j < lines.size(); ++j) {
        const auto& u = lines[i];
        const auto& v = lines[j];
        const double det = u.a * v.b - u.b * v.a;
        if (det == 0.0) continue;
        const double x = (u.c * v.b - u.b * v.c) / det, y = (u.a * v.c - u.c * v.a) / det;
        if (std::hypot(x - px_, y - py_) < R) add_dir(x - px_, y - py_);
      }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    cuts.push_back(kTwoPi);

    static const GaussLegendre gl(24);
    const double kk = static_cast<double>(k_) * static_cast<double>(k_);
    auto radial = [&](double s) {
      const double ex = std::cos(s), ey = std::sin(s);
      std::vector<double> ts{0.0, R};
      for (const auto& l : lines) {
        const double den = l.a * ex + l.b * ey;
        if (den == 0.0) continue;
        const double t = (l.c - l.a * px_ - l.b * py_) / den;
        if (t > 0.0 && t < R) ts.push_back(t);
      }
      std::sort(ts.begin(), ts.end());
      double acc = 0.0;
      for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        if (!(ts[i] < ts[i + 1])) continue;
        const double tm = 0.5 * (ts[i] + ts[i + 1]);
        const auto along = phi.active_poly({px_ + tm * ex, py_ + tm * ey}).restrict_ray(px_, py_, ex, ey);
        // ∫ t · along(t) dt
        acc += (along * Polynomial<double>::identity()).integrate(ts[i], ts[i + 1]);
      }
      return 2.0 * kk * alpha_(s) * acc;
    };
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double a = cuts[i], b = cuts[i + 1];
      if (!(a < b)) continue;
      const int parts = std::max(1, static_cast<int>(std::ceil((b - a) / (kTwoPi / 32))));
      for (int j = 0; j < parts; ++j) total += gl.integrate(radial, a + (b - a) * j / parts, a + (b - a) * (j + 1) / parts);
    }
    return total;
  }

 private:
  double scale(double r) const {
    const double rho = std::min(r, radius());
    return static_cast<double>(k_) * static_cast<double>(k_) * rho * rho;
  }

  double px_, py_;
  AngularFn alpha_;
  long k_;
};

/// ∫_a^b |f|, splitting each piece at its real roots.
template <Scalar T>
T abs_integral(const PiecewiseFn1D<T>& f, const T& a, const T& b) {
  T total(0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const T lo = std::max(a, f.piece_lo(i)), hi = std::min(b, f.piece_hi(i));
    if (!(lo < hi)) continue;
    const auto& p = f.pieces()[i];
    std::vector<T> cuts{lo};
    if (p.degree() > 0)
      for (const T& z : real_roots_in(p, lo, hi))
        if (lo < z && z < hi) cuts.push_back(z);
    cuts.push_back(hi);
    for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
      const T v = p.integrate(cuts[j], cuts[j + 1]);
      total += scalar_sign(v) < 0 ? -v : v;
    }
  }
  return total;
}

// --- Theorem-3 verification -------------------------------------------------

enum class Cone1D { kPlus, kMinus, kBoth };

inline Cone1D parse_cone_1d(const std::string& s) {
  if (s == "+") return Cone1D::kPlus;
  if (s == "-") return Cone1D::kMinus;
  if (s == "+-" || s == "-+") return Cone1D::kBoth;
  throw std::invalid_argument("malformed 1D cone '" + s + "' (expected +, - or +-)");
}

struct Arc {
  double lo, hi;
};

inline void validate_arc(const Arc& a) {
  if (!std::isfinite(a.lo) || !std::isfinite(a.hi) || !(a.lo < a.hi) || a.hi - a.lo > kTwoPi + 1e-12)
    throw std::invalid_argument("malformed cone arc [" + std::to_string(a.lo) + ", " + std::to_string(a.hi) + "]");
}

/// One row per (k, cone). 1D cones are written with cone_lo/cone_hi in
/// {-1, +1}: (+1, +1) is the right half-line, (-1, -1) the left one and
/// (-1, +1) both.
struct ConeRow {
  long k;
  double cone_lo, cone_hi, integral, target, abs_error;
};

struct DeltaSeqReport {
  std::vector<ConeRow> rows;
  std::vector<long> skipped_k;  // 1/k-neighborhood not inside the domain
  double converse_ratio = 0.0;  // sup over k and sampled nested pairs
  bool quadrature_converged = true;
};

namespace detail {

/// Radii r, r/2, r/4, ... down to below 1e-6/k, then 0: user sequences
/// concentrate near p, where a single quadrature pass could step over them.
inline std::vector<double> radial_bands(double r, long k) {
  std::vector<double> t{r};
  while (t.back() > 1e-6 / static_cast<double>(k)) t.push_back(t.back() / 2);
  t.push_back(0.0);
  return t;
}

}  // namespace detail

/// User-supplied 1D sequence: omega(k, x).
using Sequence1D = std::function<double(long, double)>;
/// User-supplied 2D sequence: omega(k, x, y).
using Sequence2D = std::function<double(long, double, double)>;

/// Checks ∫_{B_r(K)} ω_k → ∫_{S(K)} α for the paper's 1D sequence (exact
/// rational integration) or for `user` (adaptive quadrature).
template <Scalar T>
DeltaSeqReport verify_delta_sequence_1d(const T& lo, const T& hi, const T& p, const T& beta,
                                        const std::vector<Cone1D>& cones, const T& r, const std::vector<long>& ks,
                                        const std::optional<Sequence1D>& user = std::nullopt) {
  if (!(r > T(0)) || !(lo < p - r && p + r < hi)) throw std::out_of_range("verify_delta_sequence: B_r(p) escapes the domain");
  DeltaSeqReport rep;
  auto target = [&](Cone1D c) {
    return c == Cone1D::kPlus ? beta : c == Cone1D::kMinus ? T(1) - beta : T(1);
  };
  const double pd = to_double(p), rd = to_double(r);
  for (long k : ks) {
    std::optional<PiecewiseFn1D<T>> omega;
    if (!user) {
      const T h = T(1) / T(k);
      if (!(lo < p - h && p + h < hi)) {
        rep.skipped_k.push_back(k);
        continue;
      }
      omega = delta_sequence_1d(lo, hi, p, beta, k);
    }
    T right(0), left(0), abs_right(0), abs_left(0);
    if (omega) {
      right = omega->integral(p, p + r);
      left = omega->integral(p - r, p);
      abs_right = abs_integral(*omega, p, p + r);
      abs_left = abs_integral(*omega, p - r, p);
    } else {
      const auto bands = detail::radial_bands(rd, k);
      auto side = [&](double dir, bool absolute) {
        auto f = [&](double t) {
          const double v = (*user)(k, pd + dir * t);
          return absolute ? std::abs(v) : v;
        };
        double acc = 0.0;
        for (std::size_t j = 0; j + 1 < bands.size(); ++j) {
          const auto q = adaptive_simpson(f, bands[j + 1], bands[j]);
          rep.quadrature_converged = rep.quadrature_converged && q.converged;
          acc += q.value;
        }
        return acc;
      };
      right = from_double<T>(side(1.0, false));
      left = from_double<T>(side(-1.0, false));
      abs_right = from_double<T>(side(1.0, true));
      abs_left = from_double<T>(side(-1.0, true));
    }
    for (Cone1D c : cones) {
      const T integral = c == Cone1D::kPlus ? right : c == Cone1D::kMinus ? left : right + left;
      const T tgt = target(c);
      const T err = integral - tgt;
      const double lo_d = c == Cone1D::kPlus ? 1.0 : -1.0;
      const double hi_d = c == Cone1D::kMinus ? -1.0 : 1.0;
      rep.rows.push_back({k, lo_d, hi_d, to_double(integral), to_double(tgt), std::abs(to_double(err))});
    }
    // Nested pairs (+ ⊂ ±) and (− ⊂ ±): the difference is one direction of
    // counting measure 1.
    rep.converse_ratio = std::max({rep.converse_ratio, to_double(abs_left), to_double(abs_right)});
  }
  return rep;
}

/// Checks cone-ball convergence for the built-in 2D construction (closed
/// form) or for `user` (adaptive quadrature in polar coordinates).
inline DeltaSeqReport verify_delta_sequence_2d(const Rect<double>& domain, double px, double py,
                                               const AngularFn& alpha, const std::vector<Arc>& cones, double r,
                                               const std::vector<long>& ks, std::uint64_t seed = 0,
                                               const std::optional<Sequence2D>& user = std::nullopt) {
  for (const auto& c : cones) validate_arc(c);
  auto disk_inside = [&](double rad) {
    return domain.x_lo < px - rad && px + rad < domain.x_hi && domain.y_lo < py - rad && py + rad < domain.y_hi;
  };
  if (!(r > 0) || !disk_inside(r)) throw std::out_of_range("verify_delta_sequence: B_r(p) escapes the domain");

  // Nested pairs K' ⊂ K'' sampled deterministically.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  struct Nested {
    Arc outer, inner;
  };
  std::vector<Nested> nested;
  const int n_nested = user ? 4 : 16;
  for (int i = 0; i < n_nested; ++i) {
    const double lo = kTwoPi * U(rng);
    const double len = kTwoPi * (0.05 + 0.95 * U(rng));
    const double a = lo + len * 0.5 * U(rng);
    const double b = a + (lo + len - a) * U(rng);
    nested.push_back({{lo, lo + len}, {a, std::max(b, a)}});
  }

  auto user_integral = [&](long k, double lo, double hi, bool absolute, bool& ok) {
    auto f = [&](double s, double t) {
      const double v = (*user)(k, px + t * std::cos(s), py + t * std::sin(s));
      return (absolute ? std::abs(v) : v) * t;
    };
    const auto bands = detail::radial_bands(r, k);
    double acc = 0.0;
    for (std::size_t j = 0; j + 1 < bands.size(); ++j) {
      const auto q = adaptive_simpson_2d(f, lo, hi, bands[j + 1], bands[j], 1e-5, 300'000);
      ok = ok && q.converged;
      acc += q.value;
    }
    return acc;
  };

  DeltaSeqReport rep;
  for (long k : ks) {
    if (!user && !disk_inside(1.0 / static_cast<double>(k))) {
      rep.skipped_k.push_back(k);
      continue;
    }
    const DeltaSequence2D omega(px, py, alpha, k);
    for (const auto& c : cones) {
      const double integral =
          user ? user_integral(k, c.lo, c.hi, false, rep.quadrature_converged) : omega.cone_ball_integral(c.lo, c.hi, r);
      const double tgt = alpha.integral_over(c.lo, c.hi);
      rep.rows.push_back({k, c.lo, c.hi, integral, tgt, std::abs(integral - tgt)});
    }
    for (const auto& n : nested) {
      const double diff_len = (n.outer.hi - n.outer.lo) - (n.inner.hi - n.inner.lo);
      if (diff_len <= 1e-9) continue;
      double mass = 0.0;
      for (const Arc& part : {Arc{n.outer.lo, n.inner.lo}, Arc{n.inner.hi, n.outer.hi}}) {
        if (!(part.lo < part.hi)) continue;
        mass += user ? user_integral(k, part.lo, part.hi, true, rep.quadrature_converged)
                     : omega.abs_cone_ball_integral(part.lo, part.hi, r);
      }
      rep.converse_ratio = std::max(rep.converse_ratio, mass / diff_len);
    }
  }
  return rep;
}

/// 1, 2, 5, 10, 20, 50, ... up to kmax (kmax included).
inline std::vector<long> log_spaced_ks(long kmax) {
  std::vector<long> ks;
  for (long base = 1; base <= kmax; base *= 10)
    for (long m : {1L, 2L, 5L})
      if (base * m <= kmax) ks.push_back(base * m);
  if (ks.empty() || ks.back() != kmax) ks.push_back(kmax);
  return ks;
}

inline std::vector<long> all_ks(long kmax) {
  std::vector<long> ks;
  for (long k = 1; k <= kmax; ++k) ks.push_back(k);
  return ks;
}

}  // namespace regudist
