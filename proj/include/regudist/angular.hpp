#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <iterator>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

namespace regudist {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Maps an angle into [0, 2π).
inline double wrap_angle(double s) {
  double r = std::fmod(s, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

/// Piecewise-constant function on the unit circle: arc i is the half-open
/// [start_i, start_{i+1}) with the last arc wrapping to 2π. The first arc
/// always starts at 0.
class AngularFn {
 public:
  AngularFn() : starts_{0.0}, values_{0.0} {}
  explicit AngularFn(double constant) : starts_{0.0}, values_{constant} {}

  AngularFn(std::vector<double> starts, std::vector<double> values)
      : starts_(std::move(starts)), values_(std::move(values)) {
    if (starts_.empty() || starts_.size() != values_.size())
      throw std::invalid_argument("AngularFn: arcs and values must match");
    if (starts_.front() != 0.0) throw std::invalid_argument("AngularFn: first arc must start at 0");
    for (std::size_t i = 1; i < starts_.size(); ++i)
      if (!(starts_[i - 1] < starts_[i]) || !(starts_[i] < kTwoPi))
        throw std::invalid_argument("AngularFn: arc starts must increase inside [0, 2π)");
    for (double v : values_)
      if (!std::isfinite(v)) throw std::invalid_argument("AngularFn: non-finite value");
    merge();
  }

  /// Builds from arbitrary (lo, hi, value) arcs, zero elsewhere. Arcs may wrap
  /// (hi > 2π) and must not overlap.
  static AngularFn from_arcs(const std::vector<std::tuple<double, double, double>>& arcs) {
    std::vector<std::tuple<double, double, double>> flat;
    for (auto [lo, hi, v] : arcs) {
      if (!(lo < hi) || hi - lo > kTwoPi + 1e-15) throw std::invalid_argument("AngularFn: malformed arc");
      const double a = wrap_angle(lo);
      const double b = std::min(a + (hi - lo), a + kTwoPi);
      if (b <= kTwoPi) {
        flat.emplace_back(a, b, v);
      } else {
        flat.emplace_back(a, kTwoPi, v);
        flat.emplace_back(0.0, b - kTwoPi, v);
      }
    }
    std::vector<double> starts{0.0};
    for (auto [a, b, v] : flat) {
      starts.push_back(a);
      if (b < kTwoPi) starts.push_back(b);
    }
    std::sort(starts.begin(), starts.end());
    starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
    std::vector<double> values(starts.size(), 0.0);
    for (std::size_t i = 0; i < starts.size(); ++i) {
      int hits = 0;
      for (auto [a, b, v] : flat) {
        if (a <= starts[i] && starts[i] < b) {
          values[i] = v;
          ++hits;
        }
      }
      // rounding slivers where adjacent arcs meet are tolerated
      const double next = i + 1 < starts.size() ? starts[i + 1] : kTwoPi;
      if (hits > 1 && next - starts[i] > 1e-12) throw std::invalid_argument("AngularFn: overlapping arcs");
    }
    return AngularFn(std::move(starts), std::move(values));
  }

  const std::vector<double>& starts() const { return starts_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double arc_end(std::size_t i) const { return i + 1 < starts_.size() ? starts_[i + 1] : kTwoPi; }
  double arc_length(std::size_t i) const { return arc_end(i) - starts_[i]; }

  double operator()(double s) const {
    const double a = wrap_angle(s);
    const auto it = std::upper_bound(starts_.begin(), starts_.end(), a);
    return values_[static_cast<std::size_t>(it - starts_.begin()) - 1];
  }

  bool is_constant() const { return values_.size() == 1; }

  double integral() const {
    double total = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) total += values_[i] * arc_length(i);
    return total;
  }

  /// Integral over the arc [lo, hi] (hi may exceed 2π to wrap; hi - lo <= 2π).
  double integral_over(double lo, double hi) const {
    if (!(lo <= hi) || hi - lo > kTwoPi + 1e-12) throw std::invalid_argument("integral_over: malformed arc");
    if (hi - lo >= kTwoPi) return integral();
    const double a = wrap_angle(lo);
    const double b = a + (hi - lo);
    if (b <= kTwoPi) return integral_flat(a, b);
    return integral_flat(a, kTwoPi) + integral_flat(0.0, b - kTwoPi);
  }

  /// Largest |value| (the L^∞ norm).
  double sup_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
  }
  double min_value() const { return *std::min_element(values_.begin(), values_.end()); }

  template <class Op>
  static AngularFn combine(const AngularFn& f, const AngularFn& g, Op op) {
    std::vector<double> starts;
    std::set_union(f.starts_.begin(), f.starts_.end(), g.starts_.begin(), g.starts_.end(),
                   std::back_inserter(starts));
    std::vector<double> values;
    values.reserve(starts.size());
    for (double s : starts) values.push_back(op(f(s), g(s)));
    return AngularFn(std::move(starts), std::move(values));
  }

  friend AngularFn operator*(const AngularFn& f, const AngularFn& g) {
    return combine(f, g, [](double a, double b) { return a * b; });
  }
  friend AngularFn operator+(const AngularFn& f, const AngularFn& g) {
    return combine(f, g, [](double a, double b) { return a + b; });
  }
  friend AngularFn operator*(AngularFn f, double s) {
    for (double& v : f.values_) v *= s;
    f.merge();
    return f;
  }
  friend AngularFn operator*(double s, AngularFn f) { return std::move(f) * s; }

  /// Equality up to `tol` on every arc of positive length of the overlay.
  bool approx_equal(const AngularFn& o, double tol = 1e-12) const {
    std::vector<double> starts;
    std::set_union(starts_.begin(), starts_.end(), o.starts_.begin(), o.starts_.end(),
                   std::back_inserter(starts));
    for (std::size_t i = 0; i < starts.size(); ++i) {
      const double end = i + 1 < starts.size() ? starts[i + 1] : kTwoPi;
      if (end - starts[i] <= tol) continue;
      const double mid = 0.5 * (starts[i] + end);
      if (std::abs((*this)(mid) - o(mid)) > tol) return false;
    }
    return true;
  }

  bool is_zero(double tol = 0.0) const {
    return std::all_of(values_.begin(), values_.end(), [&](double v) { return std::abs(v) <= tol; });
  }

 private:
  double integral_flat(double a, double b) const {
    double total = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      const double lo = std::max(a, starts_[i]), hi = std::min(b, arc_end(i));
      if (lo < hi) total += values_[i] * (hi - lo);
    }
    return total;
  }

  void merge() {
    std::vector<double> s{starts_.front()};
    std::vector<double> v{values_.front()};
    for (std::size_t i = 1; i < starts_.size(); ++i) {
      if (values_[i] == v.back()) continue;
      s.push_back(starts_[i]);
      v.push_back(values_[i]);
    }
    starts_ = std::move(s);
    values_ = std::move(v);
  }

  std::vector<double> starts_;
  std::vector<double> values_;
};

}  // namespace regudist
