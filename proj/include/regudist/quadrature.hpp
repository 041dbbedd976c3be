#pragma once

#include <cmath>
#include <array>
#include <cstddef>
#include <functional>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

namespace regudist {

/// Gauss–Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes, weights;

  explicit GaussLegendre(int n) {
    if (n < 1) throw std::invalid_argument("GaussLegendre: n must be positive");
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      nodes[i] = -x;
      nodes[n - 1 - i] = x;
      weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }

  template <class F>
  double integrate(F&& f, double a, double b) const {
    const double h = 0.5 * (b - a), m = 0.5 * (a + b);
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(m + h * nodes[i]);
    return s * h;
  }
};

struct QuadratureResult {
  double value = 0.0;
  long evaluations = 0;
  bool converged = true;
};

/// Adaptive Simpson on [a, b] to relative tolerance `rel_tol` with an
/// evaluation cap.
inline QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                         double rel_tol = 1e-6, long max_evals = 10'000'000) {
  QuadratureResult res;
  if (!(a < b)) return res;
  struct Seg {
    double a, b, fa, fm, fb, whole;
    int depth;
  };
  auto simpson = [](double a, double b, double fa, double fm, double fb) { return (b - a) / 6.0 * (fa + 4 * fm + fb); };
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  res.evaluations = 3;
  const double coarse = simpson(a, b, fa, fm, fb);
  std::vector<Seg> stack{{a, b, fa, fm, fb, coarse, 0}};
  // A tolerance relative to a fine first estimate avoids chasing zero sums.
  double scale = 0.0;
  {
    const int n = 64;
    for (int i = 0; i < n; ++i) scale += std::abs(f(a + (b - a) * (i + 0.5) / n));
    res.evaluations += n;
    scale *= (b - a) / n;
  }
  const double abs_tol = std::max(rel_tol * scale, 1e-300);
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    const double m = 0.5 * (s.a + s.b);
    const double flm = f(0.5 * (s.a + m)), frm = f(0.5 * (m + s.b));
    res.evaluations += 2;
    const double left = simpson(s.a, m, s.fa, flm, s.fm);
    const double right = simpson(m, s.b, s.fm, frm, s.fb);
    const double tol = abs_tol * (s.b - s.a) / (b - a);
    if ((std::abs(left + right - s.whole) <= 15.0 * tol && s.depth >= 4) || s.depth > 60 ||
        res.evaluations >= max_evals) {
      if (res.evaluations >= max_evals) res.converged = false;
      res.value += left + right + (left + right - s.whole) / 15.0;
      continue;
    }
    stack.push_back({s.a, m, s.fa, flm, s.fm, left, s.depth + 1});
    stack.push_back({m, s.b, s.fm, frm, s.fb, right, s.depth + 1});
  }
  return res;
}

/// Adaptive tensor-Simpson cubature over [a, b] x [c, d]. Each cell compares
/// its 3 x 3 Simpson estimate with the sum over its four quadrants; the cell
/// with the largest disagreement is split until the summed disagreement is
/// below rel_tol * |estimate| or the evaluation cap is hit. The rule samples
/// cell edges, so a jump crossing a cell always perturbs some sample.
inline QuadratureResult adaptive_simpson_2d(const std::function<double(double, double)>& f, double a, double b,
                                            double c, double d, double rel_tol = 1e-6,
                                            long max_evals = 10'000'000) {
  QuadratureResult res;
  if (!(a < b) || !(c < d)) return res;
  // 5 x 5 samples of a cell; the coarse rule uses the even-indexed ones.
  struct Cell {
    double x0, x1, y0, y1;
    std::array<double, 25> v;
    double coarse, fine;
    double err() const { return std::abs(fine - coarse); }
  };
  static constexpr double w3[3] = {1, 4, 1};
  auto simpson = [](const std::array<double, 25>& v, int i0, int j0, int step, double area) {
    double s = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) s += w3[i] * w3[j] * v[(i0 + i * step) * 5 + j0 + j * step];
    return s * area / 36.0;
  };
  auto make = [&](double x0, double x1, double y0, double y1) {
    Cell cl{x0, x1, y0, y1, {}, 0, 0};
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) cl.v[i * 5 + j] = f(x0 + (x1 - x0) * i / 4, y0 + (y1 - y0) * j / 4);
    res.evaluations += 25;
    const double area = (x1 - x0) * (y1 - y0);
    cl.coarse = simpson(cl.v, 0, 0, 2, area);
    cl.fine = simpson(cl.v, 0, 0, 1, area / 4) + simpson(cl.v, 2, 0, 1, area / 4) + simpson(cl.v, 0, 2, 1, area / 4) +
              simpson(cl.v, 2, 2, 1, area / 4);
    return cl;
  };
  auto worse = [](const Cell& l, const Cell& r) { return l.err() < r.err(); };
  std::priority_queue<Cell, std::vector<Cell>, decltype(worse)> heap(worse);
  double total = 0.0, err = 0.0;
  constexpr int kSeed = 8;
  for (int i = 0; i < kSeed; ++i)
    for (int j = 0; j < kSeed; ++j) {
      Cell cl = make(a + (b - a) * i / kSeed, a + (b - a) * (i + 1) / kSeed, c + (d - c) * j / kSeed,
                     c + (d - c) * (j + 1) / kSeed);
      total += cl.fine;
      err += cl.err();
      heap.push(cl);
    }
  while (!heap.empty() && err > rel_tol * std::abs(total) && err > 1e-300) {
    if (res.evaluations + 100 > max_evals) {
      res.converged = false;
      break;
    }
    const Cell cl = heap.top();
    heap.pop();
    total -= cl.fine;
    err -= cl.err();
    const double xm = 0.5 * (cl.x0 + cl.x1), ym = 0.5 * (cl.y0 + cl.y1);
    for (const Cell& child : {make(cl.x0, xm, cl.y0, ym), make(xm, cl.x1, cl.y0, ym), make(cl.x0, xm, ym, cl.y1),
                              make(xm, cl.x1, ym, cl.y1)}) {
      total += child.fine;
      err += child.err();
      heap.push(child);
    }
  }
  // recompute from the leaves to shed the running-sum drift
  res.value = 0.0;
  while (!heap.empty()) {
    res.value += heap.top().fine;
    heap.pop();
  }
  return res;
}

}  // namespace regudist
