#pragma once

#include "regudist/distributions.hpp"
#include "regudist/parallel.hpp"
#include "regudist/regulated1d.hpp"
#include "regudist/regulated2d.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace regudist {

/// Zero-sum game (X1, X2, ρ): player 1 maximizes ρ, player 2 minimizes it.
/// The payoff lives on Ω = Ω1 × Ω2 with cl(Xi) ⊂ Ωi.
template <Scalar T>
struct GameSpec {
  T x1_lo, x1_hi, x2_lo, x2_hi;
  PiecewiseFn2D<T> payoff;

  GameSpec(T a, T b, T c, T d, PiecewiseFn2D<T> rho)
      : x1_lo(std::move(a)), x1_hi(std::move(b)), x2_lo(std::move(c)), x2_hi(std::move(d)), payoff(std::move(rho)) {
    const auto& om = payoff.domain();
    if (!(x1_lo < x1_hi) || !(x2_lo < x2_hi)) throw std::invalid_argument("GameSpec: empty strategy interval");
    if (!(om.x_lo < x1_lo && x1_hi < om.x_hi && om.y_lo < x2_lo && x2_hi < om.y_hi))
      throw std::invalid_argument("GameSpec: closure of X1 x X2 must lie inside the payoff domain");
  }

  Rect<T> strategies() const { return {x1_lo, x1_hi, x2_lo, x2_hi}; }
  const Rect<T>& omega() const { return payoff.domain(); }

  GameSpec transposed() const { return GameSpec(x2_lo, x2_hi, x1_lo, x1_hi, payoff.transpose()); }
  GameSpec with_payoff(PiecewiseFn2D<T> rho) const { return GameSpec(x1_lo, x1_hi, x2_lo, x2_hi, std::move(rho)); }
};

/// The eight iterated one-sided limits at (x1*, x2*). In a_±^{r,l} the sign
/// is the side of x2* and r/l the side of x1*; in b_±^{r,l} the sign is the
/// side of x1* and r/l the side of x2*.
template <Scalar T>
struct CornerLimits {
  Point<T> point;
  T a_r_plus, a_r_minus, a_l_plus, a_l_minus;
  T b_r_plus, b_r_minus, b_l_plus, b_l_minus;
  bool a1 = false, a2 = false, b1 = false, b2 = false;  // dominance over the slices
};

struct Check {
  std::string name;
  bool ok;
};

template <Scalar T>
struct ConditionReport {
  std::vector<Check> checks;
  T A{0};
  bool pass = false;

  std::vector<std::string> failures() const {
    std::vector<std::string> out;
    for (const auto& c : checks)
      if (!c.ok) out.push_back(c.name);
    return out;
  }
};

namespace detail {

/// c >= f on (a, b) when upper, c <= f otherwise; exact per piece.
template <Scalar T>
bool bounded_by(const PiecewiseFn1D<T>& f, const T& c, const T& a, const T& b, bool upper) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    const T lo = std::max(a, f.piece_lo(i)), hi = std::min(b, f.piece_hi(i));
    if (!(lo < hi)) continue;
    const Polynomial<T> cp = Polynomial<T>::constant(c);
    const Polynomial<T> diff = upper ? cp - f.pieces()[i] : f.pieces()[i] - cp;
    if (!nonneg_on(diff, lo, hi)) return false;
  }
  return true;
}

}  // namespace detail

template <Scalar T>
CornerLimits<T> corner_limits(const GameSpec<T>& g, const T& x1s, const T& x2s) {
  if (!(g.x1_lo < x1s && x1s < g.x1_hi && g.x2_lo < x2s && x2s < g.x2_hi))
    throw std::out_of_range("corner_limits: point must be interior to X1 x X2");
  CornerLimits<T> cl;
  cl.point = {x1s, x2s};
  const auto sp = g.payoff.slice_limits(2, x2s, +1), sm = g.payoff.slice_limits(2, x2s, -1);
  const auto tp = g.payoff.slice_limits(1, x1s, +1), tm = g.payoff.slice_limits(1, x1s, -1);
  cl.a_r_plus = sp.limit_right(x1s);
  cl.a_l_plus = sp.limit_left(x1s);
  cl.a_r_minus = sm.limit_right(x1s);
  cl.a_l_minus = sm.limit_left(x1s);
  cl.b_r_plus = tp.limit_right(x2s);
  cl.b_l_plus = tp.limit_left(x2s);
  cl.b_r_minus = tm.limit_right(x2s);
  cl.b_l_minus = tm.limit_left(x2s);
  using detail::bounded_by;
  cl.a1 = bounded_by(sp, cl.a_r_plus, x1s, g.x1_hi, true) && bounded_by(sm, cl.a_r_minus, x1s, g.x1_hi, true);
  cl.a2 = bounded_by(sp, cl.a_l_plus, g.x1_lo, x1s, true) && bounded_by(sm, cl.a_l_minus, g.x1_lo, x1s, true);
  cl.b1 = bounded_by(tp, cl.b_r_plus, x2s, g.x2_hi, false) && bounded_by(tm, cl.b_r_minus, x2s, g.x2_hi, false);
  cl.b2 = bounded_by(tp, cl.b_l_plus, g.x2_lo, x2s, false) && bounded_by(tm, cl.b_l_minus, g.x2_lo, x2s, false);
  return cl;
}

template <Scalar T>
ConditionReport<T> check_conditions(const CornerLimits<T>& c) {
  ConditionReport<T> r;
  auto ge = [](const T& a, const T& b) { return scalar_sign(a - b) >= 0; };
  r.checks = {
      {"a1", c.a1},
      {"a2", c.a2},
      {"b1", c.b1},
      {"b2", c.b2},
      {"b+r = a+r", scalar_eq(c.b_r_plus, c.a_r_plus)},
      {"b-l = a-l", scalar_eq(c.b_l_minus, c.a_l_minus)},
      {"b-r = a+l", scalar_eq(c.b_r_minus, c.a_l_plus)},
      {"b+l = a-r", scalar_eq(c.b_l_plus, c.a_r_minus)},
      {"a+r >= a-r", ge(c.a_r_plus, c.a_r_minus)},
      {"a-l >= a+l", ge(c.a_l_minus, c.a_l_plus)},
      {"a-l >= a-r", ge(c.a_l_minus, c.a_r_minus)},
      {"a+r >= a+l", ge(c.a_r_plus, c.a_l_plus)},
  };
  r.A = c.a_r_plus - c.a_l_plus - c.a_r_minus + c.a_l_minus;
  r.checks.push_back({"A != 0", !scalar_is_zero(r.A)});
  r.pass = std::all_of(r.checks.begin(), r.checks.end(), [](const Check& ch) { return ch.ok; });
  return r;
}

template <Scalar T>
struct CandidateVerdict {
  Point<T> point;
  CornerLimits<T> limits;
  ConditionReport<T> report;
};

template <Scalar T>
struct RPrimeSolution {
  Point<T> point;
  T beta1, beta2, value, shift;
  CornerLimits<T> limits;  // of the shifted payoff
  ConditionReport<T> report;
  std::vector<Point<T>> other_passing;

  Distribution1D<T> atom1(const GameSpec<T>& g) const {
    return Distribution1D<T>::delta(g.omega().x_lo, g.omega().x_hi, point.x, beta1);
  }
  Distribution1D<T> atom2(const GameSpec<T>& g) const {
    return Distribution1D<T>::delta(g.omega().y_lo, g.omega().y_hi, point.y, beta2);
  }
};

template <Scalar T>
struct SolveResult {
  std::optional<RPrimeSolution<T>> solution;
  std::vector<CandidateVerdict<T>> verdicts;
  T shift{0};
};

/// Intersection vertices of the payoff's boundary lines inside the open
/// strategy rectangle, in lexicographic order.
template <Scalar T>
std::vector<Point<T>> default_candidates(const GameSpec<T>& g) {
  const auto lines = g.payoff.boundary_lines();
  std::vector<Point<T>> out;
  const Rect<T> s = g.strategies();
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const auto& u = lines[i];
      const auto& v = lines[j];
      const T det = u.a * v.b - u.b * v.a;
      if (det == T(0)) continue;
      const Point<T> p{(u.c * v.b - u.b * v.c) / det, (u.a * v.c - u.c * v.a) / det};
      if (s.contains_open(p)) out.push_back(p);
    }
  return out;
}

/// Shift C = max(0, −min ρ) making the payoff nonnegative on Ω.
template <Scalar T>
T nonneg_shift(const GameSpec<T>& g) {
  const T m = min_over(g.payoff, g.omega());
  return m < T(0) ? -m : T(0);
}

template <Scalar T>
SolveResult<T> solve_rprime(const GameSpec<T>& g, const std::vector<Point<T>>& extra_candidates = {}) {
  SolveResult<T> res;
  res.shift = nonneg_shift(g);
  const GameSpec<T> shifted = g.with_payoff(g.payoff + res.shift);
  std::vector<Point<T>> cands = default_candidates(g);
  for (const auto& p : extra_candidates)
    if (g.strategies().contains_open(p)) cands.push_back(p);
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  for (const auto& p : cands) {
    CandidateVerdict<T> v{p, corner_limits(shifted, p.x, p.y), {}};
    v.report = check_conditions(v.limits);
    if (v.report.pass) {
      if (!res.solution) {
        const auto& c = v.limits;
        const T A = v.report.A;
        RPrimeSolution<T> sol{p,
                              (c.a_l_minus - c.a_l_plus) / A,
                              (c.a_l_minus - c.a_r_minus) / A,
                              (c.a_r_plus * c.a_l_minus - c.a_r_minus * c.a_l_plus) / A - res.shift,
                              res.shift,
                              c,
                              v.report,
                              {}};
        res.solution = std::move(sol);
      } else {
        res.solution->other_passing.push_back(p);
      }
    }
    res.verdicts.push_back(std::move(v));
  }
  return res;
}

// --- R'-payoff ---------------------------------------------------------------

template <Scalar T>
struct PayoffResult {
  bool defined = false;
  T value{0};
  T order1{0};  // ∫ (∫ ρ v2 dx2) v1 dx1
  T order2{0};  // ∫ (∫ ρ v1 dx1) v2 dx2
};

namespace detail {

template <Scalar T>
bool approx_equal(const T& a, const T& b) {
  if constexpr (ScalarTraits<T>::exact) {
    return a == b;
  } else {
    return std::abs(a - b) <= kFloatTolerance * std::max(1.0, std::max(std::abs(a), std::abs(b)));
  }
}

/// x1 ↦ ∫_{X2} ρ(x1, x2) v2(dx2) as a regulated function on Ω1.
template <Scalar T>
PiecewiseFn1D<T> inner_integral(const PiecewiseFn2D<T>& rho, const Distribution1D<T>& v2, const T& lo, const T& hi) {
  const Rect<T>& om = rho.domain();
  const auto lifted = PiecewiseFn2D<T>::from_axis(v2.regular(), 2, om);
  const PiecewiseFn2D<T>* fs[] = {&rho, &lifted};
  PiecewiseFn1D<T> F = integrate_out_y<T>(FactorList<T>(fs), Rect<T>{om.x_lo, om.x_hi, lo, hi});
  for (const auto& [q, a] : v2.atoms()) {
    if (lo <= q && q < hi && !scalar_is_zero(a.plus)) F = F + rho.slice_limits(2, q, +1) * a.plus;
    if (lo < q && q <= hi && !scalar_is_zero(a.minus)) F = F + rho.slice_limits(2, q, -1) * a.minus;
  }
  return F;
}

template <Scalar T>
T outer_integral(const PiecewiseFn1D<T>& F, const Distribution1D<T>& v1, const T& lo, const T& hi) {
  return v1.pair(F * PiecewiseFn1D<T>::indicator(F.lo(), F.hi(), lo, hi));
}

template <Scalar T>
void require_probability(const Distribution1D<T>& v, const T& lo, const T& hi, const char* who) {
  if (!v.is_nonneg()) throw std::invalid_argument(std::string(who) + " is not nonnegative");
  if (!approx_equal(v.integrate(lo, hi), T(1)))
    throw std::invalid_argument(std::string(who) + " does not integrate to 1 over its strategy interval");
}

}  // namespace detail

/// ρ(v1, v2) for R'-mixed strategies: both iterated integrals are formed and
/// the value is defined only when they agree.
template <Scalar T>
PayoffResult<T> payoff_rprime(const GameSpec<T>& g, const Distribution1D<T>& v1, const Distribution1D<T>& v2) {
  const auto& om = g.omega();
  if (!(v1.lo() == om.x_lo && v1.hi() == om.x_hi) || !(v2.lo() == om.y_lo && v2.hi() == om.y_hi))
    throw std::invalid_argument("payoff_rprime: strategy domains must match the payoff domain");
  detail::require_probability(v1, g.x1_lo, g.x1_hi, "v1");
  detail::require_probability(v2, g.x2_lo, g.x2_hi, "v2");
  PayoffResult<T> r;
  r.order1 = detail::outer_integral(detail::inner_integral(g.payoff, v2, g.x2_lo, g.x2_hi), v1, g.x1_lo, g.x1_hi);
  r.order2 =
      detail::outer_integral(detail::inner_integral(g.payoff.transpose(), v1, g.x1_lo, g.x1_hi), v2, g.x2_lo, g.x2_hi);
  r.defined = detail::approx_equal(r.order1, r.order2);
  r.value = r.order1;
  return r;
}

// --- random strategies ---------------------------------------------------------

/// Random piecewise-constant probability density on (a, b), zero elsewhere
/// in (lo, hi). Breakpoints are multiples of (b − a)/1000.
template <Scalar T>
Distribution1D<T> random_density(const T& lo, const T& hi, const T& a, const T& b, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> npieces(1, 5), tick(1, 999), height(0, 9);
  const int m = npieces(rng);
  std::vector<int> ticks;
  for (int i = 0; i + 1 < m; ++i) ticks.push_back(tick(rng));
  std::sort(ticks.begin(), ticks.end());
  ticks.erase(std::unique(ticks.begin(), ticks.end()), ticks.end());
  std::vector<T> br{a};
  for (int t : ticks) br.push_back(a + (b - a) * T(t) / T(1000));
  br.push_back(b);
  std::vector<T> h;
  for (std::size_t i = 0; i + 1 < br.size(); ++i) h.push_back(T(height(rng)));
  if (std::all_of(h.begin(), h.end(), [](const T& v) { return v == T(0); })) h[0] = T(1);
  T mass(0);
  for (std::size_t i = 0; i < h.size(); ++i) mass += h[i] * (br[i + 1] - br[i]);
  std::vector<Polynomial<T>> pieces{Polynomial<T>{}};
  for (const T& v : h) pieces.push_back(Polynomial<T>::constant(v / mass));
  pieces.push_back(Polynomial<T>{});
  return Distribution1D<T>(PiecewiseFn1D<T>(lo, hi, br, std::move(pieces)));
}

/// Uniform probability density on (a, b).
template <Scalar T>
Distribution1D<T> uniform_density(const T& lo, const T& hi, const T& a, const T& b) {
  return Distribution1D<T>(PiecewiseFn1D<T>::indicator(lo, hi, a, b) * (T(1) / (b - a)));
}

/// Single directional atom at a random point of (a, b) with β in {0, 1/100, ..., 1}.
template <Scalar T>
Distribution1D<T> random_atom(const T& lo, const T& hi, const T& a, const T& b, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> tick(1, 999), pct(0, 100);
  const T q = a + (b - a) * T(tick(rng)) / T(1000);
  return Distribution1D<T>::delta(lo, hi, q, T(pct(rng)) / T(100));
}

inline std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(seed ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
}

// --- saddle verification ---------------------------------------------------------

struct SaddleReport {
  int samples = 0;
  double min_margin1 = 0.0;  // min over v2 of ρ(v1*, v2) − value
  double min_margin2 = 0.0;  // min over v1 of value − ρ(v1, v2*)
  int undefined = 0;         // opponents with order-dependent payoffs
  bool passed = false;
};

template <Scalar T>
SaddleReport saddle_verify(const GameSpec<T>& g, const RPrimeSolution<T>& sol, int n_samples, std::uint64_t seed,
                           double tol = 1e-9) {
  const auto a1 = sol.atom1(g), a2 = sol.atom2(g);
  const auto& om = g.omega();
  struct Sample {
    double m1, m2;
    int undefined;
  };
  const auto results = parallel_map(static_cast<std::size_t>(n_samples), [&](std::size_t i) {
    auto rng = sample_rng(seed, i);
    const bool density = i % 2 == 0;
    const auto v2 = density ? random_density(om.y_lo, om.y_hi, g.x2_lo, g.x2_hi, rng)
                            : random_atom(om.y_lo, om.y_hi, g.x2_lo, g.x2_hi, rng);
    const auto v1 = density ? random_density(om.x_lo, om.x_hi, g.x1_lo, g.x1_hi, rng)
                            : random_atom(om.x_lo, om.x_hi, g.x1_lo, g.x1_hi, rng);
    const auto p1 = payoff_rprime(g, a1, v2);
    const auto p2 = payoff_rprime(g, v1, a2);
    return Sample{to_double(p1.value - sol.value), to_double(sol.value - p2.value),
                  static_cast<int>(!p1.defined) + static_cast<int>(!p2.defined)};
  });
  SaddleReport rep;
  rep.samples = n_samples;
  bool first = true;
  for (const auto& s : results) {
    rep.min_margin1 = first ? s.m1 : std::min(rep.min_margin1, s.m1);
    rep.min_margin2 = first ? s.m2 : std::min(rep.min_margin2, s.m2);
    rep.undefined += s.undefined;
    first = false;
  }
  rep.passed = rep.undefined == 0 && rep.min_margin1 >= -tol && rep.min_margin2 >= -tol;
  return rep;
}

// --- grid analyzers --------------------------------------------------------------

/// Grid coordinate with a side: 0 for a plain point, ±1 for the one-sided
/// copies of a coordinate lying on a discontinuity line.
template <Scalar T>
struct GridPoint {
  T x;
  int side = 0;
};

template <Scalar T>
struct PayoffGrid {
  std::vector<GridPoint<T>> x1, x2;
  std::vector<std::vector<T>> m;  // m[i][j] = ρ(x1_i, x2_j)
};

namespace detail {

template <Scalar T>
std::vector<GridPoint<T>> grid_axis(const T& lo, const T& hi, int n, const std::vector<T>& jumps) {
  std::vector<GridPoint<T>> out;
  for (int i = 0; i < n; ++i) {
    const T x = lo + (hi - lo) * T(2 * i + 1) / T(2 * n);
    if (std::find(jumps.begin(), jumps.end(), x) != jumps.end()) {
      out.push_back({x, -1});
      out.push_back({x, +1});
    } else {
      out.push_back({x, 0});
    }
  }
  return out;
}

}  // namespace detail

/// Payoff on the cell-center grid of X1 x X2. A center lying on a vertical
/// (horizontal) discontinuity line is replaced by its two one-sided limits,
/// since pure strategies exclude T(ρ).
template <Scalar T>
PayoffGrid<T> payoff_grid(const GameSpec<T>& g, int n) {
  if (n < 2) throw std::invalid_argument("grid_n must be at least 2");
  std::vector<T> vx, hy;
  for (const auto& l : g.payoff.boundary_lines()) {
    if (l.b == T(0)) vx.push_back(l.c / l.a);
    if (l.a == T(0)) hy.push_back(l.c / l.b);
  }
  PayoffGrid<T> grid;
  grid.x1 = detail::grid_axis(g.x1_lo, g.x1_hi, n, vx);
  grid.x2 = detail::grid_axis(g.x2_lo, g.x2_hi, n, hy);
  grid.m.assign(grid.x1.size(), std::vector<T>(grid.x2.size()));
  for (std::size_t i = 0; i < grid.x1.size(); ++i)
    for (std::size_t j = 0; j < grid.x2.size(); ++j) {
      const Point<T> p{grid.x1[i].x, grid.x2[j].x};
      const int s1 = grid.x1[i].side, s2 = grid.x2[j].side;
      grid.m[i][j] = (s1 == 0 && s2 == 0) ? g.payoff.eval(p) : g.payoff.eval_limit(p, {T(s1), T(s2)});
    }
  return grid;
}

template <Scalar T>
struct PureAnalysis {
  T supinf, infsup, gap;
};

template <Scalar T>
PureAnalysis<T> pure_analysis(const GameSpec<T>& g, int grid_n) {
  const auto grid = payoff_grid(g, grid_n);
  T supinf = grid.m[0][0], infsup = grid.m[0][0];
  for (std::size_t i = 0; i < grid.m.size(); ++i) {
    const T row_min = *std::min_element(grid.m[i].begin(), grid.m[i].end());
    if (i == 0 || row_min > supinf) supinf = row_min;
  }
  for (std::size_t j = 0; j < grid.m[0].size(); ++j) {
    T col_max = grid.m[0][j];
    for (std::size_t i = 1; i < grid.m.size(); ++i) col_max = std::max(col_max, grid.m[i][j]);
    if (j == 0 || col_max < infsup) infsup = col_max;
  }
  return {supinf, infsup, infsup - supinf};
}

// --- mixed analysis -----------------------------------------------------------------

struct MatrixGameResult {
  double value = 0.0, lower = 0.0, upper = 0.0;
  long iterations = 0;
  bool converged = false;
  std::vector<double> x, y;  // empirical mixed strategies
};

/// Simultaneous fictitious play: both players best-respond to the opponent's
/// empirical mixture until the duality gap is at most eps.
inline MatrixGameResult fictitious_play(const std::vector<std::vector<double>>& m, double eps, long max_iters) {
  const std::size_t rows = m.size(), cols = m.at(0).size();
  std::vector<double> row_pay(rows, 0.0), col_pay(cols, 0.0);
  std::vector<long> xc(rows, 0), yc(cols, 0);
  MatrixGameResult r;
  for (long t = 1; t <= max_iters; ++t) {
    const std::size_t i = static_cast<std::size_t>(std::max_element(row_pay.begin(), row_pay.end()) - row_pay.begin());
    const std::size_t j = static_cast<std::size_t>(std::min_element(col_pay.begin(), col_pay.end()) - col_pay.begin());
    ++xc[i];
    ++yc[j];
    for (std::size_t a = 0; a < rows; ++a) row_pay[a] += m[a][j];
    for (std::size_t b = 0; b < cols; ++b) col_pay[b] += m[i][b];
    r.upper = *std::max_element(row_pay.begin(), row_pay.end()) / static_cast<double>(t);
    r.lower = *std::min_element(col_pay.begin(), col_pay.end()) / static_cast<double>(t);
    r.iterations = t;
    if (r.upper - r.lower <= eps) {
      r.converged = true;
      break;
    }
  }
  r.value = r.lower == r.upper ? r.lower : 0.5 * (r.lower + r.upper);
  for (long c : xc) r.x.push_back(static_cast<double>(c) / static_cast<double>(r.iterations));
  for (long c : yc) r.y.push_back(static_cast<double>(c) / static_cast<double>(r.iterations));
  return r;
}

template <Scalar T>
struct WitnessSample {
  std::string kind;  // "uniform" or "random"
  T bound;           // payoff achieved by the witness against this sample
  T window_lo, window_hi;
};

template <Scalar T>
struct WitnessBounds {
  double eps = 0.0;
  T supinf_upper{0};  // max over sampled u1 of inf achieved by a witness u2
  T infsup_lower{0};  // min over sampled u2 of sup achieved by a witness u1
  std::vector<WitnessSample<T>> player2_witnesses, player1_witnesses;
};

template <Scalar T>
struct MixedAnalysis {
  MatrixGameResult matrix;
  PayoffGrid<T> grid;
  WitnessBounds<T> witness;
};

namespace detail {

/// Extremum of f over cl(a, b) with one-sided location: side +1 means the
/// value is approached from the right of `at`, −1 from the left, 0 at an
/// interior point of a piece.
template <Scalar T>
struct Extremum {
  T value, at, cell_lo, cell_hi;
  int side;
};

template <Scalar T>
Extremum<T> extremum(const PiecewiseFn1D<T>& f, const T& a, const T& b, bool want_max) {
  std::optional<Extremum<T>> best;
  auto consider = [&](const T& v, const T& at, const T& lo, const T& hi, int side) {
    // Ties go to the later candidate.
    if (!best || (want_max ? !(v < best->value) : !(best->value < v))) best = Extremum<T>{v, at, lo, hi, side};
  };
  for (std::size_t i = 0; i < f.size(); ++i) {
    const T lo = std::max(a, f.piece_lo(i)), hi = std::min(b, f.piece_hi(i));
    if (!(lo < hi)) continue;
    const auto& p = f.pieces()[i];
    consider(p(lo), lo, lo, hi, +1);
    if (p.degree() >= 2)
      for (const T& z : real_roots_in(p.derivative(), lo, hi))
        if (lo < z && z < hi) consider(p(z), z, lo, hi, 0);
    consider(p(hi), hi, lo, hi, -1);
  }
  return *best;
}

/// Uniform density on a window next to the extremum, halved until its mean
/// is within eps/2 of the extremum value.
template <Scalar T>
WitnessSample<T> window_witness(const PiecewiseFn1D<T>& f, const T& a, const T& b, bool want_max, double eps) {
  const auto e = extremum(f, a, b, want_max);
  T w = e.cell_hi - e.cell_lo;
  const T target_gap = from_double<T>(eps / 2);
  for (int it = 0; it < 200; ++it) {
    T lo, hi;
    if (e.side > 0) {
      lo = e.at, hi = e.at + w;
    } else if (e.side < 0) {
      lo = e.at - w, hi = e.at;
    } else {
      lo = std::max(e.cell_lo, e.at - w / T(2)), hi = std::min(e.cell_hi, e.at + w / T(2));
    }
    const T mean = f.integral(lo, hi) / (hi - lo);
    const T gap = want_max ? e.value - mean : mean - e.value;
    if (!(gap > target_gap) || it == 199) return {"", mean, lo, hi};
    w = w / T(2);
  }
  return {};
}

}  // namespace detail

/// Grid matrix game by fictitious play, and ε-witness bounds for the
/// continuum mixed game against sampled opponents (the uniform density first,
/// then seeded random piecewise-constant densities).
template <Scalar T>
MixedAnalysis<T> mixed_analysis(const GameSpec<T>& g, int grid_n, double eps, long max_iters, std::uint64_t seed,
                                int samples = 32) {
  if (!(eps > 0)) throw std::invalid_argument("mixed_analysis: eps must be positive");
  MixedAnalysis<T> out;
  out.grid = payoff_grid(g, grid_n);
  std::vector<std::vector<double>> md(out.grid.m.size());
  for (std::size_t i = 0; i < md.size(); ++i)
    for (const T& v : out.grid.m[i]) md[i].push_back(to_double(v));
  out.matrix = fictitious_play(md, eps, max_iters);

  const auto& om = g.omega();
  const auto rho_t = g.payoff.transpose();
  out.witness.eps = eps;
  const auto w2 = parallel_map(static_cast<std::size_t>(samples), [&](std::size_t i) {
    auto rng = sample_rng(seed, 2 * i);
    const auto u1 = i == 0 ? uniform_density(om.x_lo, om.x_hi, g.x1_lo, g.x1_hi)
                           : random_density(om.x_lo, om.x_hi, g.x1_lo, g.x1_hi, rng);
    // σ(x2) = ∫ ρ(x1, x2) u1(x1) dx1
    const auto sigma = detail::inner_integral(rho_t, u1, g.x1_lo, g.x1_hi);
    auto w = detail::window_witness(sigma, g.x2_lo, g.x2_hi, false, eps);
    w.kind = i == 0 ? "uniform" : "random";
    return w;
  });
  const auto w1 = parallel_map(static_cast<std::size_t>(samples), [&](std::size_t i) {
    auto rng = sample_rng(seed, 2 * i + 1);
    const auto u2 = i == 0 ? uniform_density(om.y_lo, om.y_hi, g.x2_lo, g.x2_hi)
                           : random_density(om.y_lo, om.y_hi, g.x2_lo, g.x2_hi, rng);
    // τ(x1) = ∫ ρ(x1, x2) u2(x2) dx2
    const auto tau = detail::inner_integral(g.payoff, u2, g.x2_lo, g.x2_hi);
    auto w = detail::window_witness(tau, g.x1_lo, g.x1_hi, true, eps);
    w.kind = i == 0 ? "uniform" : "random";
    return w;
  });
  out.witness.player2_witnesses = w2;
  out.witness.player1_witnesses = w1;
  for (std::size_t i = 0; i < w2.size(); ++i)
    if (i == 0 || w2[i].bound > out.witness.supinf_upper) out.witness.supinf_upper = w2[i].bound;
  for (std::size_t i = 0; i < w1.size(); ++i)
    if (i == 0 || w1[i].bound < out.witness.infsup_lower) out.witness.infsup_lower = w1[i].bound;
  return out;
}

}  // namespace regudist
