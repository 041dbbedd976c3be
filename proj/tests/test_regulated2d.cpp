#include "support.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace regudist;
using namespace regudist::testing;

template <class T>
class Regulated2D : public ::testing::Test {};
using Scalars = ::testing::Types<Rational, double>;
TYPED_TEST_SUITE(Regulated2D, Scalars);

namespace {

constexpr double kPi = std::numbers::pi;

template <Scalar T>
PiecewiseFn2D<T> quadrant(int sx, int sy) {
  return PiecewiseFn2D<T>::indicator(omega_box<T>(), RegionSet<T>::of(region<T>({{{-sx, 0, 0}}, {{0, -sy, 0}}})));
}

// Samples g at p + t(cos s, sin s) for 360 directions, skipping directions
// within a degree of the listed boundary angles.
template <Scalar T>
void expect_matches_probes(const PiecewiseFn2D<T>& g, const AngularFn& sv, std::vector<double> skip) {
  for (int i = 0; i < 360; ++i) {
    const double s = (i + 0.5) * kPi / 180;
    bool near = false;
    for (double b : skip) near |= std::abs(std::remainder(s - b, 2 * kPi)) < kPi / 180;
    if (near) continue;
    const double t = 1e-6;
    const auto gd = g.template cast<double>();
    EXPECT_DOUBLE_EQ(sv(s), gd.eval({t * std::cos(s), t * std::sin(s)})) << "direction " << s;
  }
}

}  // namespace

TYPED_TEST(Regulated2D, EvaluationInsideRegions) {
  using T = TypeParam;
  const auto q = quadrant<T>(1, 1);
  EXPECT_EQ(q.eval({num<T>(1, 2), num<T>(1, 2)}), T(1));
  EXPECT_EQ(q.eval({num<T>(-1, 2), num<T>(1, 2)}), T(0));
  const auto rho = example_payoff<T>();
  EXPECT_EQ(rho.eval({num<T>(1, 4), num<T>(1, 4)}), T(1));
  EXPECT_EQ(rho.eval({num<T>(-1, 4), num<T>(-1, 4)}), T(1));
  EXPECT_EQ(rho.eval({num<T>(3, 4), num<T>(3, 4)}), T(0));
  EXPECT_THROW(rho.eval({num<T>(2), T(0)}), std::out_of_range);
}

TYPED_TEST(Regulated2D, SurroundingValueOfQuadrant) {
  using T = TypeParam;
  const auto sv = quadrant<T>(1, 1).surrounding_value({T(0), T(0)});
  EXPECT_TRUE(sv.approx_equal(AngularFn::from_arcs({{0.0, kPi / 2, 1.0}})));
  expect_matches_probes(quadrant<T>(1, 1), sv, {0, kPi / 2});
}

TYPED_TEST(Regulated2D, SurroundingValueOfContinuousFunction) {
  using T = TypeParam;
  BiPoly<T> p = BiPoly<T>::constant(num<T>(2));
  p.add_term(num<T>(3), 1, 1);
  const auto g = PiecewiseFn2D<T>::polynomial(omega_box<T>(), p);
  const auto sv = g.surrounding_value({num<T>(1, 2), num<T>(-1)});
  EXPECT_TRUE(sv.is_constant());
  EXPECT_NEAR(sv(1.0), 2.0 - 1.5, 1e-15);
}

TYPED_TEST(Regulated2D, SurroundingValueOfTwoCones) {
  using T = TypeParam;
  const auto g = quadrant<T>(1, 1) + quadrant<T>(-1, -1);
  const auto sv = g.surrounding_value({T(0), T(0)});
  EXPECT_TRUE(sv.approx_equal(AngularFn::from_arcs({{0.0, kPi / 2, 1.0}, {kPi, 3 * kPi / 2, 1.0}})));
  expect_matches_probes(g, sv, {0, kPi / 2, kPi, 3 * kPi / 2});
  const auto rho = example_payoff<T>();
  const auto sr = rho.surrounding_value({T(0), T(0)});
  EXPECT_TRUE(sr.approx_equal(sv));
}

TYPED_TEST(Regulated2D, SliceLimitsOfExample) {
  using T = TypeParam;
  const auto rho = example_payoff<T>();
  const auto plus = rho.slice_limits(2, T(0), +1);
  const auto minus = rho.slice_limits(2, T(0), -1);
  for (int i = -19; i < 20; ++i) {
    const T x = num<T>(i, 20);
    EXPECT_EQ(plus.limit_right(x), (T(0) <= x && x < T(1)) ? T(1) : T(0)) << i;
    EXPECT_EQ(minus.limit_right(x), (T(-1) <= x && x < T(0)) ? T(1) : T(0)) << i;
    EXPECT_EQ(minus.limit_left(x), (T(-1) < x && x <= T(0)) ? T(1) : T(0)) << i;
  }
  // axis 1 with the roles swapped, by symmetry of the payoff
  EXPECT_EQ(rho.slice_limits(1, T(0), +1), plus);
  BiPoly<T> p;
  p.add_term(T(1), 1, 0);
  p.add_term(T(1), 0, 2);
  const auto g = PiecewiseFn2D<T>::polynomial(omega_box<T>(), p);
  const auto s = g.slice_limits(2, num<T>(1, 2), -1);
  EXPECT_EQ(s.limit_right(T(1)), num<T>(5, 4));
  EXPECT_EQ(s.limit_right(T(0)), num<T>(1, 4));
}

TYPED_TEST(Regulated2D, OneSidedDirectionalLimits) {
  using T = TypeParam;
  const auto rho = example_payoff<T>();
  EXPECT_EQ(rho.eval_limit({T(0), T(0)}, {T(1), T(1)}), T(1));
  EXPECT_EQ(rho.eval_limit({T(0), T(0)}, {T(1), T(-1)}), T(0));
  EXPECT_EQ(rho.eval_limit({num<T>(1, 2), T(0)}, {T(0), T(1)}), T(1));
  EXPECT_EQ(rho.eval_limit({num<T>(1, 2), T(0)}, {T(0), T(-1)}), T(0));
}

TYPED_TEST(Regulated2D, ExactIntegrationAgainstMidpointOracle) {
  using T = TypeParam;
  const auto rho = example_payoff<T>();
  EXPECT_EQ(integrate_box(rho, omega_box<T>()), T(1));
  BiPoly<T> p;
  p.add_term(T(1), 1, 1);
  p.add_term(T(2), 0, 2);
  const auto g = PiecewiseFn2D<T>::polynomial(omega_box<T>(), p) * quadrant<T>(1, -1);
  const Rect<T> box{num<T>(-1), T(1), T(-1), T(1)};
  const auto gd = g.template cast<double>();
  double oracle = 0;
  const int n = 800;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      oracle += gd.eval({-1 + (i + 0.5) * 2.0 / n, -1 + (j + 0.5) * 2.0 / n});
  oracle *= 4.0 / (n * n);
  // ∫_0^1∫_{-1}^0 (xy + 2y²) dy dx = -1/4 + 2/3
  EXPECT_NEAR(to_double(integrate_box(g, box) - num<T>(5, 12)), 0.0, 1e-12);
  if constexpr (ScalarTraits<T>::exact) EXPECT_EQ(integrate_box(g, box), num<T>(5, 12));
  EXPECT_NEAR(to_double(integrate_box(g, box)), oracle, 1e-5);
}

TYPED_TEST(Regulated2D, IntegrateOutYGivesMarginal) {
  using T = TypeParam;
  const auto rho = example_payoff<T>();
  const PiecewiseFn2D<T>* fs[] = {&rho};
  const auto marginal = integrate_out_y<T>(fs, Rect<T>{T(-1), T(1), T(-1), T(1)});
  EXPECT_EQ(marginal.limit_right(num<T>(1, 4)), num<T>(3, 4));
  EXPECT_EQ(marginal.limit_right(num<T>(-1, 4)), num<T>(3, 4));
  EXPECT_EQ(marginal.integral(), T(1));
}

TYPED_TEST(Regulated2D, ProductsAndSums) {
  using T = TypeParam;
  const auto a = quadrant<T>(1, 1), b = quadrant<T>(-1, 1);
  EXPECT_EQ(integrate_box(a * b, omega_box<T>()), T(0));
  EXPECT_EQ(integrate_box(a + b, omega_box<T>()), T(8));
  EXPECT_EQ(integrate_box(a * num<T>(3) + num<T>(1), omega_box<T>()), T(28));
  const auto tr = example_payoff<T>().transpose();
  EXPECT_EQ(tr.eval({num<T>(1, 4), num<T>(1, 8)}), T(1));
}

TYPED_TEST(Regulated2D, MinimumOverBox) {
  using T = TypeParam;
  BiPoly<T> p;
  p.add_term(T(1), 2, 0);
  p.add_term(T(-1), 1, 0);
  const auto g = PiecewiseFn2D<T>::polynomial(omega_box<T>(), p);
  EXPECT_EQ(min_over(g, omega_box<T>()), num<T>(-1, 4));
  EXPECT_FALSE(nonneg(g));
  EXPECT_TRUE(nonneg(example_payoff<T>()));
  EXPECT_TRUE(has_compact_support(example_payoff<T>()));
  EXPECT_FALSE(has_compact_support(g));
}

TEST(Regulated2DRandom, SurroundingValueAgreesWithProbes) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 30; ++t) {
    // random union of two half-plane pairs through the origin
    RegionSet<Rational> set;
    std::vector<double> bounds;
    for (int k = 0; k < 2; ++k) {
      Region<Rational> r;
      for (int h = 0; h < 2; ++h) {
        const Rational a = random_rational<Rational>(rng, -3, 3, 1), b = random_rational<Rational>(rng, -3, 3, 1);
        if (a == 0 && b == 0) continue;
        r.halfplanes.emplace_back(a, b, Rational(0));
        const double ang = std::atan2(-to_double(a), to_double(b));
        bounds.push_back(ang);
        bounds.push_back(ang + kPi);
      }
      set.terms.push_back({r, k == 0});
    }
    const auto g = PiecewiseFn2D<Rational>::indicator(omega_box<Rational>(), set);
    expect_matches_probes(g, g.surrounding_value({Rational(0), Rational(0)}), bounds);
  }
}
