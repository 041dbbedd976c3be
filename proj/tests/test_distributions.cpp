#include "support.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace regudist;
using namespace regudist::testing;

template <class T>
class Distributions : public ::testing::Test {};
using Scalars = ::testing::Types<Rational, double>;
TYPED_TEST_SUITE(Distributions, Scalars);

namespace {

constexpr double kPi = std::numbers::pi;

template <Scalar T>
PiecewiseFn1D<T> theta(long lo, long hi, const T& at) {
  return PiecewiseFn1D<T>::heaviside(num<T>(lo), num<T>(hi), at);
}

template <Scalar T>
PiecewiseFn1D<T> bump(long lo, long hi, const T& a, const T& b, Polynomial<T> p) {
  return PiecewiseFn1D<T>(num<T>(lo), num<T>(hi), {a, b}, {Polynomial<T>{}, std::move(p), Polynomial<T>{}});
}

}  // namespace

TYPED_TEST(Distributions, PairingExamples) {
  using T = TypeParam;
  const Distribution1D<T> one(PiecewiseFn1D<T>(num<T>(-2), num<T>(2), {T(0), T(1)},
                                                {Polynomial<T>{}, Polynomial<T>{T(1)}, Polynomial<T>{}}));
  const auto chi = bump<T>(-2, 2, T(0), T(1), Polynomial<T>{T(1)});
  EXPECT_EQ(one.pair(chi), T(1));

  const auto d = Distribution1D<T>::delta(num<T>(-1), num<T>(1), T(0), num<T>(1, 4));
  const auto th = bump<T>(-1, 1, T(0), num<T>(1, 2), Polynomial<T>{T(1)});
  EXPECT_EQ(d.pair(th), num<T>(1, 4));

  // continuous φ: value at p for every β
  const auto phi = bump<T>(-1, 1, num<T>(-1, 2), num<T>(1, 2),
                           Polynomial<T>{T(1), T(0), num<T>(-4)});  // 1 - 4x², zero at ±1/2
  for (long b = -3; b <= 5; ++b)
    EXPECT_EQ(Distribution1D<T>::delta(num<T>(-1), num<T>(1), num<T>(1, 8), num<T>(b, 2)).pair(phi),
              num<T>(15, 16));
}

TYPED_TEST(Distributions, PairingRequiresCompactSupport) {
  using T = TypeParam;
  const auto d = Distribution1D<T>::delta(num<T>(-1), num<T>(1), T(0), num<T>(1, 2));
  EXPECT_THROW(d.pair(theta<T>(-1, 1, T(0))), std::domain_error);
}

TYPED_TEST(Distributions, HeavisideProduct) {
  using T = TypeParam;
  for (long b = -2; b <= 4; ++b) {
    const T beta = num<T>(b, 3);
    const auto d = Distribution1D<T>::delta(num<T>(-1), num<T>(1), T(0), beta);
    const auto prod = d.multiply(theta<T>(-1, 1, T(0)));
    const auto expected = beta * Distribution1D<T>::delta_plus(num<T>(-1), num<T>(1), T(0));
    EXPECT_EQ(prod, expected) << b;
  }
  const auto d = Distribution1D<T>::delta(num<T>(-1), num<T>(1), T(0), num<T>(1, 3));
  EXPECT_EQ(d.multiply(PiecewiseFn1D<T>::constant(num<T>(-1), num<T>(1), T(1))), d);
}

TYPED_TEST(Distributions, IntervalIntegrals) {
  using T = TypeParam;
  const T beta = num<T>(2, 7), p = num<T>(1, 3);
  const auto d = Distribution1D<T>::delta(num<T>(-2), num<T>(2), p, beta);
  const T t0 = num<T>(-1);
  EXPECT_EQ(d.integrate(t0, num<T>(1)), T(1));
  EXPECT_EQ(d.integrate(t0, p), T(1) - beta);
  EXPECT_EQ(d.integrate(t0, num<T>(1, 4)), T(0));
  const Distribution1D<T> x(PiecewiseFn1D<T>::polynomial(num<T>(-1), num<T>(2), Polynomial<T>::identity()));
  EXPECT_EQ(x.integrate(T(0), T(1)), num<T>(1, 2));
}

TYPED_TEST(Distributions, LinearCombinations) {
  using T = TypeParam;
  const T lo = num<T>(-1), hi = num<T>(1);
  const auto plus = Distribution1D<T>::delta_plus(lo, hi, T(0));
  const auto minus = Distribution1D<T>::delta_minus(lo, hi, T(0));
  EXPECT_EQ(num<T>(1, 2) * plus + num<T>(1, 2) * minus, Distribution1D<T>::delta(lo, hi, T(0), num<T>(1, 2)));
  const auto f = Distribution1D<T>::delta(lo, hi, num<T>(1, 2), num<T>(3, 4), num<T>(2));
  const auto z = f + num<T>(-1) * f;
  EXPECT_EQ(z, Distribution1D<T>::zero(lo, hi));
  EXPECT_TRUE(z.atoms().empty());
  const auto two = Distribution1D<T>::delta(lo, hi, T(0), T(1)) + Distribution1D<T>::delta(lo, hi, num<T>(1, 2), T(0));
  EXPECT_EQ(two.atoms().size(), 2u);
}

TYPED_TEST(Distributions, Nonnegativity) {
  using T = TypeParam;
  EXPECT_TRUE(Distribution1D<T>::delta(num<T>(-1), num<T>(1), T(0), num<T>(1, 2)).is_nonneg());
  const auto bad = Distribution1D<T>::delta(num<T>(-1), num<T>(1), T(0), num<T>(3, 2));
  EXPECT_FALSE(bad.is_nonneg());
  // a witness: φ supported left of 0 with φ(0-) = 1
  const auto left = bump<T>(-1, 1, num<T>(-1, 2), T(0), Polynomial<T>{T(1), T(2)});
  EXPECT_LT(bad.pair(left), T(0));
  const Distribution1D<T> x(PiecewiseFn1D<T>::polynomial(num<T>(-1), num<T>(1), Polynomial<T>::identity()));
  EXPECT_FALSE(x.is_nonneg());
}

TYPED_TEST(Distributions, NonnegativityMatchesRandomProbes) {
  using T = TypeParam;
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const auto f = random_distribution1d<T>(rng, -2, 2);
    if (f.is_nonneg()) {
      for (int k = 0; k < 10; ++k) {
        auto phi = random_fn1d<T>(rng, -2, 2, true);
        phi = phi * phi;  // nonnegative compactly supported test function
        EXPECT_GE(to_double(f.pair(phi)), -1e-9);
      }
    }
  }
}

TYPED_TEST(Distributions, TwoDimensionalQuadrantProduct) {
  using T = TypeParam;
  const Rect<T> box = omega_box<T>();
  const auto d = Distribution2D<T>::delta(box, {T(0), T(0)}, AngularDensity<T>::uniform_2d());
  const auto g = example_payoff<T>();
  const auto prod = d.multiply(g);
  ASSERT_EQ(prod.atoms().size(), 1u);
  EXPECT_NEAR(prod.atoms()[0].weight(), 0.5, 1e-15);
  const auto gamma = AngularFn::from_arcs({{0.0, kPi / 2, 1 / kPi}, {kPi, 3 * kPi / 2, 1 / kPi}});
  EXPECT_TRUE(prod.atoms()[0].density().approx_equal(gamma));
  const auto expected = Distribution2D<T>::delta(box, {T(0), T(0)}, AngularDensity<T>::two_dim(gamma), 0.5);
  EXPECT_TRUE(prod.equals(expected));
  EXPECT_TRUE(d.multiply(PiecewiseFn2D<T>::constant(box, T(1))).equals(d));
}

TYPED_TEST(Distributions, SectorIntegrals) {
  using T = TypeParam;
  const Rect<T> box = omega_box<T>();
  const auto d = Distribution2D<T>::delta(box, {T(0), T(0)}, AngularDensity<T>::uniform_2d());
  EXPECT_NEAR(to_double(d.integrate(sector<T>({T(0), T(0)}, 0.0, kPi / 2, 1.0))), 0.25, 1e-12);
  const Distribution2D<T> x(PiecewiseFn2D<T>::indicator(box, RegionSet<T>::of(region<T>({{{-1, 0, 0}}, {{1, 0, 1}}}))));
  EXPECT_EQ(x.integrate(RegionSet<T>::of(region<T>({{{-1, 0, 0}}, {{1, 0, 1}}, {{0, -1, 0}}, {{0, 1, 1}}}))), T(1));
}

TYPED_TEST(Distributions, TwoDimensionalPairingContinuous) {
  using T = TypeParam;
  const Rect<T> box = omega_box<T>();
  const auto alpha = AngularDensity<T>::two_dim(AngularFn::from_arcs({{0.3, 1.3, 1.0}}));
  const auto d = Distribution2D<T>::delta(box, {num<T>(1, 2), num<T>(1, 4)}, alpha);
  BiPoly<T> p;
  p.add_term(T(1), 1, 1);
  const auto phi = PiecewiseFn2D<T>::polynomial(box, p) *
                   PiecewiseFn2D<T>::indicator(box, RegionSet<T>::of(region<T>({{{-1, 0, 1}}, {{1, 0, 1}}, {{0, -1, 1}}, {{0, 1, 1}}})));
  EXPECT_NEAR(to_double(d.pair(phi)), 0.125, 1e-12);
}

TEST(DistributionsRandom, SectorIntegralMatchesArcMass) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Rect<Rational> box = omega_box<Rational>();
  for (int t = 0; t < 50; ++t) {
    // piecewise-constant α with three arcs, normalised
    std::vector<double> cuts{u(rng) * 2 * kPi, u(rng) * 2 * kPi, u(rng) * 2 * kPi};
    std::sort(cuts.begin(), cuts.end());
    std::vector<std::tuple<double, double, double>> arcs;
    for (int i = 0; i < 3; ++i) arcs.emplace_back(cuts[i], i < 2 ? cuts[i + 1] : cuts[0] + 2 * kPi, 0.1 + u(rng));
    AngularFn a = AngularFn::from_arcs(arcs);
    a = a * (1.0 / a.integral());
    const auto alpha = AngularDensity<Rational>::two_dim(a);
    const double r = 0.05 + u(rng) * (2 * kPi - 0.1);
    const auto d = Distribution2D<Rational>::delta(box, {Rational(0), Rational(0)}, alpha);
    const double got = to_double(d.integrate(sector<Rational>({Rational(0), Rational(0)}, 0.0, r, 1.0)));
    EXPECT_NEAR(got, a.integral_over(0.0, r), 1e-12) << "trial " << t;
  }
}
