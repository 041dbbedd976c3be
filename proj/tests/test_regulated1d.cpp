#include "support.hpp"

#include <gtest/gtest.h>

using namespace regudist;
using namespace regudist::testing;

template <class T>
class Regulated1D : public ::testing::Test {};
using Scalars = ::testing::Types<Rational, double>;
TYPED_TEST_SUITE(Regulated1D, Scalars);

namespace {

template <Scalar T>
PiecewiseFn1D<T> sign_fn() {
  return PiecewiseFn1D<T>(num<T>(-1), num<T>(1), {T(0)}, {Polynomial<T>{num<T>(-1)}, Polynomial<T>{num<T>(1)}});
}

template <Scalar T>
PiecewiseFn1D<T> ident(long lo, long hi) {
  return PiecewiseFn1D<T>::polynomial(num<T>(lo), num<T>(hi), Polynomial<T>::identity());
}

}  // namespace

TYPED_TEST(Regulated1D, OneSidedLimits) {
  using T = TypeParam;
  const auto g = sign_fn<T>();
  EXPECT_EQ(g.limit_right(T(0)), num<T>(1));
  EXPECT_EQ(g.limit_left(T(0)), num<T>(-1));
  const auto theta = PiecewiseFn1D<T>::heaviside(num<T>(-1), num<T>(1), num<T>(1, 4));
  EXPECT_EQ(theta.limit_right(num<T>(1, 4)), num<T>(1));
  EXPECT_EQ(theta.limit_left(num<T>(1, 4)), num<T>(0));
  const auto sq = PiecewiseFn1D<T>::polynomial(T(0), num<T>(2), Polynomial<T>{T(0), T(0), T(1)});
  EXPECT_EQ(sq.limit_right(T(1)), num<T>(1));
  EXPECT_EQ(sq.limit_left(T(1)), num<T>(1));
}

TYPED_TEST(Regulated1D, Norm) {
  using T = TypeParam;
  EXPECT_EQ(sign_fn<T>().norm(), num<T>(1));
  const auto g = PiecewiseFn1D<T>::polynomial(T(0), T(1), Polynomial<T>{T(0), T(1), T(-1)});
  double grid = 0;
  for (int i = 0; i <= 100000; ++i) grid = std::max(grid, std::abs(i / 1e5 * (1 - i / 1e5)));
  EXPECT_NEAR(to_double(g.norm()), grid, 1e-9);
  EXPECT_EQ(g.norm(), num<T>(1, 4));
  EXPECT_EQ(PiecewiseFn1D<T>::zero(T(0), T(1)).norm(), T(0));
}

TYPED_TEST(Regulated1D, Algebra) {
  using T = TypeParam;
  const auto theta = PiecewiseFn1D<T>::heaviside(num<T>(-1), num<T>(1), T(0));
  EXPECT_EQ(theta * theta, theta);
  EXPECT_EQ(sign_fn<T>() + T(1), theta * T(2));
  const auto abs = ident<T>(-1, 1) * sign_fn<T>();
  ASSERT_EQ(abs.size(), 2u);
  for (int i = -99; i < 100; ++i) {
    const T x = num<T>(i, 100);
    EXPECT_EQ(abs.limit_right(x), x < T(0) ? -x : x);
  }
  EXPECT_TRUE(abs.discontinuity_set().empty());
}

TYPED_TEST(Regulated1D, DiscontinuitySet) {
  using T = TypeParam;
  EXPECT_EQ(sign_fn<T>().discontinuity_set(), std::vector<T>{T(0)});
  EXPECT_EQ(PiecewiseFn1D<T>::heaviside(T(0), T(1), num<T>(1, 2)).discontinuity_set(), std::vector<T>{num<T>(1, 2)});
}

TYPED_TEST(Regulated1D, PiecewiseConstantApproximation) {
  using T = TypeParam;
  const auto g = ident<T>(0, 1);
  const auto h = g.pc_approximate(num<T>(1, 10));
  EXPECT_TRUE(h.is_piecewise_constant());
  EXPECT_LE(h.size(), 11u);
  EXPECT_LT((g - h).norm(), num<T>(1, 10));
  const auto s = sign_fn<T>();
  EXPECT_EQ(s.pc_approximate(num<T>(1, 2)), s);
  EXPECT_EQ(s.pc_approximate(num<T>(1, 2)).size(), 2u);
  const auto theta = PiecewiseFn1D<T>::heaviside(T(0), T(1), num<T>(1, 3));
  EXPECT_EQ(theta.pc_approximate(num<T>(1, 1000)), theta);
}

TYPED_TEST(Regulated1D, RandomApproximationRespectsEps) {
  using T = TypeParam;
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const auto g = random_fn1d<T>(rng, -2, 2);
    const T eps = num<T>(1, 20);
    const auto h = g.pc_approximate(eps);
    EXPECT_TRUE(h.is_piecewise_constant());
    EXPECT_LT(to_double((g - h).norm()), to_double(eps) + 1e-12);
  }
}

TYPED_TEST(Regulated1D, Integral) {
  using T = TypeParam;
  EXPECT_EQ(ident<T>(0, 1).integral(), num<T>(1, 2));
  EXPECT_EQ(sign_fn<T>().integral(), T(0));
  EXPECT_EQ(sign_fn<T>().integral(num<T>(-1, 2), T(1)), num<T>(1, 2));
}

TYPED_TEST(Regulated1D, RejectsMalformedInput) {
  using T = TypeParam;
  EXPECT_THROW(PiecewiseFn1D<T>(T(1), T(0), {}, {Polynomial<T>{}}), std::invalid_argument);
  EXPECT_THROW(PiecewiseFn1D<T>(T(0), T(1), {num<T>(1, 2)}, {Polynomial<T>{}}), std::invalid_argument);
  EXPECT_THROW(PiecewiseFn1D<T>(T(0), T(1), {num<T>(3, 2)}, {Polynomial<T>{}, Polynomial<T>{}}), std::invalid_argument);
}

TEST(Polynomials, NonnegativityIsExact) {
  // (x - 1/3)^2 touches zero at an irrational-free double root.
  const Polynomial<Rational> p = Polynomial<Rational>{Rational(1, 9), Rational(-2, 3), Rational(1)};
  EXPECT_TRUE(nonneg_on(p, Rational(0), Rational(1)));
  EXPECT_FALSE(nonneg_on(p - Polynomial<Rational>{Rational(1, 1000000000)}, Rational(0), Rational(1)));
  // x^2 - 2 has irrational roots; positive on (3/2, 2), sign change on (1, 2).
  const Polynomial<Rational> q{Rational(-2), Rational(0), Rational(1)};
  EXPECT_TRUE(nonneg_on(q, Rational(3, 2), Rational(2)));
  EXPECT_FALSE(nonneg_on(q, Rational(1), Rational(2)));
  EXPECT_EQ(max_on(q, Rational(-1), Rational(2)), Rational(2));
  EXPECT_EQ(min_on(q, Rational(-1), Rational(2)), Rational(-2));
}

TEST(Polynomials, RootsMatchBruteForceSignChanges) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> c;
    std::uniform_int_distribution<int> d(-5, 5);
    for (int i = 0; i < 4; ++i) c.push_back(d(rng));
    const Polynomial<double> p(c);
    if (p.degree() <= 0) continue;
    int changes = 0;
    double prev = p(-3.0);
    for (int i = 1; i <= 60000; ++i) {
      const double v = p(-3.0 + i * 1e-4);
      if ((prev < 0 && v > 0) || (prev > 0 && v < 0)) ++changes;
      if (v != 0) prev = v;
    }
    const auto roots = real_roots_in(p, -3.0, 3.0);
    EXPECT_GE(static_cast<int>(roots.size()), changes) << "trial " << t;
  }
}
