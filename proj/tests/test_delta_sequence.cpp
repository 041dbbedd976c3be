#include "support.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace regudist;
using namespace regudist::testing;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(DeltaSequence1D, ConstructionAndPairing) {
  const Q lo(-2), hi(2);
  const auto w = delta_sequence_1d<Q>(lo, hi, Q(0), Q(1), 10);
  const auto expected = PiecewiseFn1D<Q>::indicator(lo, hi, Q(0), Q(1, 10)) * Q(10);
  EXPECT_EQ(w, expected);
  // pairing with θ_0 cut off at 1/2
  const auto th = PiecewiseFn1D<Q>::indicator(lo, hi, Q(0), Q(1, 2));
  EXPECT_EQ((w * th).integral(), Q(1));
  EXPECT_EQ(Distribution1D<Q>::delta_plus(lo, hi, Q(0)).pair(th), Q(1));
  for (long k : {2L, 3L, 7L, 100L}) {
    const auto wk = delta_sequence_1d<Q>(lo, hi, Q(1, 3), Q(2, 5), k);
    EXPECT_EQ(wk.integral(Q(1, 3) - Q(1), Q(1, 3) + Q(1)), Q(1)) << k;
  }
  EXPECT_THROW(delta_sequence_1d<Q>(lo, hi, Q(19, 10), Q(1), 5), std::out_of_range);
}

TEST(DeltaSequence1D, ConeIntegralsExactBeyondOneOverR) {
  for (const Q beta : {Q(1), Q(0), Q(1, 3), Q(7, 4)}) {
    const Q r(1, 2);
    const auto rep = verify_delta_sequence_1d<Q>(Q(-2), Q(2), Q(0), beta, {Cone1D::kPlus, Cone1D::kMinus, Cone1D::kBoth},
                                                 r, all_ks(100));
    ASSERT_EQ(rep.rows.size(), 300u);
    for (const auto& row : rep.rows) {
      if (row.k > 2) EXPECT_EQ(row.abs_error, 0.0) << "k=" << row.k;
    }
  }
}

TEST(DeltaSequence1D, NonDeltaSequenceDoesNotConverge) {
  const Sequence1D bad = [](long k, double x) { return (x > 0 && x < 2.0 / k) ? static_cast<double>(k) : 0.0; };
  const auto rep = verify_delta_sequence_1d<double>(-2, 2, 0, 1, {Cone1D::kPlus}, 0.5, log_spaced_ks(1000), bad);
  for (const auto& row : rep.rows)
    if (row.k >= 10) EXPECT_NEAR(row.abs_error, 1.0, 1e-6) << row.k;
}

TEST(DeltaSequence1D, UserSequenceMatchingTheBuiltin) {
  const Sequence1D good = [](long k, double x) {
    const double h = 1.0 / k;
    return (x > 0 && x < h) ? 0.25 * k : (x < 0 && x > -h) ? 0.75 * k : 0.0;
  };
  const auto rep = verify_delta_sequence_1d<double>(-2, 2, 0, 0.25, {Cone1D::kPlus, Cone1D::kMinus}, 0.5,
                                                    log_spaced_ks(1000), good);
  EXPECT_TRUE(rep.quadrature_converged);
  for (const auto& row : rep.rows)
    if (row.k >= 5) EXPECT_LT(row.abs_error, 1e-6) << row.k;
}

TEST(DeltaSequence2D, ConeIntegralIsQuarterForEveryK) {
  const AngularFn uniform(1 / (2 * kPi));
  for (long k : {2L, 10L, 100L, 1000L}) {
    const DeltaSequence2D w(0, 0, uniform, k);
    EXPECT_NEAR(w.cone_ball_integral(0, kPi / 2, 0.5), 0.25, 1e-15);
  }
  const auto rep = verify_delta_sequence_2d({-2, 2, -2, 2}, 0, 0, uniform, {{0, kPi / 2}, {1.0, 4.0}}, 0.5, all_ks(200));
  for (const auto& row : rep.rows)
    if (row.k > 2) EXPECT_LE(row.abs_error, 1e-15) << row.k;
  EXPECT_LT(rep.converse_ratio, 1.0);
}

TEST(DeltaSequence2D, ClosedFormMatchesPolarQuadratureOfTheFunction) {
  // independent oracle: midpoint rule in Cartesian coordinates
  const AngularFn alpha = AngularFn::from_arcs({{0.2, 2.0, 0.4}, {3.0, 4.5, 0.2}});
  const AngularFn a = alpha * (1.0 / alpha.integral());
  const DeltaSequence2D w(0.1, -0.2, a, 4);
  const int n = 1200;
  const double h = 0.5 / n;
  double cone = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double x = 0.1 - 0.25 + (i + 0.5) * h, y = -0.2 - 0.25 + (j + 0.5) * h;
      const double s = wrap_angle(std::atan2(y + 0.2, x - 0.1));
      if (s < kPi / 2) cone += w(x, y) * h * h;
    }
  EXPECT_NEAR(w.cone_ball_integral(0, kPi / 2, 1.0), cone, 2e-3);
}

TEST(DeltaSequence2D, PairingMatchesCartesianQuadrature) {
  const Rect<double> box{-2, 2, -2, 2};
  const auto rho = example_payoff<double>();
  const AngularFn uniform(1 / (2 * kPi));
  const DeltaSequence2D w(0, 0, uniform, 5);
  const int n = 1000;
  const double h = 0.4 / n;
  double oracle = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double x = -0.2 + (i + 0.5) * h, y = -0.2 + (j + 0.5) * h;
      oracle += w(x, y) * rho.eval({x, y}) * h * h;
    }
  EXPECT_NEAR(w.pair(rho), 0.5, 1e-12);
  EXPECT_NEAR(oracle, 0.5, 2e-3);
  (void)box;
}

TEST(DeltaSequence2D, UserRadialSequence) {
  const AngularFn uniform(1 / (2 * kPi));
  // k² · (1/π) on the disk of radius 1/k has mass 1
  const Sequence2D disk = [](long k, double x, double y) {
    const double kd = static_cast<double>(k);
    return x * x + y * y < 1 / (kd * kd) ? kd * kd / kPi : 0.0;
  };
  const auto rep = verify_delta_sequence_2d({-2, 2, -2, 2}, 0, 0, uniform, {{0, kPi / 2}}, 0.5, {10, 100}, 0, disk);
  for (const auto& row : rep.rows) EXPECT_LT(row.abs_error, 1e-4) << row.k;
}

TEST(DeltaSequence2D, RejectsBadArcs) {
  const AngularFn uniform(1 / (2 * kPi));
  EXPECT_THROW(verify_delta_sequence_2d({-2, 2, -2, 2}, 0, 0, uniform, {{1, 0}}, 0.5, {1}), std::invalid_argument);
  EXPECT_THROW(verify_delta_sequence_2d({-2, 2, -2, 2}, 0, 0, uniform, {{0, 1}}, 3, {1}), std::out_of_range);
}
