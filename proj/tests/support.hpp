#pragma once

#include "regudist/regudist.hpp"

#include <filesystem>
#include <fstream>
#include <random>

namespace regudist::testing {

using Q = Rational;

inline std::filesystem::path fixture_path(const std::string& name) {
  return std::filesystem::path(REGUDIST_FIXTURE_DIR) / name;
}

inline json load_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name));
  return json::parse(in);
}

template <Scalar T>
T num(long p, long q = 1) {
  if constexpr (ScalarTraits<T>::exact) {
    return T(p) / T(q);
  } else {
    return static_cast<double>(p) / static_cast<double>(q);
  }
}

template <Scalar T>
Region<T> region(std::initializer_list<std::array<long, 3>> hps) {
  Region<T> r;
  for (const auto& h : hps) r.halfplanes.emplace_back(num<T>(h[0]), num<T>(h[1]), num<T>(h[2]));
  return r;
}

// Open triangles x,y > 0, x + y < 1 and x,y < 0, x + y > -1.
template <Scalar T>
Region<T> q1_triangle() { return region<T>({{{-1, 0, 0}}, {{0, -1, 0}}, {{1, 1, 1}}}); }
template <Scalar T>
Region<T> q3_triangle() { return region<T>({{{1, 0, 0}}, {{0, 1, 0}}, {{-1, -1, 1}}}); }

template <Scalar T>
Rect<T> omega_box() { return {num<T>(-2), num<T>(2), num<T>(-2), num<T>(2)}; }

template <Scalar T>
PiecewiseFn2D<T> example_payoff() {
  RegionSet<T> set;
  set.terms.push_back({q1_triangle<T>(), true});
  set.terms.push_back({q3_triangle<T>(), true});
  return PiecewiseFn2D<T>::indicator(omega_box<T>(), set);
}

template <Scalar T>
GameSpec<T> example_game() {
  return GameSpec<T>(num<T>(-1), num<T>(1), num<T>(-1), num<T>(1), example_payoff<T>());
}

template <Scalar T>
T random_rational(std::mt19937_64& rng, long lo, long hi, long den) {
  std::uniform_int_distribution<long> d(lo * den, hi * den);
  return num<T>(d(rng), den);
}

/// Random piecewise polynomial on (lo, hi): up to four pieces of degree <= 2.
template <Scalar T>
PiecewiseFn1D<T> random_fn1d(std::mt19937_64& rng, long lo, long hi, bool compact = false) {
  std::uniform_int_distribution<int> nb(compact ? 2 : 0, 4), deg(0, 2);
  std::set<T> cuts;
  const int n = nb(rng);
  while (static_cast<int>(cuts.size()) < n) {
    T c = random_rational<T>(rng, lo, hi, 8);
    if (lo < c && c < hi) cuts.insert(c);
  }
  std::vector<T> br(cuts.begin(), cuts.end());
  std::vector<Polynomial<T>> pieces;
  for (std::size_t i = 0; i <= br.size(); ++i) {
    if (compact && (i == 0 || i == br.size())) {
      pieces.emplace_back();
      continue;
    }
    std::vector<T> c;
    for (int d = 0, m = deg(rng); d <= m; ++d) c.push_back(random_rational<T>(rng, -3, 3, 4));
    pieces.emplace_back(std::move(c));
  }
  return PiecewiseFn1D<T>(num<T>(lo), num<T>(hi), std::move(br), std::move(pieces));
}

/// Random 1D distribution: regular part plus up to three atoms with signed weights.
template <Scalar T>
Distribution1D<T> random_distribution1d(std::mt19937_64& rng, long lo, long hi) {
  Distribution1D<T> d(random_fn1d<T>(rng, lo, hi));
  std::uniform_int_distribution<int> na(0, 3);
  for (int i = 0, n = na(rng); i < n; ++i) {
    T p = random_rational<T>(rng, lo, hi, 8);
    if (!(num<T>(lo) < p && p < num<T>(hi))) continue;
    d.add_atom(p, Atom1D<T>{random_rational<T>(rng, -2, 2, 4), random_rational<T>(rng, -2, 2, 4)});
  }
  return d;
}

/// ρ = u·χ(Q1 triangle) + w·χ(Q3 triangle) + c on the example domain.
template <Scalar T>
PiecewiseFn2D<T> two_triangle_payoff(const T& u, const T& w, const T& c = T(0)) {
  const Rect<T> box = omega_box<T>();
  return PiecewiseFn2D<T>::indicator(box, RegionSet<T>::of(q1_triangle<T>())) * u +
         PiecewiseFn2D<T>::indicator(box, RegionSet<T>::of(q3_triangle<T>())) * w + c;
}

}  // namespace regudist::testing
