#pragma once

// Scalar abstraction shared by every module. Two scalars are supported:
// Rational (GMP-backed, exact) and double (comparisons within kFloatTolerance).

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace regudist {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

inline constexpr double kFloatTolerance = 1e-9;

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;

  static bool eq(const Rational& a, const Rational& b) { return a == b; }
  static bool is_zero(const Rational& a) { return a == 0; }
  static int sign(const Rational& a) { return a < 0 ? -1 : (a > 0 ? 1 : 0); }
  static double to_double(const Rational& a) { return a.convert_to<double>(); }

  // Every finite double is a dyadic rational, so this conversion is exact.
  static Rational from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
    return Rational(x);
  }

  static std::string to_string(const Rational& a) {
    const BigInt num = boost::multiprecision::numerator(a);
    const BigInt den = boost::multiprecision::denominator(a);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
  }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;

  static bool eq(double a, double b) { return std::abs(a - b) <= kFloatTolerance; }
  static bool is_zero(double a) { return std::abs(a) <= kFloatTolerance; }
  static int sign(double a) { return is_zero(a) ? 0 : (a < 0 ? -1 : 1); }
  static double to_double(double a) { return a; }
  static double from_double(double x) { return x; }
  static std::string to_string(double a);
};

template <class T>
concept Scalar = requires { ScalarTraits<T>::exact; };

template <Scalar T>
bool scalar_eq(const T& a, const T& b) {
  return ScalarTraits<T>::eq(a, b);
}
template <Scalar T>
bool scalar_is_zero(const T& a) {
  return ScalarTraits<T>::is_zero(a);
}
template <Scalar T>
int scalar_sign(const T& a) {
  return ScalarTraits<T>::sign(a);
}
template <Scalar T>
double to_double(const T& a) {
  return ScalarTraits<T>::to_double(a);
}
template <Scalar T>
T from_double(double x) {
  return ScalarTraits<T>::from_double(x);
}

template <Scalar U, Scalar T>
U scalar_cast(const T& a) {
  if constexpr (std::is_same_v<U, T>) {
    return a;
  } else if constexpr (std::is_same_v<U, double>) {
    return to_double(a);
  } else {
    return from_double<U>(to_double(a));
  }
}

/// Parses "p/q", an integer, or a plain decimal ("-0.125", "3e-2") exactly.
Rational parse_rational(std::string_view text);

template <Scalar T>
T parse_scalar(std::string_view text) {
  if constexpr (ScalarTraits<T>::exact) {
    return parse_rational(text);
  } else {
    // Correctly rounded; routing through the rational would truncate.
    (void)parse_rational(text);  // validates the syntax
    const std::string t(text);
    const auto slash = t.find('/');
    auto to_d = [](std::string part) {
      while (!part.empty() && std::isspace(static_cast<unsigned char>(part.front()))) part.erase(part.begin());
      while (!part.empty() && std::isspace(static_cast<unsigned char>(part.back()))) part.pop_back();
      if (!part.empty() && part.front() == '+') part.erase(part.begin());
      double v = 0.0;
      std::from_chars(part.data(), part.data() + part.size(), v);
      return v;
    };
    if (slash == std::string::npos) return to_d(t);
    return to_d(t.substr(0, slash)) / to_d(t.substr(slash + 1));
  }
}

inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) throw std::invalid_argument("empty number");

  auto parse_int = [&](const std::string& digits) {
    if (digits.empty() || digits == "+" || digits == "-")
      throw std::invalid_argument("malformed number: " + s);
    for (std::size_t i = 0; i < digits.size(); ++i) {
      const char c = digits[i];
      if (i == 0 && (c == '+' || c == '-')) continue;
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw std::invalid_argument("malformed number: " + s);
    }
    // BigInt reads a leading 0 as an octal prefix
    const bool neg = digits.front() == '-';
    std::string body = digits.substr(digits.front() == '+' || neg ? 1 : 0);
    const auto nz = body.find_first_not_of('0');
    body = nz == std::string::npos ? "0" : body.substr(nz);
    return BigInt((neg ? "-" : "") + body);
  };

  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const BigInt num = parse_int(s.substr(0, slash));
    const BigInt den = parse_int(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + s);
    return Rational(num, den);
  }

  std::string mantissa = s;
  long exponent = 0;
  if (const auto e = s.find_first_of("eE"); e != std::string::npos) {
    mantissa = s.substr(0, e);
    const std::string exp_text = s.substr(e + 1);
    (void)parse_int(exp_text);
    exponent = std::stol(exp_text);
  }
  std::string digits = mantissa;
  if (const auto dot = mantissa.find('.'); dot != std::string::npos) {
    const std::string frac = mantissa.substr(dot + 1);
    digits = mantissa.substr(0, dot) + frac;
    exponent -= static_cast<long>(frac.size());
    if (digits == "" || digits == "-" || digits == "+") digits += "0";
  }
  Rational value(parse_int(digits));
  if (exponent != 0) {
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::labs(exponent)));
    value = exponent > 0 ? value * Rational(scale) : value / Rational(scale);
  }
  return value;
}

inline std::string ScalarTraits<double>::to_string(double a) {
  // Shortest representation that round-trips.
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, a);
  return std::string(buf, res.ptr);
}

}  // namespace regudist
