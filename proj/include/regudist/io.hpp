#pragma once

#include "regudist/delta_sequence.hpp"
#include "regudist/distributions.hpp"
#include "regudist/game.hpp"

#include <json.hpp>

#include <charconv>
#include <stdexcept>
#include <string>
#include <vector>

namespace regudist {

using json = nlohmann::json;

/// Input that does not match the expected schema.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace io {

[[noreturn]] inline void fail(const std::string& where, const std::string& what) {
  throw SchemaError(where + ": " + what);
}

inline const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

/// Text of a JSON number or string, for exact parsing.
inline std::string number_text(const json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return j.dump();
  if (j.is_number_float()) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, j.get<double>());
    return std::string(buf, r.ptr);
  }
  fail(where, "expected a number or a \"p/q\" string");
}

template <Scalar T>
T scalar(const json& j, const std::string& where) {
  try {
    return parse_scalar<T>(number_text(j, where));
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
}

template <Scalar T>
json to_json(const T& v) {
  if constexpr (ScalarTraits<T>::exact) {
    return v.str();
  } else {
    return v == 0.0 ? 0.0 : v;  // drop negative zero
  }
}

/// Angle as a number or a multiple of pi: "pi/2", "3pi/2", "3*pi/4".
inline double angle(const json& j, const std::string& where) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    std::erase(s, '*');
    std::erase(s, ' ');
    if (const auto k = s.find("pi"); k != std::string::npos) {
      std::string coeff = s.substr(0, k);
      if (coeff.empty() || coeff == "+") coeff += "1";
      if (coeff == "-") coeff = "-1";
      try {
        return to_double(parse_rational(coeff + s.substr(k + 2))) * std::numbers::pi;
      } catch (const std::invalid_argument& e) {
        fail(where, e.what());
      }
    }
  }
  return scalar<double>(j, where);
}

/// Arc density value as a number or a rational over a multiple of pi: "1/(2pi)", "3/(4*pi)".
inline double density_value(const json& j, const std::string& where) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    std::erase_if(s, [](char c) { return c == '*' || c == ' ' || c == '(' || c == ')'; });
    const auto slash = s.find('/');
    if (slash != std::string::npos && s.find("pi", slash) != std::string::npos) {
      const double num = to_double(scalar<Rational>(json(s.substr(0, slash)), where));
      return num / angle(json(s.substr(slash + 1)), where);
    }
  }
  return scalar<double>(j, where);
}

template <Scalar T>
std::vector<T> scalar_list(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  std::vector<T> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(scalar<T>(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

template <Scalar T>
std::pair<T, T> interval(const json& j, const std::string& where) {
  const auto v = scalar_list<T>(j, where);
  if (v.size() != 2 || !(v[0] < v[1])) fail(where, "expected an interval [lo, hi] with lo < hi");
  return {v[0], v[1]};
}

// --- regulated functions -------------------------------------------------------

template <Scalar T>
PiecewiseFn1D<T> fn1d(const json& j, const std::string& where = "fn") {
  const auto [lo, hi] = interval<T>(field(j, "domain", where), where + ".domain");
  std::vector<T> br;
  if (j.contains("breakpoints")) br = scalar_list<T>(j["breakpoints"], where + ".breakpoints");
  const json& pieces = field(j, "pieces", where);
  if (!pieces.is_array()) fail(where + ".pieces", "expected an array");
  std::vector<Polynomial<T>> ps;
  for (std::size_t i = 0; i < pieces.size(); ++i)
    ps.emplace_back(scalar_list<T>(pieces[i], where + ".pieces[" + std::to_string(i) + "]"));
  try {
    return PiecewiseFn1D<T>(lo, hi, std::move(br), std::move(ps));
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
}

template <Scalar T>
json to_json(const PiecewiseFn1D<T>& f) {
  json br = json::array(), pieces = json::array();
  for (const auto& b : f.breakpoints()) br.push_back(to_json(b));
  for (const auto& p : f.pieces()) {
    json c = json::array();
    for (const auto& v : p.coeffs()) c.push_back(to_json(v));
    pieces.push_back(c);
  }
  return {{"domain", {to_json(f.lo()), to_json(f.hi())}}, {"breakpoints", br}, {"pieces", pieces}};
}

template <Scalar T>
BiPoly<T> bipoly(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of [coeff, i, j] terms");
  BiPoly<T> p;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string w = where + "[" + std::to_string(k) + "]";
    const json& t = j[k];
    if (!t.is_array() || t.size() != 3 || !t[1].is_number_integer() || !t[2].is_number_integer() ||
        t[1].get<int>() < 0 || t[2].get<int>() < 0)
      fail(w, "expected [coeff, i, j] with nonnegative integer exponents");
    p.add_term(scalar<T>(t[0], w), t[1].get<int>(), t[2].get<int>());
  }
  return p;
}

template <Scalar T>
json to_json(const BiPoly<T>& p) {
  json out = json::array();
  for (const auto& [m, c] : p.terms()) out.push_back({to_json(c), m.first, m.second});
  return out;
}

template <Scalar T>
RegionSet<T> region_set(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of regions");
  RegionSet<T> set;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string w = where + "[" + std::to_string(r) + "]";
    Region<T> region;
    const json& hps = field(j[r], "halfplanes", w);
    if (!hps.is_array()) fail(w + ".halfplanes", "expected an array");
    for (std::size_t h = 0; h < hps.size(); ++h) {
      const std::string wh = w + ".halfplanes[" + std::to_string(h) + "]";
      const json& e = hps[h];
      if (!e.is_array() || e.size() != 4 || !e[3].is_string()) fail(wh, "expected [a, b, c, \"lt\"|\"le\"]");
      const std::string sense = e[3].get<std::string>();
      if (sense != "lt" && sense != "le") fail(wh, "sense must be \"lt\" or \"le\"");
      try {
        region.halfplanes.emplace_back(scalar<T>(e[0], wh), scalar<T>(e[1], wh), scalar<T>(e[2], wh),
                                       sense == "lt" ? Sense::kLess : Sense::kLessEqual);
      } catch (const std::invalid_argument& ex) {
        fail(wh, ex.what());
      }
    }
    std::string sign = "+";
    if (j[r].contains("sign")) {
      if (!j[r]["sign"].is_string()) fail(w + ".sign", "expected \"+\" or \"-\"");
      sign = j[r]["sign"].get<std::string>();
    }
    if (sign != "+" && sign != "-") fail(w + ".sign", "expected \"+\" or \"-\"");
    set.terms.push_back({std::move(region), sign == "+"});
  }
  return set;
}

template <Scalar T>
json to_json(const RegionSet<T>& set) {
  json out = json::array();
  for (const auto& t : set.terms) {
    json hps = json::array();
    for (const auto& h : t.region.halfplanes)
      hps.push_back({to_json(h.a), to_json(h.b), to_json(h.c), h.sense == Sense::kLess ? "lt" : "le"});
    out.push_back({{"halfplanes", hps}, {"sign", t.positive ? "+" : "-"}});
  }
  return out;
}

template <Scalar T>
Rect<T> rect(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) fail(where, "expected [[x_lo, x_hi], [y_lo, y_hi]]");
  const auto [a, b] = interval<T>(j[0], where + "[0]");
  const auto [c, d] = interval<T>(j[1], where + "[1]");
  return {a, b, c, d};
}

template <Scalar T>
json to_json(const Rect<T>& r) {
  return json::array({json::array({to_json(r.x_lo), to_json(r.x_hi)}), json::array({to_json(r.y_lo), to_json(r.y_hi)})});
}

template <Scalar T>
PiecewiseFn2D<T> fn2d(const json& j, const std::string& where = "fn", const Rect<T>* default_domain = nullptr) {
  Rect<T> dom;
  if (j.contains("domain")) {
    dom = rect<T>(j["domain"], where + ".domain");
  } else if (default_domain) {
    dom = *default_domain;
  } else {
    fail(where, "missing field 'domain'");
  }
  std::vector<typename PiecewiseFn2D<T>::Clause> clauses;
  if (j.contains("clauses")) {
    const json& cs = j["clauses"];
    if (!cs.is_array()) fail(where + ".clauses", "expected an array");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const std::string w = where + ".clauses[" + std::to_string(i) + "]";
      clauses.push_back({region_set<T>(field(cs[i], "regions", w), w + ".regions"),
                         bipoly<T>(field(cs[i], "poly", w), w + ".poly")});
    }
  }
  BiPoly<T> fallback;
  if (j.contains("default")) fallback = bipoly<T>(j["default"], where + ".default");
  try {
    return PiecewiseFn2D<T>(dom, std::move(clauses), std::move(fallback));
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
}

template <Scalar T>
json to_json(const PiecewiseFn2D<T>& f) {
  json cs = json::array();
  for (const auto& c : f.clauses()) cs.push_back({{"regions", to_json(c.region)}, {"poly", to_json(c.poly)}});
  return {{"domain", to_json(f.domain())}, {"clauses", cs}, {"default", to_json(f.fallback())}};
}

// --- angular data ----------------------------------------------------------------

inline AngularFn angular_fn(const json& j, const std::string& where) {
  if (j.contains("uniform") && j["uniform"] == true) return AngularFn::from_arcs({{0.0, 2 * std::numbers::pi, 1.0 / (2 * std::numbers::pi)}});
  const json& arcs = field(j, "arcs", where);
  if (!arcs.is_array()) fail(where + ".arcs", "expected an array of [lo, hi, value]");
  std::vector<std::tuple<double, double, double>> v;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const std::string w = where + ".arcs[" + std::to_string(i) + "]";
    if (!arcs[i].is_array() || arcs[i].size() != 3) fail(w, "expected [lo, hi, value]");
    v.emplace_back(angle(arcs[i][0], w), angle(arcs[i][1], w), density_value(arcs[i][2], w));
  }
  try {
    return AngularFn::from_arcs(v);
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
}

inline json to_json(const AngularFn& f) {
  json arcs = json::array();
  for (std::size_t i = 0; i < f.size(); ++i) arcs.push_back({f.starts()[i], f.arc_end(i), f.values()[i]});
  return {{"arcs", arcs}};
}

template <Scalar T>
AngularDensity<T> angular_density(const json& j, const std::string& where) {
  const json& dim = field(j, "dim", where);
  if (dim == 1) return AngularDensity<T>::one_dim(scalar<T>(field(j, "beta", where), where + ".beta"));
  if (dim == 2) {
    try {
      return AngularDensity<T>::two_dim(angular_fn(j, where));
    } catch (const std::invalid_argument& e) {
      fail(where, e.what());
    }
  }
  fail(where + ".dim", "expected 1 or 2");
}

// --- distributions ---------------------------------------------------------------

/// Whether a distribution or test-function document is two-dimensional.
inline bool is_2d_fn(const json& j) {
  return j.is_object() && j.contains("domain") && j["domain"].is_array() && !j["domain"].empty() &&
         j["domain"][0].is_array();
}

template <Scalar T>
Distribution1D<T> distribution1d(const json& j, const std::string& where = "distribution") {
  Distribution1D<T> d(fn1d<T>(field(j, "regular", where), where + ".regular"));
  if (j.contains("atoms")) {
    const json& atoms = j["atoms"];
    if (!atoms.is_array()) fail(where + ".atoms", "expected an array");
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const std::string w = where + ".atoms[" + std::to_string(i) + "]";
      const T p = scalar<T>(field(atoms[i], "p", w), w + ".p");
      Atom1D<T> a;
      if (atoms[i].contains("plus") || atoms[i].contains("minus")) {
        a.plus = scalar<T>(field(atoms[i], "plus", w), w + ".plus");
        a.minus = scalar<T>(field(atoms[i], "minus", w), w + ".minus");
      } else {
        const T weight = atoms[i].contains("weight") ? scalar<T>(atoms[i]["weight"], w + ".weight") : T(1);
        const auto alpha = angular_density<T>(field(atoms[i], "alpha", w), w + ".alpha");
        if (alpha.dim() != 1) fail(w + ".alpha", "a 1D distribution needs a 1D density");
        a.plus = weight * alpha.beta();
        a.minus = weight * (T(1) - alpha.beta());
      }
      try {
        d.add_atom(p, a);
      } catch (const std::out_of_range& e) {
        fail(w, e.what());
      }
    }
  }
  return d;
}

template <Scalar T>
json to_json(const Distribution1D<T>& d) {
  json atoms = json::array();
  for (const auto& [p, a] : d.atoms()) {
    if (scalar_is_zero(a.weight())) {
      atoms.push_back({{"p", to_json(p)}, {"plus", to_json(a.plus)}, {"minus", to_json(a.minus)}});
    } else {
      atoms.push_back({{"p", to_json(p)},
                       {"weight", to_json(a.weight())},
                       {"alpha", {{"dim", 1}, {"beta", to_json(a.beta())}}}});
    }
  }
  return {{"regular", to_json(d.regular())}, {"atoms", atoms}};
}

template <Scalar T>
Point<T> point(const json& j, const std::string& where) {
  const auto v = scalar_list<T>(j, where);
  if (v.size() != 2) fail(where, "expected [x, y]");
  return {v[0], v[1]};
}

template <Scalar T>
Distribution2D<T> distribution2d(const json& j, const std::string& where = "distribution") {
  Distribution2D<T> d(fn2d<T>(field(j, "regular", where), where + ".regular"));
  if (j.contains("atoms")) {
    const json& atoms = j["atoms"];
    if (!atoms.is_array()) fail(where + ".atoms", "expected an array");
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const std::string w = where + ".atoms[" + std::to_string(i) + "]";
      const Point<T> p = point<T>(field(atoms[i], "p", w), w + ".p");
      AngularFn measure;
      if (atoms[i].contains("measure")) {
        measure = angular_fn(atoms[i]["measure"], w + ".measure");
      } else {
        const double weight = atoms[i].contains("weight") ? scalar<double>(atoms[i]["weight"], w + ".weight") : 1.0;
        const auto alpha = angular_density<T>(field(atoms[i], "alpha", w), w + ".alpha");
        if (alpha.dim() != 2) fail(w + ".alpha", "a 2D distribution needs a 2D density");
        measure = alpha.arcs() * weight;
      }
      try {
        d.add_atom(p, measure);
      } catch (const std::out_of_range& e) {
        fail(w, e.what());
      }
    }
  }
  return d;
}

template <Scalar T>
json to_json(const Distribution2D<T>& d) {
  json atoms = json::array();
  for (const auto& a : d.atoms()) {
    const json p = {to_json(a.p.x), to_json(a.p.y)};
    if (a.weight() == 0.0) {
      atoms.push_back({{"p", p}, {"measure", to_json(a.measure)}});
    } else {
      json alpha = to_json(a.density());
      alpha["dim"] = 2;
      atoms.push_back({{"p", p}, {"weight", a.weight()}, {"alpha", alpha}});
    }
  }
  return {{"regular", to_json(d.regular())}, {"atoms", atoms}};
}

// --- games -----------------------------------------------------------------------

template <Scalar T>
GameSpec<T> game(const json& j, const std::string& where = "game") {
  const auto [a, b] = interval<T>(field(j, "X1", where), where + ".X1");
  const auto [c, d] = interval<T>(field(j, "X2", where), where + ".X2");
  std::optional<Rect<T>> omega;
  if (j.contains("Omega1") || j.contains("Omega2")) {
    const auto [o1, o2] = interval<T>(field(j, "Omega1", where), where + ".Omega1");
    const auto [o3, o4] = interval<T>(field(j, "Omega2", where), where + ".Omega2");
    omega = Rect<T>{o1, o2, o3, o4};
  }
  const json& pj = field(j, "payoff", where);
  PiecewiseFn2D<T> rho = fn2d<T>(pj, where + ".payoff", omega ? &*omega : nullptr);
  if (omega && !(rho.domain() == *omega)) fail(where + ".payoff.domain", "must equal Omega1 x Omega2");
  try {
    return GameSpec<T>(a, b, c, d, std::move(rho));
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
}

template <Scalar T>
json to_json(const GameSpec<T>& g) {
  const auto& om = g.omega();
  return {{"X1", {to_json(g.x1_lo), to_json(g.x1_hi)}},
          {"X2", {to_json(g.x2_lo), to_json(g.x2_hi)}},
          {"Omega1", {to_json(om.x_lo), to_json(om.x_hi)}},
          {"Omega2", {to_json(om.y_lo), to_json(om.y_hi)}},
          {"payoff", to_json(g.payoff)}};
}

template <Scalar T>
json to_json(const CornerLimits<T>& c) {
  return {{"point", {to_json(c.point.x), to_json(c.point.y)}},
          {"a_r_plus", to_json(c.a_r_plus)},
          {"a_r_minus", to_json(c.a_r_minus)},
          {"a_l_plus", to_json(c.a_l_plus)},
          {"a_l_minus", to_json(c.a_l_minus)},
          {"b_r_plus", to_json(c.b_r_plus)},
          {"b_r_minus", to_json(c.b_r_minus)},
          {"b_l_plus", to_json(c.b_l_plus)},
          {"b_l_minus", to_json(c.b_l_minus)}};
}

template <Scalar T>
json to_json(const ConditionReport<T>& r) {
  json checks = json::object();
  for (const auto& c : r.checks) checks[c.name] = c.ok;
  return {{"pass", r.pass}, {"A", to_json(r.A)}, {"checks", checks}};
}

template <Scalar T>
json to_json(const RPrimeSolution<T>& s) {
  json others = json::array();
  for (const auto& p : s.other_passing) others.push_back({to_json(p.x), to_json(p.y)});
  return {{"point", {to_json(s.point.x), to_json(s.point.y)}},
          {"beta1", to_json(s.beta1)},
          {"beta2", to_json(s.beta2)},
          {"value", to_json(s.value)},
          {"shift", to_json(s.shift)},
          {"approx", {{"beta1", to_double(s.beta1)}, {"beta2", to_double(s.beta2)}, {"value", to_double(s.value)}}},
          {"limits", to_json(s.limits)},
          {"conditions", to_json(s.report)},
          {"other_passing", others}};
}

template <Scalar T>
json to_json(const CandidateVerdict<T>& v) {
  return {{"point", {to_json(v.point.x), to_json(v.point.y)}},
          {"limits", to_json(v.limits)},
          {"conditions", to_json(v.report)},
          {"failures", v.report.failures()}};
}

inline json to_json(const SaddleReport& r) {
  return {{"samples", r.samples},
          {"min_margin1", r.min_margin1},
          {"min_margin2", r.min_margin2},
          {"undefined", r.undefined},
          {"passed", r.passed}};
}

}  // namespace io
}  // namespace regudist
