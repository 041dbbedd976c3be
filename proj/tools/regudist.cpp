// regudist: command-line front end for the regulated-distribution library.

#include "regudist/regudist.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace regudist;

enum ExitCode { kOk = 0, kInternal = 1, kSchema = 2, kNoSolution = 3 };

struct RunConfig {
  std::string command;
  std::string input;
  std::string output;
  int grid_n = 101;
  double eps = 1e-3;
  long kmax = 1000;
  std::uint64_t seed = 0;
  std::string format = "json";
  bool use_float = false;
  int samples = 100;
  long max_iters = 1'000'000;
};

json read_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot read input file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("input is not valid JSON: ") + e.what());
  }
}

/// A table rendered either as CSV rows or as a JSON array of objects.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;

  std::string csv() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << "\n";
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << (r[i].is_string() ? r[i].get<std::string>() : r[i].dump());
      os << "\n";
    }
    return os.str();
  }
  json as_json() const {
    json out = json::array();
    for (const auto& r : rows) {
      json o = json::object();
      for (std::size_t i = 0; i < columns.size(); ++i) o[columns[i]] = r[i];
      out.push_back(o);
    }
    return out;
  }
};

/// Flattens a JSON object into (key, value) rows for CSV output.
void flatten(const json& j, const std::string& prefix, Table& t) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, t);
  } else if (j.is_array() && !j.empty() && (j[0].is_object() || j[0].is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", t);
  } else {
    t.rows.push_back({prefix, j.is_string() ? j : json(j.dump())});
  }
}

std::string render(const json& doc, const RunConfig& cfg) {
  if (cfg.format == "csv") {
    Table t{{"key", "value"}, {}};
    flatten(doc, "", t);
    return t.csv();
  }
  return doc.dump(2) + "\n";
}

// --- commands -----------------------------------------------------------------

template <Scalar T>
int cmd_solve(const json& in, const RunConfig& cfg, json& out) {
  const GameSpec<T> g = io::game<T>(in);
  std::vector<Point<T>> extra;
  if (in.contains("candidates")) {
    if (!in["candidates"].is_array()) throw SchemaError("game.candidates: expected an array of points");
    for (std::size_t i = 0; i < in["candidates"].size(); ++i)
      extra.push_back(io::point<T>(in["candidates"][i], "game.candidates[" + std::to_string(i) + "]"));
  }
  const auto res = solve_rprime(g, extra);
  if (!res.solution) {
    json verdicts = json::array();
    for (const auto& v : res.verdicts) verdicts.push_back(io::to_json(v));
    out = {{"status", "no-solution"}, {"shift", io::to_json(res.shift)}, {"candidates", verdicts}};
    return kNoSolution;
  }
  out = io::to_json(*res.solution);
  out["status"] = "solved";
  out["saddle_verify"] = io::to_json(saddle_verify(g, *res.solution, cfg.samples, cfg.seed));
  return kOk;
}

template <Scalar T>
json grid_strategy(const std::vector<GridPoint<T>>& pts, const std::vector<double>& probs) {
  json out = json::array();
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (probs[i] > 0) out.push_back({{"x", io::to_json(pts[i].x)}, {"side", pts[i].side}, {"prob", probs[i]}});
  return out;
}

template <Scalar T>
json witness_json(const std::vector<WitnessSample<T>>& ws) {
  json out = json::array();
  for (const auto& w : ws)
    out.push_back({{"kind", w.kind},
                   {"bound", to_double(w.bound)},
                   {"window", {to_double(w.window_lo), to_double(w.window_hi)}}});
  return out;
}

template <Scalar T>
int cmd_analyze(const json& in, const RunConfig& cfg, json& out) {
  const GameSpec<T> g = io::game<T>(in);
  const auto pure = pure_analysis(g, cfg.grid_n);
  const auto mixed = mixed_analysis(g, cfg.grid_n, cfg.eps, cfg.max_iters, cfg.seed);
  const auto& m = mixed.matrix;
  out = {{"pure", {{"grid_n", cfg.grid_n},
                   {"supinf", io::to_json(pure.supinf)},
                   {"infsup", io::to_json(pure.infsup)},
                   {"gap", io::to_json(pure.gap)}}},
         {"mixed",
          {{"matrix_value", m.value},
           {"lower", m.lower},
           {"upper", m.upper},
           {"residual", m.upper - m.lower},
           {"iterations", m.iterations},
           {"converged", m.converged},
           {"strategies", {{"x1", grid_strategy(mixed.grid.x1, m.x)}, {"x2", grid_strategy(mixed.grid.x2, m.y)}}},
           {"witness",
            {{"eps", cfg.eps},
             {"supinf_upper", to_double(mixed.witness.supinf_upper)},
             {"infsup_lower", to_double(mixed.witness.infsup_lower)},
             {"player2_witnesses", witness_json(mixed.witness.player2_witnesses)},
             {"player1_witnesses", witness_json(mixed.witness.player1_witnesses)}}}}}};
  return kOk;
}

template <Scalar T>
Table deltaseq_table(const json& in, const RunConfig& cfg, json& meta) {
  const json& dim = io::field(in, "dim", "deltaseq");
  const json seq = in.value("sequence", json{{"kind", "builtin"}});
  const std::string kind = io::field(seq, "kind", "deltaseq.sequence").get<std::string>();
  if (kind != "builtin" && kind != "step" && kind != "radial")
    throw SchemaError("deltaseq.sequence.kind: expected builtin, step or radial");
  const bool builtin = kind == "builtin";
  const auto ks = builtin ? all_ks(cfg.kmax) : log_spaced_ks(cfg.kmax);
  DeltaSeqReport rep;
  if (dim == 1) {
    const auto [lo, hi] = io::interval<T>(io::field(in, "domain", "deltaseq"), "deltaseq.domain");
    const T p = io::scalar<T>(io::field(in, "p", "deltaseq"), "deltaseq.p");
    const auto alpha = io::angular_density<T>(io::field(in, "alpha", "deltaseq"), "deltaseq.alpha");
    if (alpha.dim() != 1) throw SchemaError("deltaseq.alpha: expected a 1D density");
    const T r = io::scalar<T>(io::field(in, "r", "deltaseq"), "deltaseq.r");
    std::vector<Cone1D> cones;
    const json& cj = io::field(in, "cones", "deltaseq");
    if (!cj.is_array()) throw SchemaError("deltaseq.cones: expected an array");
    for (const auto& c : cj) {
      if (!c.is_string()) throw SchemaError("deltaseq.cones: 1D cones are \"+\", \"-\" or \"+-\"");
      try {
        cones.push_back(parse_cone_1d(c.get<std::string>()));
      } catch (const std::invalid_argument& e) {
        throw SchemaError(std::string("deltaseq.cones: ") + e.what());
      }
    }
    std::optional<Sequence1D> user;
    if (kind == "step") {
      // ω_k = k h_r on (p, p + w_r/k) and k h_l on (p − w_l/k, p).
      const auto rr = io::scalar_list<double>(io::field(seq, "right", "deltaseq.sequence"), "deltaseq.sequence.right");
      const auto ll = io::scalar_list<double>(io::field(seq, "left", "deltaseq.sequence"), "deltaseq.sequence.left");
      if (rr.size() != 2 || ll.size() != 2) throw SchemaError("deltaseq.sequence: right/left are [width, height]");
      const double pd = to_double(p);
      user = [=](long k, double x) {
        const double kd = static_cast<double>(k);
        if (x > pd && x < pd + rr[0] / kd) return kd * rr[1];
        if (x < pd && x > pd - ll[0] / kd) return kd * ll[1];
        return 0.0;
      };
    } else if (kind == "radial") {
      throw SchemaError("deltaseq.sequence: radial sequences are two-dimensional");
    }
    try {
      rep = verify_delta_sequence_1d<T>(lo, hi, p, alpha.beta(), cones, r, ks, user);
    } catch (const std::out_of_range& e) {
      throw SchemaError(std::string("deltaseq: ") + e.what());
    }
  } else if (dim == 2) {
    const Rect<double> dom = io::rect<double>(io::field(in, "domain", "deltaseq"), "deltaseq.domain");
    const auto p = io::point<double>(io::field(in, "p", "deltaseq"), "deltaseq.p");
    const auto alpha = io::angular_density<double>(io::field(in, "alpha", "deltaseq"), "deltaseq.alpha");
    if (alpha.dim() != 2) throw SchemaError("deltaseq.alpha: expected a 2D density");
    const double r = io::scalar<double>(io::field(in, "r", "deltaseq"), "deltaseq.r");
    std::vector<Arc> cones;
    const json& cj = io::field(in, "cones", "deltaseq");
    if (!cj.is_array()) throw SchemaError("deltaseq.cones: expected an array of [lo, hi] arcs");
    for (std::size_t i = 0; i < cj.size(); ++i) {
      const std::string w = "deltaseq.cones[" + std::to_string(i) + "]";
      if (!cj[i].is_array() || cj[i].size() != 2) throw SchemaError(w + ": expected [lo, hi]");
      cones.push_back({io::angle(cj[i][0], w), io::angle(cj[i][1], w)});
    }
    std::optional<Sequence2D> user;
    if (kind == "radial") {
      // ω_k = k² h α(θ) on the disk of radius w/k.
      const double h = io::scalar<double>(io::field(seq, "height", "deltaseq.sequence"), "deltaseq.sequence.height");
      const double w = io::scalar<double>(io::field(seq, "radius", "deltaseq.sequence"), "deltaseq.sequence.radius");
      const AngularFn a = alpha.arcs();
      user = [=](long k, double x, double y) {
        const double kd = static_cast<double>(k), dx = x - p.x, dy = y - p.y;
        if (dx * dx + dy * dy >= (w / kd) * (w / kd)) return 0.0;
        return kd * kd * h * a(std::atan2(dy, dx));
      };
    } else if (kind == "step") {
      throw SchemaError("deltaseq.sequence: step sequences are one-dimensional");
    }
    try {
      rep = verify_delta_sequence_2d(dom, p.x, p.y, alpha.arcs(), cones, r, ks, cfg.seed, user);
    } catch (const std::out_of_range& e) {
      throw SchemaError(std::string("deltaseq: ") + e.what());
    } catch (const std::invalid_argument& e) {
      throw SchemaError(std::string("deltaseq: ") + e.what());
    }
  } else {
    throw SchemaError("deltaseq.dim: expected 1 or 2");
  }
  Table t{{"k", "cone_lo", "cone_hi", "integral", "target", "abs_error"}, {}};
  for (const auto& row : rep.rows) t.rows.push_back({row.k, row.cone_lo, row.cone_hi, row.integral, row.target, row.abs_error});
  meta = {{"converse_ratio", rep.converse_ratio},
          {"skipped_k", rep.skipped_k},
          {"quadrature_converged", rep.quadrature_converged},
          {"sequence", kind}};
  return t;
}

template <Scalar T>
int cmd_pair_or_integrate(const json& in, bool integrate, json& out) {
  const json& dj = io::field(in, "distribution", "input");
  const bool two_d = io::is_2d_fn(io::field(dj, "regular", "distribution"));
  json atoms = json::array();
  if (!two_d) {
    const auto f = io::distribution1d<T>(dj);
    PiecewiseFn1D<T> phi = PiecewiseFn1D<T>::zero(f.lo(), f.hi());
    if (integrate) {
      const auto [a, b] = io::interval<T>(io::field(in, "set", "input"), "set");
      if (!(f.lo() < a && b < f.hi())) throw SchemaError("set: closure must lie inside the domain");
      phi = PiecewiseFn1D<T>::indicator(f.lo(), f.hi(), a, b);
    } else {
      phi = io::fn1d<T>(io::field(in, "test", "input"), "test");
    }
    T value;
    try {
      value = f.pair(phi);
    } catch (const std::domain_error& e) {
      throw SchemaError(e.what());
    }
    for (const auto& [p, c] : f.atom_contributions(phi)) atoms.push_back({{"p", io::to_json(p)}, {"contribution", io::to_json(c)}});
    out = {{"value", io::to_json(value)}, {"approx", to_double(value)}, {"atoms", atoms}};
  } else {
    const auto f = io::distribution2d<T>(dj);
    const Rect<T> dom = f.domain();
    PiecewiseFn2D<T> phi = integrate ? PiecewiseFn2D<T>::indicator(dom, io::region_set<T>(io::field(in, "set", "input"), "set"))
                                     : io::fn2d<T>(io::field(in, "test", "input"), "test", &dom);
    T value;
    try {
      value = f.pair(phi);
    } catch (const std::domain_error& e) {
      throw SchemaError(e.what());
    }
    for (const auto& [p, c] : f.atom_contributions(phi))
      atoms.push_back({{"p", {io::to_json(p.x), io::to_json(p.y)}}, {"contribution", c}});
    out = {{"value", io::to_json(value)}, {"approx", to_double(value)}, {"atoms", atoms}};
  }
  return kOk;
}

template <Scalar T>
int dispatch(const RunConfig& cfg, std::string& text) {
  const json in = read_input(cfg.input);
  json out;
  int code = kOk;
  if (cfg.command == "solve") {
    code = cmd_solve<T>(in, cfg, out);
  } else if (cfg.command == "analyze") {
    code = cmd_analyze<T>(in, cfg, out);
  } else if (cfg.command == "deltaseq") {
    json meta;
    const Table t = deltaseq_table<T>(in, cfg, meta);
    if (cfg.format == "csv") {
      text = t.csv();
      return kOk;
    }
    out = meta;
    out["rows"] = t.as_json();
  } else {
    code = cmd_pair_or_integrate<T>(in, cfg.command == "integrate", out);
  }
  text = render(out, cfg);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributions with regulated test functions and R'-mixed game solutions"};
  app.require_subcommand(1);
  RunConfig cfg;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"solve", "R'-mixed equilibrium of a game, with saddle verification"},
      {"analyze", "pure and mixed grid analysis of a game"},
      {"deltaseq", "cone-ball convergence table for a delta sequence"},
      {"pair", "pair a distribution with a test function"},
      {"integrate", "integrate a distribution over an interval or region set"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--input,-i", cfg.input, "input JSON file")->required();
    sub->add_option("--output,-o", cfg.output, "output file (default: stdout)");
    sub->add_option("--grid", cfg.grid_n, "grid size per axis")->check(CLI::Range(2, 100000));
    sub->add_option("--eps", cfg.eps, "tolerance for the mixed analysis")->check(CLI::PositiveNumber);
    sub->add_option("--kmax", cfg.kmax, "largest k of the delta sequence")->check(CLI::Range(1L, 100000000L));
    sub->add_option("--seed", cfg.seed, "64-bit seed for sampled strategies");
    sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--samples", cfg.samples, "opponent samples for saddle verification")->check(CLI::Range(1, 1000000));
    sub->add_option("--max-iters", cfg.max_iters, "fictitious-play iteration cap")->check(CLI::Range(1L, 1000000000L));
    sub->add_flag("--float", cfg.use_float, "use floating point instead of exact rationals");
    sub->callback([&cfg, name = name] { cfg.command = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kSchema;
  }

  std::string text;
  int code = kOk;
  try {
    code = cfg.use_float ? dispatch<double>(cfg, text) : dispatch<Rational>(cfg, text);
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kSchema;
  } catch (const json::exception& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kSchema;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  if (cfg.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(cfg.output);
    if (!os) {
      std::cerr << "cannot write output file '" << cfg.output << "'\n";
      return kInternal;
    }
    os << text;
  }
  return code;
}
