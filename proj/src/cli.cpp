#include "icm/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "icm/decompose.hpp"
#include "icm/entropy.hpp"
#include "icm/oracle.hpp"

namespace icm {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void svg_line(std::ostream& out, double x1, double y1, double x2, double y2, const char* style) {
  out << "  <line x1=\"" << num(x1) << "\" y1=\"" << num(1.0 - y1) << "\" x2=\"" << num(x2) << "\" y2=\""
      << num(1.0 - y2) << "\" " << style << "/>\n";
}

struct Options {
  std::vector<std::string> positional;
  std::string out_path;
  std::string format;
  std::string method;
  std::string kind = "forward";
  int iters = 12;
  int oracle = 0;
};

std::size_t breakpoint_cap() {
  const char* env = std::getenv("ICM_BREAKPOINT_CAP");
  if (!env || !*env) return kDefaultBreakpointCap;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0) throw CLI::ValidationError("ICM_BREAKPOINT_CAP", "must be a positive integer");
  return static_cast<std::size_t>(v);
}

Rational parse_rational_arg(const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const std::exception&) {
    throw CLI::ValidationError("argument", "not a rational: '" + text + "'");
  }
}

int parse_int_arg(const std::string& text) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw CLI::ValidationError("argument", "not an integer: '" + text + "'");
  }
}

void expect_args(const Options& o, std::size_t lo, std::size_t hi, const std::string& verb) {
  if (o.positional.size() < lo || o.positional.size() > hi)
    throw CLI::ValidationError(verb, "expected " + (lo == hi ? std::to_string(lo) : std::to_string(lo) + "-" + std::to_string(hi)) +
                                         " argument(s), got " + std::to_string(o.positional.size()));
}

void print_features(std::ostream& out, const std::vector<GraphFeature>& fs) {
  for (const auto& f : fs) out << f.location.x << ' ' << f.location.y << ' ' << to_string(f.kind) << '\n';
}

void print_report(std::ostream& out, const Report& r) {
  for (const auto& c : r.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) out << " -- " << c.detail;
    out << '\n';
  }
}

struct MapEntropy {
  double value = 0.0;
  std::optional<long> log_of;
  std::string method;
};

MapEntropy map_entropy(const PLMap& f, const std::string& method, int iters, std::size_t cap, std::ostream* detail) {
  MapEntropy e;
  if (method != "lap") {
    if (auto m = markov_partition(f)) {
      e.method = "markov";
      e.value = entropy_markov(*m);
      e.log_of = m->integer_radius;
      if (detail)
        *detail << "markov partition: " << m->partition.size() << " points, spectral radius in [" << num(m->lower)
                << ", " << num(m->upper) << "]\n";
      return e;
    }
    if (method == "markov") throw PreconditionError("no Markov partition within the orbit bound");
  }
  const LapSequence s = entropy_lap(f, iters, cap);
  e.method = "lap";
  e.value = s.estimate;
  if (detail)
    for (const auto& [k, n] : s.laps) *detail << "lap(f^" << k << ") = " << n << '\n';
  return e;
}

std::string entropy_text(const MapEntropy& e) {
  if (e.log_of) return "log " + std::to_string(*e.log_of) + " = " + num(e.value);
  return num(e.value);
}

int dispatch(const std::string& verb, const Options& o, std::ostream& out) {
  const std::size_t cap = breakpoint_cap();
  auto map_at = [&](std::size_t i) { return read_pwl_file(o.positional.at(i)); };

  if (verb == "tent") {
    expect_args(o, 1, 1, verb);
    write_pwl(out, tent(parse_int_arg(o.positional[0])));
  } else if (verb == "eval") {
    expect_args(o, 2, 2, verb);
    out << eval(map_at(0), parse_rational_arg(o.positional[1])) << '\n';
  } else if (verb == "compose") {
    expect_args(o, 2, 2, verb);
    write_pwl(out, compose(map_at(0), map_at(1), cap));
  } else if (verb == "iterate") {
    expect_args(o, 2, 2, verb);
    write_pwl(out, iterate(map_at(0), parse_int_arg(o.positional[1]), cap));
  } else if (verb == "commute" || verb == "strong-commute") {
    expect_args(o, 2, 2, verb);
    const PLMap f = map_at(0), g = map_at(1);
    const bool yes = verb == "commute" ? commute(f, g) : strongly_commute(f, g);
    out << (yes ? "true" : "false") << '\n';
    return yes ? exit_code::ok : exit_code::negative;
  } else if (verb == "graph") {
    expect_args(o, 2, 2, verb);
    const PLMap f = map_at(0), g = map_at(1);
    if (o.kind != "forward" && o.kind != "pullback")
      throw CLI::ValidationError("--kind", "must be forward or pullback");
    if (!o.format.empty() && o.format != "csv" && o.format != "svg")
      throw CLI::ValidationError("--format", "graph supports csv or svg");
    const SegmentSet s = o.kind == "forward" ? forward_graph(f, g) : pullback_graph(f, g);
    emit_graph(out, s, o.format == "svg" ? GraphFormat::svg : GraphFormat::csv, critical_points(f).xs(),
               critical_points(g).xs());
  } else if (verb == "hats") {
    expect_args(o, 2, 2, verb);
    print_features(out, hats(map_at(0), map_at(1)));
  } else if (verb == "endpoints") {
    expect_args(o, 2, 2, verb);
    print_features(out, endpoints(map_at(0), map_at(1)));
  } else if (verb == "profile") {
    expect_args(o, 2, 2, verb);
    const Profile p = profile(map_at(0), map_at(1));
    out << "h =";
    for (int h : p.hat_counts) out << ' ' << h;
    out << "\ne =";
    for (int e : p.endpoint_counts) out << ' ' << e;
    out << "\ntotal hats: " << p.total_hats << "\ntotal endpoints: " << p.total_endpoints
        << "\ninequalities: " << (p.inequalities_hold() ? "hold" : "violated") << '\n';
  } else if (verb == "verify") {
    expect_args(o, 2, 2, verb);
    const PLMap f = map_at(0), g = map_at(1);
    Report r = verify_strong_consequences(f, g);
    if (o.oracle > 0)
      r.add("grid oracle agrees (N=" + std::to_string(o.oracle) + ")", brute_force_strong_commute(f, g, o.oracle));
    print_report(out, r);
    return r.all_passed() ? exit_code::ok : exit_code::negative;
  } else if (verb == "decompose") {
    expect_args(o, 2, 2, verb);
    if (!o.format.empty() && o.format != "json") throw CLI::ValidationError("--format", "decompose emits json");
    out << to_json(decompose(map_at(0), map_at(1))) << '\n';
  } else if (verb == "fixed-points") {
    expect_args(o, 1, 1, verb);
    const FixedSet s = fixed_points(map_at(0));
    for (const auto& x : s.isolated) out << "point " << x << '\n';
    for (const auto& j : s.segments) out << "segment " << j.lo << ' ' << j.hi << '\n';
  } else if (verb == "common-fixed-point") {
    expect_args(o, 2, 2, verb);
    out << common_fixed_point(map_at(0), map_at(1)) << '\n';
  } else if (verb == "entropy") {
    expect_args(o, 1, 2, verb);
    if (!o.method.empty() && o.method != "lap" && o.method != "markov")
      throw CLI::ValidationError("--method", "must be lap or markov");
    if (o.iters < 1) throw CLI::ValidationError("--iters", "must be positive");
    if (o.positional.size() == 1) {
      const MapEntropy e = map_entropy(map_at(0), o.method, o.iters, cap, &out);
      out << "h = " << entropy_text(e) << " (" << e.method << ")\n";
    } else {
      const PLMap f = map_at(0), g = map_at(1);
      if (!strongly_commute(f, g)) throw PreconditionError("entropy formula requires strongly commuting maps");
      const MapEntropy ef = map_entropy(f, o.method, o.iters, cap, nullptr);
      const MapEntropy eg = map_entropy(g, o.method, o.iters, cap, nullptr);
      out << "h(f) = " << entropy_text(ef) << " (" << ef.method << ")\n";
      out << "h(g) = " << entropy_text(eg) << " (" << eg.method << ")\n";
      out << "h = " << entropy_text(ef.value >= eg.value ? ef : eg) << '\n';
    }
  } else if (verb == "primary-values") {
    expect_args(o, 1, 1, verb);
    const PrimaryValues pv = primary_critical_values(map_at(0));
    for (std::size_t i = 0; i < pv.values.size(); ++i) {
      out << "v_" << pv.label(i) << " = " << pv.values[i];
      if ((i == 0 && pv.zero_conventional) || (i + 1 == pv.values.size() && pv.top_conventional))
        out << " (conventional)";
      out << "  t = " << (pv.exacting[i] ? pv.exacting[i]->str() : std::string("undetermined")) << '\n';
    }
    out << "orientation: " << to_string(pv.orientation) << '\n';
  }
  return exit_code::ok;
}

}  // namespace

void emit_graph(std::ostream& out, const SegmentSet& s, GraphFormat format, const std::vector<Rational>& grid_x,
                const std::vector<Rational>& grid_y) {
  if (format == GraphFormat::csv) {
    write_csv(out, s);
    return;
  }
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"480\" viewBox=\"-0.05 -0.05 1.1 1.1\">\n"
      << "  <rect x=\"0\" y=\"0\" width=\"1\" height=\"1\" fill=\"none\" stroke=\"black\" stroke-width=\"0.004\"/>\n";
  const char* grid = "stroke=\"gray\" stroke-width=\"0.002\" stroke-dasharray=\"0.01,0.01\"";
  for (const auto& x : grid_x) svg_line(out, x.to_double(), 0.0, x.to_double(), 1.0, grid);
  for (const auto& y : grid_y) svg_line(out, 0.0, y.to_double(), 1.0, y.to_double(), grid);
  for (const auto& seg : s.segments()) {
    if (seg.is_point()) {
      out << "  <circle cx=\"" << num(seg.a.x.to_double()) << "\" cy=\"" << num(1.0 - seg.a.y.to_double())
          << "\" r=\"0.008\" fill=\"black\"/>\n";
      continue;
    }
    svg_line(out, seg.a.x.to_double(), seg.a.y.to_double(), seg.b.x.to_double(), seg.b.y.to_double(),
             "stroke=\"black\" stroke-width=\"0.006\"");
  }
  out << "</svg>\n";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  static const std::map<std::string, std::string> verbs = {
      {"tent", "print the symmetric n-tent map: tent N"},
      {"eval", "evaluate a map: eval MAP X"},
      {"compose", "composition F∘G: compose F G"},
      {"iterate", "k-fold iterate: iterate F K"},
      {"commute", "decide F∘G = G∘F"},
      {"strong-commute", "decide strong commutation of F and G"},
      {"graph", "emit the graph of F∘G⁻¹ (--kind forward) or G⁻¹∘F (--kind pullback)"},
      {"hats", "list hats of G⁻¹∘F"},
      {"endpoints", "list endpoints of G⁻¹∘F"},
      {"profile", "hat and endpoint counts with the inequality check"},
      {"verify", "check consequences of strong commutation"},
      {"decompose", "invariant-interval decomposition as JSON"},
      {"fixed-points", "exact fixed-point set of F"},
      {"common-fixed-point", "least common fixed point of F and G"},
      {"entropy", "topological entropy of F, or of the pair F G"},
      {"primary-values", "primary critical values and exacting points of F"},
  };

  CLI::App app{"Exact piecewise-linear interval dynamics", "icm"};
  app.require_subcommand(1, 1);
  Options o;
  app.add_option("--out", o.out_path, "write output to PATH instead of stdout");
  app.add_option("--format", o.format, "csv|svg for graph, json for decompose");
  app.add_option("--method", o.method, "entropy method: lap|markov");
  app.add_option("--iters", o.iters, "number of iterates for the lap method")->check(CLI::PositiveNumber);
  app.add_option("--kind", o.kind, "graph kind: forward|pullback");
  app.add_option("--oracle", o.oracle, "also run the grid oracle with resolution N (verify)");
  for (const auto& [name, help] : verbs) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    sub->add_option("args", o.positional, "positional arguments");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_code::usage;
  }
  const std::string verb = app.get_subcommands().front()->get_name();

  std::ostringstream buffer;
  int code = exit_code::ok;
  try {
    code = dispatch(verb, o, buffer);
  } catch (const CLI::Error& e) {
    err << "icm " << verb << ": " << e.what() << '\n';
    return exit_code::usage;
  } catch (const ParseError& e) {
    err << "icm " << verb << ": parse error, " << e.what() << '\n';
    return exit_code::usage;
  } catch (const DomainError& e) {
    err << "icm " << verb << ": " << e.what() << '\n';
    return exit_code::usage;
  } catch (const PreconditionError& e) {
    err << "icm " << verb << ": precondition failed: " << e.what() << '\n';
    return exit_code::precondition;
  } catch (const ResourceError& e) {
    err << "icm " << verb << ": " << e.what() << '\n';
    return exit_code::resource;
  } catch (const Error& e) {
    err << "icm " << verb << ": " << e.what() << '\n';
    return exit_code::internal;
  }

  if (o.out_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(o.out_path);
    if (!(file << buffer.str())) {
      err << "icm " << verb << ": cannot write '" << o.out_path << "'\n";
      return exit_code::usage;
    }
  }
  return code;
}

}  // namespace icm
