#include "cotton/app/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>

#include "cotton/app/acceptance.hpp"
#include "cotton/app/report.hpp"
#include "cotton/app/spec_files.hpp"
#include "cotton/curvature.hpp"
#include "cotton/errors.hpp"
#include "cotton/geometry.hpp"
#include "cotton/sampling.hpp"

namespace cotton::app {
namespace {

/// Exit code and the two renderings of one command's result.
struct Report {
  int exit_code = kExitOk;
  Json json = Json::object();
  std::string text;
};

struct Context {
  bool exact = true;
  double tolerance = kDefaultFloatTolerance;
};

template <class S>
std::vector<std::vector<S>> convert_points(const std::vector<std::vector<Rational>>& points) {
  std::vector<std::vector<S>> out;
  for (const auto& p : points) {
    std::vector<S> q;
    for (const auto& x : p) q.push_back(scalar_from<S>(x));
    out.push_back(std::move(q));
  }
  return out;
}

template <class S>
double max_abs_double(const Tensor<S>& t) {
  double best = 0.0;
  for (const auto& x : t.data()) best = std::max(best, std::abs(to_double(x)));
  return best;
}

template <class S>
bool within(const S& defect, double bound) {
  if constexpr (is_exact_v<S>) {
    return defect.is_zero();
  } else {
    return std::abs(defect) <= bound;
  }
}

/// Coordinates as "p/q" strings in exact mode and as numbers in float mode.
Json point_json(const std::vector<std::string>& coords, const std::vector<std::string>& values, bool exact) {
  Json out = Json::object();
  for (std::size_t i = 0; i < coords.size(); ++i) {
    out[coords[i]] = exact ? Json(values[i]) : Json(std::strtod(values[i].c_str(), nullptr));
  }
  return out;
}

template <class S>
std::vector<std::string> point_strings(std::span<const S> p) {
  std::vector<std::string> out;
  for (const auto& x : p) out.push_back(scalar_text(x));
  return out;
}

std::string point_line(const std::vector<std::string>& coords, const std::vector<std::string>& values) {
  std::string out;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) out += ", ";
    out += coords[i] + "=" + values[i];
  }
  return out;
}

/// Evidence norms are stored as text; float mode re-reads them as numbers
/// so the JSON carries doubles.
Json norm_json(const std::string& text, bool exact) {
  if (exact || text.empty()) return text;
  return std::strtod(text.c_str(), nullptr);
}

/// Nonzero components of a tensor, keyed by comma-joined coordinate names.
template <class S>
void add_components(const Tensor<S>& t, const std::vector<std::string>& coords, const std::string& symbol,
                    const std::string& title, Json& json, std::ostringstream& text) {
  Json comps = Json::object();
  std::ostringstream lines;
  for (std::size_t k = 0; k < t.size(); ++k) {
    const S& v = t.at_flat(k);
    if (is_zero(v)) continue;
    const auto idx = t.unflatten(k);
    comps[index_key(coords, idx)] = scalar_json(v);
    lines << "    " << symbol << "_" << index_label(coords, idx) << " = " << scalar_text(v) << "\n";
  }
  json = comps;
  if (comps.empty()) {
    text << "  " << title << ": all components zero\n";
  } else {
    text << "  " << title << ":\n" << lines.str();
  }
}

// ---------------------------------------------------------------- curvature

template <class S>
Report curvature_report(const MetricChart<S>& chart, const std::vector<std::vector<Rational>>& rational_points,
                        const Context& ctx) {
  Report rep;
  const auto& coords = chart.coords();
  const auto points = convert_points<S>(rational_points);
  std::ostringstream text;
  text << "chart coordinates: ";
  for (std::size_t i = 0; i < coords.size(); ++i) text << (i ? ", " : "") << coords[i];
  text << " (" << (ctx.exact ? "exact" : "float") << " mode)\n";
  if (points.empty()) text << "no points requested; use --at coord=value,...\n";

  Json jpoints = Json::array();
  bool all_ok = true;
  bool any_degenerate = false;
  for (const auto& p : points) {
    Json jp = Json::object();
    const auto values = point_strings<S>(p);
    jp["at"] = point_json(coords, values, ctx.exact);
    text << "\npoint " << point_line(coords, values) << "\n";
    try {
      const PointCurvature<S> pc = curvature_at<S>(chart, p, kDefaultJetOrder);
      double scale = 1.0;
      for (std::size_t i = 0; i < chart.dim(); ++i) {
        for (std::size_t j = 0; j < chart.dim(); ++j) {
          scale = std::max(scale, std::abs(to_double(pc.metric.g(i, j).value())));
        }
      }
      Json comp;
      add_components(tensor_values(pc.ricci), coords, "R", "Ricci", comp, text);
      jp["ricci"] = comp;
      jp["scalar"] = scalar_json(pc.scalar.value());
      text << "  scalar curvature: " << scalar_text(pc.scalar.value()) << "\n";
      add_components(tensor_values(pc.schouten), coords, "P", "Schouten", comp, text);
      jp["schouten"] = comp;
      add_components(tensor_values(pc.cotton), coords, "C", "Cotton", comp, text);
      jp["cotton"] = comp;
      add_components(tensor_values(*pc.nabla_cotton), coords, "DC", "nabla Cotton (derivative index first)",
                     comp, text);
      jp["nabla_cotton"] = comp;
      if (chart.dim() >= 3) {
        add_components(tensor_values(weyl(pc.metric, pc.riemann, pc.schouten)), coords, "W", "Weyl", comp, text);
        jp["weyl"] = comp;
      } else {
        jp["weyl"] = nullptr;
        text << "  Weyl: not defined below dimension 3\n";
      }

      const auto d = cotton_symmetry_defects(pc);
      const S div = div_schouten_defect(pc);
      const double cbound = ctx.tolerance * std::max(1.0, max_abs_double(tensor_values(pc.cotton))) * scale;
      const double pbound = ctx.tolerance * std::max(1.0, max_abs_double(tensor_values(pc.nabla_schouten))) * scale;
      const bool ok_anti = within(d.antisymmetry, cbound);
      const bool ok_cyc = within(d.cyclic, cbound);
      const bool ok_tr = within(d.trace, cbound);
      const bool ok_div = within(div, pbound);
      const bool ok = ok_anti && ok_cyc && ok_tr && ok_div;
      all_ok = all_ok && ok;
      Json sym = Json::object();
      sym["antisymmetry"] = {{"defect", scalar_json(d.antisymmetry)}, {"ok", ok_anti}};
      sym["cyclic"] = {{"defect", scalar_json(d.cyclic)}, {"ok", ok_cyc}};
      sym["trace_free"] = {{"defect", scalar_json(d.trace)}, {"ok", ok_tr}};
      sym["div_schouten"] = {{"defect", scalar_json(div)}, {"ok", ok_div}};
      jp["symmetries"] = sym;
      auto mark = [](bool b) { return b ? "ok" : "FAILED"; };
      text << "  Cotton symmetries: antisymmetry " << scalar_text(d.antisymmetry) << " [" << mark(ok_anti)
           << "], cyclic " << scalar_text(d.cyclic) << " [" << mark(ok_cyc) << "], trace-free "
           << scalar_text(d.trace) << " [" << mark(ok_tr) << "]\n";
      text << "  div P - d(tr P): " << scalar_text(div) << " [" << mark(ok_div) << "]\n";
    } catch (const DegenerateMetric& e) {
      any_degenerate = true;
      jp["error"] = e.what();
      text << "  error: " << e.what() << "\n";
    }
    jpoints.push_back(std::move(jp));
  }
  rep.json["points"] = std::move(jpoints);
  rep.json["checks_passed"] = all_ok;
  rep.exit_code = any_degenerate ? kExitPrecondition : (all_ok ? kExitOk : kExitCheckFailed);
  rep.text = text.str();
  return rep;
}

// ------------------------------------------------------------------ classify

template <class S>
Report classify_report(const MetricChart<S>& chart, const std::vector<std::vector<Rational>>& rational_points,
                       const Context& ctx, bool allow_skip, const std::string& sampling) {
  Report rep;
  const auto& coords = chart.coords();
  ClassifyOptions opts;
  opts.tolerance = ctx.tolerance;
  opts.allow_skip = allow_skip;
  const ChartClassification cls = classify_chart<S>(chart, convert_points<S>(rational_points), opts);

  std::ostringstream text;
  text << "verdict: " << to_string(cls.verdict) << "\n";
  text << "scope: chart-local verdict, sampled at " << cls.sample_count
       << " points of this chart; no global claim is made\n";
  text << "mode: " << cls.mode << ", samples: " << sampling << "\n";
  Json evidence = Json::array();
  text << "evidence (max |C|, max |nabla C|):\n";
  for (const auto& e : cls.evidence) {
    Json je = Json::object();
    je["point"] = point_json(coords, e.point, ctx.exact);
    je["skipped"] = e.skipped;
    je["note"] = e.note;
    je["cotton_norm"] = norm_json(e.cotton_norm, ctx.exact);
    je["nabla_cotton_norm"] = norm_json(e.nabla_cotton_norm, ctx.exact);
    je["cotton_vanishes"] = e.cotton_vanishes;
    je["nabla_cotton_vanishes"] = e.nabla_cotton_vanishes;
    evidence.push_back(std::move(je));
    text << "  " << point_line(coords, e.point) << ": ";
    if (e.skipped) {
      text << "skipped (" << e.note << ")\n";
    } else {
      text << e.cotton_norm << ", " << e.nabla_cotton_norm << "\n";
    }
  }
  if (cls.witness) {
    text << "witness of nabla C != 0: " << point_line(coords, cls.evidence[*cls.witness].point) << "\n";
    rep.json["witness"] = point_json(coords, cls.evidence[*cls.witness].point, ctx.exact);
  } else {
    rep.json["witness"] = nullptr;
  }
  rep.json["verdict"] = to_string(cls.verdict);
  rep.json["scope"] = "chart-local verdict";
  rep.json["sample_count"] = cls.sample_count;
  rep.json["sampling"] = sampling;
  rep.json["evidence"] = std::move(evidence);
  if (!ctx.exact) rep.json["tolerance"] = ctx.tolerance;
  rep.text = text.str();
  return rep;
}

// -------------------------------------------------------------- verify-model

/// Built-in sample grid used when neither --at nor --seed is given.
std::vector<std::vector<Rational>> default_model_points() {
  std::vector<std::vector<Rational>> pts;
  for (long k = 0; k < 20; ++k) pts.push_back({Rational(k - 9, 2), Rational(3 * k - 20, 7), Rational(2 * k - 19, 3)});
  return pts;
}

template <class S>
Report verify_model_report(const ModelSpec& spec, const std::vector<std::vector<Rational>>& points,
                           const Context& ctx) {
  Report rep;
  const auto checks = verify_model<S>(spec, convert_points<S>(points), ctx.tolerance);
  std::ostringstream text;
  text << "model metric (x^3 + a(t) x) dt^2 + dt ds + dx^2 with a(t) = " << spec.a().rebased({"t"}).to_string()
       << "\n";
  text << "mode: " << (ctx.exact ? "exact" : "float") << ", points: " << points.size() << "\n";
  Json jchecks = Json::array();
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.passed;
    text << (c.passed ? "PASS  " : "FAIL  ") << c.name;
    if (!c.detail.empty()) text << "  (" << c.detail << ")";
    text << "\n";
    jchecks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  text << (all ? "all " + std::to_string(checks.size()) + " checks passed\n" : "some checks FAILED\n");
  rep.json["a"] = spec.a().rebased({"t"}).to_string();
  rep.json["checks"] = std::move(jchecks);
  rep.json["passed"] = all;
  rep.json["point_count"] = points.size();
  if (!ctx.exact) rep.json["tolerance"] = ctx.tolerance;
  rep.exit_code = all ? kExitOk : kExitCheckFailed;
  rep.text = text.str();
  return rep;
}

// ----------------------------------------------------------------- decompose

template <class S>
Json vec_json(const Vec3<S>& v) {
  return vector_json<S>(std::span<const S>(v.data(), 3));
}

template <class S>
std::string vec_text(const Vec3<S>& v) {
  return "(" + scalar_text(v[0]) + ", " + scalar_text(v[1]) + ", " + scalar_text(v[2]) + ")";
}

template <class S>
Report decompose_report(const TensorSpec& spec, const Context& ctx) {
  Report rep;
  Matrix<S> gram(3, 3, S{0});
  Array27<S> t{};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) gram(i, j) = scalar_from<S>(spec.inner_product(i, j));
  }
  for (std::size_t k = 0; k < 27; ++k) t[k] = scalar_from<S>(spec.tensor[k]);
  const InnerProduct3<S> ip(gram);
  const double tol = ctx.exact ? 0.0 : ctx.tolerance;
  std::ostringstream text;
  text << "inner product of index " << ip.index() << " (" << (ctx.exact ? "exact" : "float") << " mode)\n";
  rep.json["index"] = ip.index();

  const SymmetryReport sym = check_cotton_like(t, ip, ctx.exact ? 1e-10 : ctx.tolerance);
  rep.json["cotton_like"] = sym.ok;
  if (!sym.ok) {
    const std::string where = std::to_string(sym.where[0] + 1) + "," + std::to_string(sym.where[1] + 1) + "," +
                              std::to_string(sym.where[2] + 1);
    rep.json["violation"] = {{"identity", sym.violation}, {"at", where}, {"defect", sym.defect}};
    text << "not Cotton-like: " << sym.violation << " fails at indices " << where << " (defect "
         << shortest(sym.defect) << ")\n";
    rep.exit_code = kExitPrecondition;
    rep.text = text.str();
    return rep;
  }

  const CottonLike<S> cl(t, ip, ctx.exact ? 1e-10 : ctx.tolerance);
  const CottonDecomposition<S> d = decompose(cl, ip, ctx.exact ? 1e-10 : tol);
  text << "kind: " << to_string(d.kind) << "\n";
  text << "kernel dimension: " << d.kernel.dim() << "\n";
  Json gens = Json::array();
  for (const auto& w : d.kernel.basis) {
    const auto cc = causal_character(w, ip, ctx.exact ? 1e-10 : ctx.tolerance);
    gens.push_back({{"vector", vec_json(w)}, {"causal_character", to_string(cc)}});
    text << "  " << vec_text(w) << "  " << to_string(cc) << "\n";
  }
  rep.json["kind"] = to_string(d.kind);
  rep.json["kernel"] = {{"dim", d.kernel.dim()}, {"generators", gens}};
  if (d.kind == DecompositionKind::RankOneKernel && d.frame) {
    const auto& f = *d.frame;
    Json frame = Json::object();
    frame["e1"] = vec_json(f.e1);
    frame["e2_unnormalized"] = vec_json(f.e2_unnormalized);
    frame["e3"] = vec_json(f.e3);
    frame["e2_norm_sq"] = scalar_json(f.e2_norm_sq);
    frame["epsilon"] = f.epsilon;
    rep.json["frame"] = frame;
    rep.json["certificate"] = {{"coefficient", scalar_json(d.coefficient)},
                               {"a_unnormalized", scalar_json(d.a_unnormalized)},
                               {"residual", scalar_json(d.certificate_residual)}};
    rep.json["u"] = d.u;
    rep.json["v"] = d.v;
    rep.json["a"] = d.a;
    rep.json["residual"] = d.residual;
    auto arr = [](const std::array<double, 3>& v) {
      return "(" + shortest(v[0]) + ", " + shortest(v[1]) + ", " + shortest(v[2]) + ")";
    };
    text << "null frame: e1 = " << vec_text(f.e1) << ", e2 = " << vec_text(f.e2_unnormalized)
         << " (norm^2 " << scalar_text(f.e2_norm_sq) << "), e3 = " << vec_text(f.e3) << ", epsilon = " << f.epsilon
         << "\n";
    text << "certificate: T = " << scalar_text(d.coefficient) << " (e1 ^ e2)(x)e1, residual "
         << scalar_text(d.certificate_residual) << "\n";
    text << "T = (u ^ v)(x)u with u = " << arr(d.u) << ", v = " << arr(d.v) << ", a = " << shortest(d.a) << "\n";
    text << "reconstruction residual: " << shortest(d.residual) << "\n";
  }
  rep.text = text.str();
  return rep;
}

// ------------------------------------------------------------------ selftest

Report selftest_report(const RunConfig& cfg, bool exact, std::ostream* live) {
  Report rep;
  AcceptanceOptions opts;
  opts.exact = exact;
  if (cfg.seed) opts.seed = *cfg.seed;
  opts.fault = cfg.inject_fault;
  const auto results = run_acceptance(opts, [&](const CriterionResult& r) {
    if (live) *live << format_result_line(r) << "\n" << std::flush;
  });
  std::ostringstream text;
  Json jr = Json::array();
  std::size_t passed = 0;
  for (const auto& r : results) {
    if (!live) text << format_result_line(r) << "\n";
    passed += r.passed ? 1 : 0;
    jr.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
  }
  text << passed << "/" << results.size() << " criteria passed\n";
  rep.json["criteria"] = std::move(jr);
  rep.json["passed"] = passed == results.size();
  rep.json["seed"] = opts.seed;
  rep.exit_code = passed == results.size() ? kExitOk : kExitCheckFailed;
  rep.text = text.str();
  return rep;
}

// ---------------------------------------------------------------- dispatch

template <class S>
MetricChart<S> chart_of(const PolynomialMetric& m) {
  return MetricChart<S>::from_polynomials(m);
}

Report dispatch(const RunConfig& cfg, std::ostream& out) {
  const auto check_mode = [](const std::string& m) {
    if (m != "exact" && m != "float") throw InputError("--mode must be exact or float, got '" + m + "'");
  };
  if (cfg.mode) check_mode(*cfg.mode);
  if (cfg.report != "text" && cfg.report != "json") {
    throw InputError("--report must be text or json, got '" + cfg.report + "'");
  }

  auto context_for = [&](const std::optional<std::string>& file_mode) {
    Context ctx;
    const std::string mode = cfg.mode.value_or(file_mode.value_or("exact"));
    ctx.exact = mode == "exact";
    if (cfg.tolerance) {
      if (ctx.exact) throw InputError("--tolerance only applies in float mode");
      if (!(*cfg.tolerance > 0.0) || !std::isfinite(*cfg.tolerance)) {
        throw InputError("--tolerance must be a positive number");
      }
      ctx.tolerance = *cfg.tolerance;
    }
    return ctx;
  };
  auto need_input = [&] {
    if (cfg.input.empty()) throw InputError(cfg.command + " needs an input file");
  };

  Report rep;
  Context ctx;
  if (cfg.command == "curvature" || cfg.command == "classify") {
    need_input();
    const MetricSpec spec = load_metric_spec(cfg.input);
    ctx = context_for(spec.mode);
    const auto& coords = spec.metric.coords();
    std::vector<std::vector<Rational>> points = parse_points(cfg.at, coords);
    if (cfg.command == "curvature") {
      rep = ctx.exact ? curvature_report(chart_of<Rational>(spec.metric), points, ctx)
                      : curvature_report(chart_of<double>(spec.metric), points, ctx);
    } else {
      std::string sampling = "given points";
      if (points.empty()) {
        if (!cfg.seed) throw InputError("classify samples random points and needs --seed (or explicit --at points)");
        if (cfg.samples == 0) throw InputError("--samples must be positive");
        Rng rng(*cfg.seed);
        points = sample_nondegenerate_points(chart_of<Rational>(spec.metric), rng, cfg.samples);
        sampling = std::to_string(cfg.samples) + " random rational points, seed " + std::to_string(*cfg.seed);
        rep.json["seed"] = *cfg.seed;
      }
      Report r = ctx.exact ? classify_report(chart_of<Rational>(spec.metric), points, ctx, cfg.allow_skip, sampling)
                           : classify_report(chart_of<double>(spec.metric), points, ctx, cfg.allow_skip, sampling);
      r.json.update(rep.json);
      rep = std::move(r);
    }
    rep.json["coords"] = coords;
  } else if (cfg.command == "verify-model") {
    ctx = context_for(std::nullopt);
    const ModelSpec spec = ModelSpec::parse(cfg.a);
    std::vector<std::vector<Rational>> points = parse_points(cfg.at, model_coords());
    if (points.empty()) {
      if (cfg.seed) {
        Rng rng(*cfg.seed);
        points = sample_nondegenerate_points(MetricChart<Rational>::from_polynomials(build_model(spec)), rng,
                                             cfg.samples);
      } else {
        points = default_model_points();
      }
    }
    rep = ctx.exact ? verify_model_report<Rational>(spec, points, ctx) : verify_model_report<double>(spec, points, ctx);
    if (cfg.seed) rep.json["seed"] = *cfg.seed;
  } else if (cfg.command == "decompose") {
    need_input();
    const TensorSpec spec = load_tensor_spec(cfg.input);
    ctx = context_for(std::nullopt);
    rep = ctx.exact ? decompose_report<Rational>(spec, ctx) : decompose_report<double>(spec, ctx);
  } else if (cfg.command == "selftest") {
    ctx = context_for(std::nullopt);
    if (!cfg.inject_fault.empty()) {
      const auto& faults = acceptance_faults();
      if (std::find(faults.begin(), faults.end(), cfg.inject_fault) == faults.end()) {
        throw InputError("unknown fault '" + cfg.inject_fault + "'");
      }
    }
    rep = selftest_report(cfg, ctx.exact, cfg.report == "text" ? &out : nullptr);
  } else {
    throw InputError("unknown command '" + cfg.command + "'");
  }
  rep.json["command"] = cfg.command;
  rep.json["mode"] = ctx.exact ? "exact" : "float";
  rep.json["exit_code"] = rep.exit_code;
  return rep;
}

}  // namespace

std::vector<std::vector<Rational>> parse_points(const std::vector<std::string>& at,
                                                const std::vector<std::string>& coords) {
  std::vector<std::vector<Rational>> points;
  for (const auto& spec : at) {
    std::vector<std::optional<Rational>> p(coords.size());
    std::istringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw InputError("--at: expected coord=value, got '" + item + "'");
      auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t");
        const auto e = s.find_last_not_of(" \t");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
      };
      const std::string name = trim(item.substr(0, eq));
      const std::string value = trim(item.substr(eq + 1));
      const auto it = std::find(coords.begin(), coords.end(), name);
      if (it == coords.end()) throw InputError("--at: unknown coordinate '" + name + "'");
      auto& slot = p[static_cast<std::size_t>(it - coords.begin())];
      if (slot) throw InputError("--at: coordinate '" + name + "' given twice");
      try {
        slot = Rational::parse(value);
      } catch (const Error& e) {
        throw InputError("--at: bad value for " + name + ": " + e.what());
      }
    }
    std::vector<Rational> point;
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (!p[i]) throw InputError("--at '" + spec + "': missing coordinate '" + coords[i] + "'");
      point.push_back(*p[i]);
    }
    points.push_back(std::move(point));
  }
  return points;
}

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const bool json = config.report == "json";
  auto fail = [&](int code, const std::string& kind, const std::string& message) {
    err << "error: " << message << "\n";
    if (json) {
      Json j = Json::object();
      j["command"] = config.command;
      j["mode"] = config.mode.value_or("exact");
      j["error"] = {{"kind", kind}, {"message", message}};
      j["exit_code"] = code;
      out << dump_json(j);
    }
    return code;
  };
  try {
    const Report rep = dispatch(config, out);
    if (json) {
      out << dump_json(rep.json);
    } else {
      out << rep.text;
    }
    return rep.exit_code;
  } catch (const InputError& e) {
    return fail(kExitInputError, "input", e.what());
  } catch (const PreconditionError& e) {
    return fail(kExitPrecondition, "precondition", e.what());
  } catch (const Error& e) {
    return fail(kExitCheckFailed, "check", e.what());
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Curvature, Cotton tensor and ECS classification toolkit", "cotton"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string mode;
  std::uint64_t seed = 0;
  double tolerance = 0.0;

  auto* o_mode = app.add_option("--mode", mode, "exact (rational) or float (double) arithmetic");
  app.add_option("--report", cfg.report, "text or json");
  auto* o_seed = app.add_option("--seed", seed, "seed for random sample points");
  auto* o_tol = app.add_option("--tolerance", tolerance, "zero threshold, float mode only");
  app.add_option("--at", cfg.at, "sample point coord=value[,...], repeatable");
  app.add_option("--samples", cfg.samples, "number of random sample points");
  app.fallthrough();

  auto* curv = app.add_subcommand("curvature", "Ricci, scalar, Schouten, Cotton, nabla Cotton and Weyl at points");
  curv->add_option("metric", cfg.input, "metric spec file")->required();
  auto* cls = app.add_subcommand("classify", "sampled chart-local classification");
  cls->add_option("metric", cfg.input, "metric spec file")->required();
  cls->add_flag("--allow-skip", cfg.allow_skip, "report and skip degenerate sample points");
  auto* vm = app.add_subcommand("verify-model", "check the closed-form facts about the model metric");
  vm->add_option("--a", cfg.a, "polynomial a(t)");
  auto* dec = app.add_subcommand("decompose", "kernel and (u, v, a) decomposition of a Cotton-like tensor");
  dec->add_option("tensor", cfg.input, "tensor spec file")->required();
  auto* st = app.add_subcommand("selftest", "run the acceptance suite");
  st->add_option("--inject-fault", cfg.inject_fault)->group("");
  for (auto* sub : {curv, cls, vm, dec, st}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
  if (o_mode->count()) cfg.mode = mode;
  if (o_seed->count()) cfg.seed = seed;
  if (o_tol->count()) cfg.tolerance = tolerance;
  return run_command(cfg, out, err);
}

}  // namespace cotton::app
