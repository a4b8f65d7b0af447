#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "hexknot/errors.hpp"
#include "hexknot/io.hpp"
#include "hexknot/rng.hpp"
#include "hexknot/search.hpp"

namespace {

using namespace hexknot;

// stable exit-code contract: 0 ok, 2 input, 3 inconsistency, 4 inconclusive,
// 5 no-convergence, 6 unstable-invariant
constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInconsistent = 3;
constexpr int kExitInconclusive = 4;
constexpr int kExitNoConvergence = 5;
constexpr int kExitUnstable = 6;

struct CommonOpts {
  std::uint64_t seed = 0;
  bool json = false;
  std::string out;
};

std::ostream* open_output(const CommonOpts& opts, std::ofstream& file) {
  if (opts.out.empty()) return &std::cout;
  file.open(opts.out, std::ios::binary);
  if (!file) throw ParseError("cannot write " + opts.out);
  return &file;
}

curves::PeriodicCurve load_curve(const std::string& spec) {
  for (const auto& name : curves::builtin_curve_names())
    if (name == spec) {
      auto c = curves::builtin_curve(name);
      c.validate();
      return c;
    }
  auto c = io::curve_from_json(io::read_file(spec));
  c.validate();
  return c;
}

int worker_threads() {
  if (const char* env = std::getenv("HEXA_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 0;  // library default
}

int cmd_classify(const std::string& input, const CommonOpts& opts, int directions) {
  const diagram::ClosedPolygon poly = io::polygon_from_text(io::read_file(input));
  const invariants::KnotClass cls =
      invariants::classify_hexagon(poly, {directions, opts.seed});

  nlohmann::json report;
  report["class"] = invariants::to_string(cls);
  nlohmann::json dirs = nlohmann::json::array();
  for (int k = 0; k < directions; ++k) {
    const Vec3 dir = diagram::random_generic_direction(poly, mix_seed(opts.seed, static_cast<std::uint64_t>(k)));
    const auto diag = diagram::project_diagram(poly, dir);
    const auto code = gauss_code(diag);
    nlohmann::json dj;
    dj["direction"] = {dir.x(), dir.y(), dir.z()};
    dj["crossings"] = diag.crossings.size();
    dj["writhe"] = diagram::writhe(code);
    if (k == 0) {
      report["jones"] =
          nlohmann::json::parse(io::laurent_to_json(invariants::jones_normalized(diag)));
      report["v2"] = invariants::v2(code);
      report["v3"] = invariants::v3(code);
      report["gauss"] = code.str();
    }
    dirs.push_back(dj);
  }
  report["directions"] = dirs;

  std::ofstream file;
  std::ostream& os = *open_output(opts, file);
  if (opts.json) {
    os << report.dump(2) << "\n";
  } else {
    os << "class: " << report["class"].get<std::string>() << "\n";
    os << "v2: " << report["v2"] << "  v3: " << report["v3"] << "\n";
    os << "jones: " << report["jones"].dump() << "\n";
    for (const auto& dj : dirs)
      os << "direction " << dj["direction"].dump() << " crossings " << dj["crossings"]
         << " writhe " << dj["writhe"] << "\n";
  }
  return kExitOk;
}

int cmd_search(const std::string& curve_spec, const CommonOpts& opts, long budget,
               const std::string& target) {
  const auto curve = load_curve(curve_spec);
  search::SearchBudget b;
  b.max_samples = budget;
  b.rng_seed = opts.seed;
  b.target = search::target_from_string(target);

  std::ofstream file;
  std::ostream& os = *open_output(opts, file);

  const auto result = search::find_inscribed_trefoils(curve, b, std::nullopt,
                                                      worker_threads());
  for (const auto& find : result.finds)
    os << io::find_to_ndjson_line(find, curve) << "\n";

  nlohmann::json summary;
  summary["summary"] = true;
  summary["samples"] = result.stats.samples;
  summary["embedded"] = result.stats.embedded;
  summary["candidates"] = result.stats.candidates;
  summary["found_left"] = result.stats.found_left;
  summary["found_right"] = result.stats.found_right;
  summary["seconds"] = result.stats.seconds;
  summary["target"] = target;
  summary["target_met"] = result.stats.target_met;
  os << summary.dump() << "\n";
  return result.stats.target_met ? kExitOk : kExitInconclusive;
}

int cmd_prism(const std::string& curve_spec, const CommonOpts& opts,
              std::vector<double> seed_tuple, double tol) {
  const auto curve = load_curve(curve_spec);
  config_geometry::SixTuple seed;
  if (seed_tuple.empty()) {
    Rng rng(mix_seed(opts.seed, 0x9713ULL));
    std::array<double, 6> t;
    for (auto& x : t) x = rng.uniform();
    std::sort(t.begin(), t.end());
    seed.t = t;
  } else {
    if (seed_tuple.size() != 6) throw ParseError("--seed-tuple needs 6 values");
    std::copy(seed_tuple.begin(), seed_tuple.end(), seed.t.begin());
  }
  seed.validate();

  search::SolveOptions sopt;
  sopt.tol = tol;
  const auto cfg = search::solve_prism(curve, seed, sopt);

  nlohmann::json j;
  j["t"] = cfg.tuple.t;
  j["residual"] = cfg.residual_norm;
  std::vector<double> apex(cfg.apex_homogeneous.data(),
                           cfg.apex_homogeneous.data() + cfg.apex_homogeneous.size());
  j["apex_homogeneous"] = apex;
  j["apex_at_infinity"] = std::abs(apex.back()) < 1e-9;
  j["cyclic_class_id"] = cfg.cyclic_class_id;
  j["planar"] = cfg.planar;
  j["cospherical"] = cfg.cospherical;

  std::ofstream file;
  std::ostream& os = *open_output(opts, file);
  if (opts.json) {
    os << j.dump(2) << "\n";
  } else {
    os << "t:";
    for (const double t : cfg.tuple.t) os << ' ' << t;
    os << "\nresidual: " << cfg.residual_norm << "\n";
    os << "apex at infinity: " << (j["apex_at_infinity"].get<bool>() ? "yes" : "no")
       << "\n";
  }
  return kExitOk;
}

int cmd_trace(const std::string& curve_spec, const CommonOpts& opts,
              std::vector<double> seed_tuple, double step, int max_steps) {
  const auto curve = load_curve(curve_spec);
  config_geometry::SixTuple seed;
  if (seed_tuple.size() == 6)
    std::copy(seed_tuple.begin(), seed_tuple.end(), seed.t.begin());
  else
    throw ParseError("--seed-tuple needs 6 values");
  seed.validate();

  const auto start = search::solve_prism(curve, seed);
  search::TraceOptions topt;
  topt.step = step;
  topt.max_steps = max_steps;
  topt.seed = opts.seed;
  const auto trace = search::trace_prism_manifold(curve, start, topt);
  const auto events = search::scan_planar_events(trace, curve);

  nlohmann::json j = nlohmann::json::parse(io::trace_to_json(trace));
  nlohmann::json evs = nlohmann::json::array();
  for (const auto& ev : events) {
    nlohmann::json e;
    e["index"] = ev.index;
    e["config_type"] = ev.config_type;
    if (ev.bad) e["bad"] = *ev.bad;
    e["theta"] = ev.theta;
    evs.push_back(e);
  }
  j["planar_events"] = evs;

  std::ofstream file;
  std::ostream& os = *open_output(opts, file);
  os << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_a2(const std::string& curve_spec, const CommonOpts& opts, int resolution,
           int directions) {
  const auto curve = load_curve(curve_spec);
  invariants::A2Options aopt;
  aopt.directions = directions;
  aopt.seed = opts.seed;
  const int a2 = invariants::a2_of_curve(curve, resolution, std::nullopt, aopt);

  std::ofstream file;
  std::ostream& os = *open_output(opts, file);
  if (opts.json) {
    nlohmann::json j;
    j["curve"] = curve.label();
    j["resolution"] = resolution;
    j["a2"] = a2;
    os << j.dump(2) << "\n";
  } else {
    os << a2 << "\n";
  }
  return kExitOk;
}

int cmd_render(const std::string& input, const std::string& out_path) {
  const std::string svg = io::render_svg(io::read_file(input));
  io::write_file(out_path, svg);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hexknot: inscribed-trefoil search and hexagonal knot classification"};
  app.require_subcommand(1);

  CommonOpts opts;
  app.add_option("--seed", opts.seed, "RNG seed (default 0)")->capture_default_str();
  app.add_flag("--json", opts.json, "machine-readable JSON output");
  app.add_option("--out", opts.out, "output path (default stdout)");

  double tol_prism = 1e-10;
  app.add_option("--tol.prism", tol_prism, "prism residual tolerance");
  double tol_coplanar = 1e-8;
  app.add_option("--tol.coplanar", tol_coplanar, "coplanarity tolerance");

  auto* classify = app.add_subcommand("classify", "classify a hexagon polygon file");
  std::string classify_input;
  classify->add_option("polygon", classify_input, "polygon JSON/CSV file")->required();
  int classify_dirs = 5;
  classify->add_option("--directions", classify_dirs, "projection directions");

  auto* searchc = app.add_subcommand("search", "search a curve for inscribed trefoils");
  std::string search_curve;
  searchc->add_option("curve", search_curve, "builtin name or curve JSON file")->required();
  long budget = 100000;
  searchc->add_option("--budget", budget, "sample budget");
  std::string target = "any";
  searchc->add_option("--target", target, "any|left|right|both");

  auto* prism = app.add_subcommand("prism", "solve the prism concurrency residual");
  std::string prism_curve;
  prism->add_option("curve", prism_curve, "builtin name or curve JSON file")->required();
  std::vector<double> seed_tuple;
  prism->add_option("--seed-tuple", seed_tuple, "six ordered parameters")->expected(6);

  auto* trace = app.add_subcommand("trace", "continuation along the prism solution set");
  std::string trace_curve;
  trace->add_option("curve", trace_curve, "builtin name or curve JSON file")->required();
  std::vector<double> trace_seed_tuple;
  trace->add_option("--seed-tuple", trace_seed_tuple, "six ordered parameters")->expected(6);
  double trace_step = 1e-3;
  trace->add_option("--step", trace_step, "initial continuation step");
  int trace_max_steps = 500;
  trace->add_option("--max-steps", trace_max_steps, "maximum continuation steps");

  auto* a2 = app.add_subcommand("a2", "quadratic Conway coefficient of a curve");
  std::string a2_curve;
  a2->add_option("curve", a2_curve, "builtin name or curve JSON file")->required();
  int resolution = 96;
  a2->add_option("--resolution", resolution, "polygonalization resolution");
  int a2_dirs = 7;
  a2->add_option("--directions", a2_dirs, "projection directions");

  auto* render = app.add_subcommand("render", "render a diagram/config export to SVG");
  std::string render_input, render_out = "out.svg";
  render->add_option("input", render_input, "export JSON file")->required();
  render->add_option("--out-svg", render_out, "output SVG path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify->parsed()) return cmd_classify(classify_input, opts, classify_dirs);
    if (searchc->parsed()) return cmd_search(search_curve, opts, budget, target);
    if (prism->parsed()) return cmd_prism(prism_curve, opts, seed_tuple, tol_prism);
    if (trace->parsed())
      return cmd_trace(trace_curve, opts, trace_seed_tuple, trace_step, trace_max_steps);
    if (a2->parsed()) return cmd_a2(a2_curve, opts, resolution, a2_dirs);
    if (render->parsed()) return cmd_render(render_input, render_out);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const hexknot::UnknownCurveError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const hexknot::PolygonError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const hexknot::InconsistentProjectionsError& e) {
    std::cerr << "inconsistent projections: " << e.what() << "\n";
    return kExitInconsistent;
  } catch (const hexknot::NoConvergenceError& e) {
    std::cerr << "no convergence: " << e.what() << "\n";
    return kExitNoConvergence;
  } catch (const hexknot::OrderingCollapseError& e) {
    std::cerr << "no convergence: " << e.what() << "\n";
    return kExitNoConvergence;
  } catch (const hexknot::UnstableInvariantError& e) {
    std::cerr << "unstable invariant: " << e.what() << "\n";
    return kExitUnstable;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const hexknot::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
