#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <map>
#include <sstream>

#include "io.hpp"
#include "monowave/approx.hpp"
#include "monowave/error.hpp"
#include "monowave/identities.hpp"
#include "monowave/parallel.hpp"
#include "monowave/pipeline.hpp"
#include "monowave/serialize.hpp"
#include "monowave/stats.hpp"
#include "svg.hpp"

#ifndef MONOWAVE_VERSION
#define MONOWAVE_VERSION "0.0.0"
#endif

namespace monowave::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr const char* kDefaultOut = "monowave_out";
constexpr int kDefaultTrials = 30;
constexpr int kDefaultResamples = 2000;

[[noreturn]] void reject(const std::string& message) {
  throw Error(ErrorKind::kValidation, message);
}

template <class T>
T field(const json& j, const char* key, const std::string& context) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    reject(context + "." + key + ": " + e.what());
  }
}

template <class T>
T field_or(const json& j, const char* key, T fallback, const std::string& context) {
  return j.contains(key) ? field<T>(j, key, context) : fallback;
}

std::vector<double> window_sides(const json& j, const std::string& context) {
  const auto sides = field<std::vector<double>>(json{{"w", j}}, "w", context);
  if (sides.size() != 2 && sides.size() != 3) reject(context + " needs 2 or 3 side lengths");
  for (double s : sides) {
    if (!(s > 0.0) || !std::isfinite(s)) reject(context + " sides must be positive");
  }
  return sides;
}

Box box_from_sides(const std::vector<double>& sides) {
  const int dim = static_cast<int>(sides.size());
  return Box::centered(dim, {sides[0], sides[1], dim == 3 ? sides[2] : 0.0});
}

json box_json(const Box& b) {
  json lo = json::array(), hi = json::array();
  for (int a = 0; a < b.dim; ++a) {
    lo.push_back(b.lo[a]);
    hi.push_back(b.hi[a]);
  }
  return {{"dim", b.dim}, {"lo", lo}, {"hi", hi}};
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

int source_count(const json& c) {
  return static_cast<int>(c.contains("spec")) + static_cast<int>(c.contains("test_field")) +
         static_cast<int>(c.contains("sample_file"));
}

// ---------------------------------------------------------------------------
// Canonical configs.

json canonical_specfun(const json& c) {
  require_keys(c, {"out", "max_degree", "max_radius", "radii", "inject_fault"}, "config");
  const std::string ctx = "config";
  SpecfunSuiteOptions o;
  json out;
  out["out"] = field_or<std::string>(c, "out", kDefaultOut, ctx);
  out["max_degree"] = field_or<int>(c, "max_degree", o.max_degree, ctx);
  out["max_radius"] = field_or<double>(c, "max_radius", o.max_radius, ctx);
  out["radii"] = field_or<int>(c, "radii", o.radii, ctx);
  out["inject_fault"] = field_or<bool>(c, "inject_fault", o.inject_fault, ctx);
  if (out["max_degree"].get<int>() < 0 || out["radii"].get<int>() < 1 ||
      !(out["max_radius"].get<double>() > 0.0)) {
    reject("specfun-check needs max_degree >= 0, radii >= 1 and max_radius > 0");
  }
  return out;
}

double checked_spacing(const json& c, double fallback) {
  const double h = field_or<double>(c, "spacing", fallback, "config");
  if (!(h > 0.0) || h > kMaxSpacing) {
    reject("spacing must lie in (0, " + format_number(kMaxSpacing) + "]");
  }
  return h;
}

json canonical_sample(const json& c) {
  require_keys(c, {"out", "spec", "window", "spacing", "grid"}, "config");
  if (!c.contains("spec")) reject("sample needs a 'spec'");
  json out;
  const FieldSpec spec = field_spec_from_json(c.at("spec"));
  out["out"] = field_or<std::string>(c, "out", kDefaultOut, "config");
  out["spec"] = to_json(spec);
  out["grid"] = field_or<bool>(c, "grid", false, "config");
  out["spacing"] = checked_spacing(c, kDefaultSpacing);
  if (c.contains("window")) {
    if (spec.kind == FieldKind::kSphere) reject("a window does not apply to sphere samples");
    const auto sides = window_sides(c.at("window"), "config.window");
    if (static_cast<int>(sides.size()) != spec.dim) reject("window dimension differs from spec.dim");
    out["window"] = sides;
  } else if (out["grid"].get<bool>()) {
    reject("a grid dump needs a window");
  }
  return out;
}

json canonical_nodal(const json& c) {
  require_keys(c, {"out", "spec", "test_field", "sample_file", "window", "spacing", "sphere_rows"},
               "config");
  if (source_count(c) != 1) reject("nodal needs exactly one of 'spec', 'test_field', 'sample_file'");
  json out;
  out["out"] = field_or<std::string>(c, "out", kDefaultOut, "config");
  out["spacing"] = checked_spacing(c, kDefaultSpacing);
  int dim = 0;
  bool sphere = false;
  if (c.contains("spec")) {
    const FieldSpec spec = field_spec_from_json(c.at("spec"));
    out["spec"] = to_json(spec);
    dim = spec.dim;
    sphere = spec.kind == FieldKind::kSphere;
    if (sphere) {
      out["sphere_rows"] = field_or<int>(c, "sphere_rows", default_sphere_rows(spec.degree), "config");
      if (out["sphere_rows"].get<int>() < 4) reject("sphere_rows must be >= 4");
    }
  } else if (c.contains("test_field")) {
    const TestField t = make_test_field(field<std::string>(c, "test_field", "config"));
    out["test_field"] = t.name;
    dim = t.field.dim;
  } else {
    const fs::path path = fs::absolute(field<std::string>(c, "sample_file", "config"));
    const WaveSample s = wave_sample_from_json(read_json(path));
    out["sample_file"] = path.lexically_normal().string();
    dim = s.spec.dim;
    sphere = s.spec.kind == FieldKind::kSphere;
    if (sphere) {
      out["sphere_rows"] = field_or<int>(c, "sphere_rows", default_sphere_rows(s.spec.degree), "config");
    }
  }
  if (c.contains("sphere_rows") && !sphere) reject("sphere_rows only applies to sphere fields");
  if (sphere) {
    if (c.contains("window")) reject("a window does not apply to sphere fields");
    out.erase("spacing");
  } else if (c.contains("window")) {
    const auto sides = window_sides(c.at("window"), "config.window");
    if (static_cast<int>(sides.size()) != dim) reject("window dimension differs from the field");
    out["window"] = sides;
  } else if (!out.contains("test_field")) {
    reject("nodal needs a 'window' for flat fields");
  }
  return out;
}

json canonical_experiment(const json& c) {
  require_keys(c,
               {"out", "mode", "spec", "test_field", "windows", "degrees", "trials", "spacing",
                "bootstrap_resamples", "bootstrap_seed"},
               "config");
  const std::string ctx = "config";
  json out;
  out["out"] = field_or<std::string>(c, "out", kDefaultOut, ctx);
  const std::string mode = field<std::string>(c, "mode", ctx);
  if (mode != "scaling" && mode != "concentration") {
    reject("mode must be 'scaling' or 'concentration'");
  }
  out["mode"] = mode;
  if (c.contains("sample_file") || source_count(c) != 1) {
    reject("experiment needs exactly one of 'spec', 'test_field'");
  }
  out["trials"] = field_or<int>(c, "trials", kDefaultTrials, ctx);
  if (out["trials"].get<int>() < 1) reject("trials must be >= 1");
  if (mode == "concentration" && out["trials"].get<int>() < 20) {
    reject("concentration experiments need >= 20 trials per window");
  }
  int dim = 0;
  bool sphere = false;
  if (c.contains("spec")) {
    const FieldSpec spec = field_spec_from_json(c.at("spec"));
    out["spec"] = to_json(spec);
    dim = spec.dim;
    sphere = spec.kind == FieldKind::kSphere;
  } else {
    const TestField t = make_test_field(field<std::string>(c, "test_field", ctx));
    out["test_field"] = t.name;
    dim = t.field.dim;
  }
  if (sphere) {
    if (mode != "scaling") reject("sphere ensembles only support scaling mode");
    if (c.contains("windows")) reject("sphere scaling takes 'degrees', not 'windows'");
    const auto degrees = field<std::vector<int>>(c, "degrees", ctx);
    for (int l : degrees) {
      if (l < 1) reject("degrees must be >= 1");
    }
    out["degrees"] = degrees;
  } else {
    if (c.contains("degrees")) reject("'degrees' only applies to sphere ensembles");
    if (!c.contains("windows") || !c.at("windows").is_array() || c.at("windows").empty()) {
      reject("experiment needs a nonempty 'windows' list");
    }
    json windows = json::array();
    for (const json& w : c.at("windows")) {
      const auto sides = window_sides(w, "config.windows[]");
      if (static_cast<int>(sides.size()) != dim) reject("window dimension differs from the field");
      check_resolution(box_from_sides(sides), checked_spacing(c, kDefaultSpacing));
      windows.push_back(sides);
    }
    out["windows"] = windows;
    out["spacing"] = checked_spacing(c, kDefaultSpacing);
  }
  if (mode == "concentration") {
    out["bootstrap_resamples"] = field_or<int>(c, "bootstrap_resamples", kDefaultResamples, ctx);
    out["bootstrap_seed"] = field_or<std::uint64_t>(c, "bootstrap_seed", 1, ctx);
    if (out["bootstrap_resamples"].get<int>() < 1) reject("bootstrap_resamples must be >= 1");
  } else if (c.contains("bootstrap_resamples") || c.contains("bootstrap_seed")) {
    reject("bootstrap settings only apply to concentration mode");
  }
  return out;
}

json canonical_witness(const json& c) {
  require_keys(c, {"out", "dim", "directions", "spacing"}, "config");
  json out;
  out["out"] = field_or<std::string>(c, "out", kDefaultOut, "config");
  out["dim"] = field<int>(c, "dim", "config");
  out["directions"] = field<int>(c, "directions", "config");
  out["spacing"] = checked_spacing(c, kWitnessSpacing);
  if (out["dim"] != 2 && out["dim"] != 3) reject("witness dim must be 2 or 3");
  if (out["directions"].get<int>() < 1) reject("witness needs at least one direction pair");
  return out;
}

// ---------------------------------------------------------------------------
// Run context shared by the commands.

struct Context {
  Command command;
  json config;
  fs::path out;
  int threads = 1;
  std::string started;
  std::vector<std::string> outputs;
  json derived_seeds = json::array();

  void text(const std::string& name, std::string_view body) {
    write_text(out / name, body);
    outputs.push_back(name);
  }
  void document(const std::string& name, const json& j) {
    write_json(out / name, j);
    outputs.push_back(name);
  }
  RunOutcome finish() {
    json m;
    m["schema"] = kManifestSchema;
    m["tool_version"] = tool_version();
    m["command"] = to_string(command);
    m["config"] = config;
    if (config.contains("spec")) m["field_spec"] = config["spec"];
    m["derived_seeds"] = derived_seeds;
    m["threads"] = threads;
    m["timestamps"] = {{"started", started}, {"finished", timestamp()}};
    m["outputs"] = outputs;
    write_json(out / "manifest.json", m);
    outputs.push_back("manifest.json");
    return {out, outputs};
  }
};

void seed_entry(Context& ctx, const FieldSpec& spec, int window, int trial) {
  ctx.derived_seeds.push_back(
      {{"window", window}, {"trial", trial}, {"seed", spec.seed}, {"stream", spec.stream}});
}

// specfun-check ------------------------------------------------------------

void run_specfun(Context& ctx) {
  SpecfunSuiteOptions o;
  o.max_degree = ctx.config["max_degree"];
  o.max_radius = ctx.config["max_radius"];
  o.radii = ctx.config["radii"];
  o.inject_fault = ctx.config["inject_fault"];
  const auto checks = run_specfun_suite(o);
  json report;
  report["schema"] = kSpecfunReportSchema;
  report["options"] = {{"max_degree", o.max_degree},
                       {"max_radius", o.max_radius},
                       {"radii", o.radii},
                       {"inject_fault", o.inject_fault}};
  json rows = json::array();
  std::string failing;
  for (const IdentityCheck& c : checks) {
    rows.push_back({{"name", c.name},
                    {"max_residual", c.max_residual},
                    {"tolerance", c.tolerance},
                    {"evaluations", c.evaluations},
                    {"passed", c.passed}});
    if (!c.passed) {
      if (!failing.empty()) failing += ", ";
      failing += c.name + " (residual " + format_number(c.max_residual) + " > " +
                 format_number(c.tolerance) + ")";
    }
  }
  report["checks"] = rows;
  report["passed"] = failing.empty();
  ctx.document("specfun_report.json", report);
  ctx.finish();
  if (!failing.empty()) throw Error(ErrorKind::kToleranceBreach, "identity check failed: " + failing);
}

// sample ---------------------------------------------------------------------

std::string grid_csv(const ScalarGrid& g) {
  std::vector<std::string> header{"x", "y"};
  if (g.dim == 3) header.push_back("z");
  header.push_back("value");
  CsvTable t(header);
  for (int k = 0; k < g.shape[2]; ++k) {
    for (int j = 0; j < g.shape[1]; ++j) {
      for (int i = 0; i < g.shape[0]; ++i) {
        const Point p = g.position(i, j, k);
        t.cell(p[0]).cell(p[1]);
        if (g.dim == 3) t.cell(p[2]);
        t.cell(g.at(i, j, k));
        t.end_row();
      }
    }
  }
  return t.str();
}

void run_sample(Context& ctx) {
  const FieldSpec spec = field_spec_from_json(ctx.config["spec"]);
  const WaveSample s = sample(spec);
  seed_entry(ctx, spec, 0, 0);
  ctx.document("sample.json", to_json(s));
  if (ctx.config["grid"].get<bool>()) {
    const Box window = box_from_sides(ctx.config["window"].get<std::vector<double>>());
    ctx.text("grid.csv", grid_csv(rasterize(s, window, ctx.config["spacing"], ctx.threads)));
  }
  ctx.finish();
}

// nodal ----------------------------------------------------------------------

std::string type_token(const NodalComponent& c) {
  if (c.touches_boundary) return "boundary";
  return classify(c).label();
}

void write_components(Context& ctx, const std::vector<NodalComponent>& comps, json& summary) {
  CsvTable table({"id", "dim", "closed", "touches_boundary", "type", "vertices", "triangles",
                  "lo_x", "lo_y", "lo_z", "hi_x", "hi_y", "hi_z"});
  CsvTable lines({"component", "index", "x", "y", "z"});
  bool any_polyline = false;
  std::map<std::string, int> types;
  int interior = 0, boundary = 0, unclassified = 0;
  std::vector<std::pair<std::string, TriangleMesh>> meshes;
  for (std::size_t id = 0; id < comps.size(); ++id) {
    const NodalComponent& c = comps[id];
    const std::string type = type_token(c);
    table.cell(id).cell(c.dim).cell(c.closed ? "1" : "0").cell(c.touches_boundary ? "1" : "0");
    table.cell(type).cell(c.vertex_count()).cell(c.mesh.triangles.size());
    for (int a = 0; a < 3; ++a) table.cell(c.bounding_box.lo[a]);
    for (int a = 0; a < 3; ++a) table.cell(c.bounding_box.hi[a]);
    table.end_row();
    for (std::size_t i = 0; i < c.polyline.size(); ++i) {
      any_polyline = true;
      const Point& p = c.polyline[i];
      lines.cell(id).cell(i).cell(p[0]).cell(p[1]).cell(p[2]);
      lines.end_row();
    }
    if (c.touches_boundary) {
      ++boundary;
    } else if (type.rfind("unclassified", 0) == 0) {
      ++unclassified;
    } else {
      ++interior;
      ++types[type];
      if (c.dim == 3) meshes.emplace_back("component_" + std::to_string(id) + ".obj", c.mesh);
    }
  }
  ctx.text("components.csv", table.str());
  if (any_polyline) ctx.text("polylines.csv", lines.str());
  for (const auto& [name, mesh] : meshes) {
    const std::string id = name.substr(10, name.size() - 14);
    ctx.text(name, obj_text(mesh, {"monowave nodal component " + id,
                                   "type " + type_token(comps[std::stoul(id)]),
                                   "manifest manifest.json"}));
  }
  summary["components"] = comps.size();
  summary["interior"] = interior;
  summary["boundary_components"] = boundary;
  summary["unclassified"] = unclassified;
  summary["types"] = types;
}

void run_nodal(Context& ctx) {
  const json& c = ctx.config;
  json summary;
  summary["schema"] = kNodalSummarySchema;
  std::vector<NodalComponent> comps;
  std::optional<TestField> test;
  if (c.contains("test_field")) test = make_test_field(c["test_field"].get<std::string>());
  auto flat = [&](auto&& rasterize_on) {
    const Box window = c.contains("window")
                           ? box_from_sides(c["window"].get<std::vector<double>>())
                           : test->window;
    summary["window"] = box_json(window);
    summary["spacing"] = c["spacing"];
    comps = extract_components(rasterize_on(window));
  };
  auto on_sphere = [&](const WaveSample& s) {
    const int rows = c["sphere_rows"];
    summary["sphere_grid"] = {{"n_theta", rows}, {"n_phi", 2 * rows}};
    comps = extract_components_sphere(rasterize_sphere(s, rows, 2 * rows));
  };
  auto from_sample = [&](const WaveSample& s) {
    if (s.spec.kind == FieldKind::kSphere) {
      on_sphere(s);
    } else {
      flat([&](const Box& w) { return rasterize(s, w, c["spacing"], ctx.threads); });
    }
  };
  if (c.contains("spec")) {
    const FieldSpec spec = field_spec_from_json(c["spec"]);
    seed_entry(ctx, spec, 0, 0);
    summary["source"] = {{"spec", c["spec"]}};
    from_sample(sample(spec));
  } else if (test) {
    summary["source"] = {{"test_field", test->name}};
    flat([&](const Box& w) { return rasterize(test->field, w, c["spacing"], ctx.threads); });
  } else {
    const WaveSample s = wave_sample_from_json(read_json(c["sample_file"].get<std::string>()));
    summary["source"] = {{"sample_file", c["sample_file"]}};
    from_sample(s);
  }
  write_components(ctx, comps, summary);
  ctx.document("nodal_summary.json", summary);
  ctx.finish();
}

// experiment -----------------------------------------------------------------

struct TrialRecord {
  int window = 0;
  int trial = 0;
  std::uint64_t stream = 0;
  WindowCensus census;
};

std::vector<Box> experiment_windows(const json& c) {
  std::vector<Box> out;
  for (const json& w : c["windows"]) out.push_back(box_from_sides(w.get<std::vector<double>>()));
  return out;
}

std::optional<FieldSpec> experiment_spec(const json& c) {
  if (!c.contains("spec")) return std::nullopt;
  return field_spec_from_json(c["spec"]);
}

void record_seeds(Context& ctx, const std::optional<FieldSpec>& spec, int windows, int trials) {
  if (!spec) return;
  for (int w = 0; w < windows; ++w) {
    for (int t = 0; t < trials; ++t) {
      FieldSpec s = *spec;
      s.stream = static_cast<std::uint64_t>(w) * trials + t;
      seed_entry(ctx, s, w, t);
    }
  }
}

void run_scaling(Context& ctx, json& summary) {
  const json& c = ctx.config;
  const int trials = c["trials"];
  const auto spec = experiment_spec(c);
  const bool sphere = spec && spec->kind == FieldKind::kSphere;
  std::vector<double> scales;
  std::vector<Box> windows;
  if (sphere) {
    for (int l : c["degrees"].get<std::vector<int>>()) scales.push_back(double(l) * l);
  } else {
    windows = experiment_windows(c);
    for (const Box& b : windows) scales.push_back(b.volume());
  }
  const int w_count = static_cast<int>(scales.size());
  record_seeds(ctx, spec, w_count, trials);
  std::vector<TrialRecord> records(static_cast<std::size_t>(w_count) * trials);
  const double spacing = sphere ? 0.0 : c["spacing"].get<double>();
  std::optional<TestField> test;
  if (!spec) test = make_test_field(c["test_field"].get<std::string>());
  parallel_for(records.size(), ctx.threads, [&](std::size_t job) {
    TrialRecord& r = records[job];
    r.window = static_cast<int>(job / trials);
    r.trial = static_cast<int>(job % trials);
    if (test) {
      r.census = census(test->field, windows[r.window], spacing, 1);
      return;
    }
    FieldSpec s = *spec;
    s.stream = r.stream = job;
    if (sphere) {
      s.degree = c["degrees"][r.window];
      const int rows = default_sphere_rows(s.degree);
      r.census = census_sphere(sample(s), rows, 2 * rows);
    } else {
      r.census = census(sample(s), windows[r.window], spacing, 1);
    }
  });

  CsvTable runs({"window", "scale", "trial", "stream", "interior", "boundary", "unclassified"});
  std::vector<ScalingRun> data;
  for (const TrialRecord& r : records) {
    runs.cell(r.window).cell(scales[r.window]).cell(r.trial).cell(static_cast<long long>(r.stream));
    runs.cell(r.census.interior_count()).cell(r.census.boundary_components).cell(r.census.unclassified);
    runs.end_row();
    data.push_back({scales[r.window], static_cast<double>(r.census.interior_count())});
  }
  ctx.text("ns_scaling.csv", runs.str());
  const ScalingFit fit = ns_scaling(data);
  CsvTable per({"scale", "runs", "mean_count", "std_error", "density"});
  json rows = json::array();
  Series measured{"mean interior count", {}, true, "#1f77b4"};
  Series line{"fit " + format_number(fit.exponent) + " log scale", {}, false, "#d62728"};
  for (const VolumeSummary& v : fit.volumes) {
    per.cell(v.volume).cell(v.runs).cell(v.mean_count).cell(v.std_error).cell(v.density);
    per.end_row();
    rows.push_back({{"scale", v.volume},
                    {"runs", v.runs},
                    {"mean_count", v.mean_count},
                    {"std_error", v.std_error},
                    {"density", v.density}});
    measured.points.emplace_back(v.volume, v.mean_count);
    line.points.emplace_back(v.volume, std::exp(fit.log_prefactor) * std::pow(v.volume, fit.exponent));
  }
  ctx.text("ns_fit.csv", per.str());
  summary["scale"] = sphere ? "degree_squared" : "volume";
  summary["fit"] = {{"c_hat", fit.c_hat},
                    {"exponent", fit.exponent},
                    {"log_prefactor", fit.log_prefactor},
                    {"r_squared", fit.r_squared}};
  summary["volumes"] = rows;
  Plot plot{"Interior components against " + std::string(sphere ? "degree squared" : "window volume"),
            sphere ? "l^2" : "volume", "mean interior count", true, true, {measured, line}};
  ctx.text("count_vs_volume.svg", render_svg(plot));
}

void run_concentration(Context& ctx, json& summary) {
  const json& c = ctx.config;
  const int trials = c["trials"];
  const auto spec = experiment_spec(c);
  const std::vector<Box> windows = experiment_windows(c);
  const double spacing = c["spacing"];
  record_seeds(ctx, spec, static_cast<int>(windows.size()), trials);
  ConcentrationResult result;
  if (spec) {
    result = concentration_experiment(*spec, windows, trials, spacing, ctx.threads);
  } else {
    const TestField t = make_test_field(c["test_field"].get<std::string>());
    result = concentration_experiment(
        windows, trials,
        [&](std::size_t w, std::size_t) { return census(t.field, windows[w], spacing, 1); },
        ctx.threads);
  }

  CsvTable table({"window", "side", "volume", "trials", "empty_trials", "mean_interior",
                  "median_d", "p90_d"});
  CsvTable per_trial({"window", "trial", "stream", "interior", "boundary", "unclassified", "d"});
  json rows = json::array();
  Series med{"median D", {}, true, "#1f77b4"};
  Series p90{"90th percentile D", {}, true, "#ff7f0e"};
  for (std::size_t w = 0; w < windows.size(); ++w) {
    const ConcentrationRow& row = result.rows[w];
    const double side = windows[w].hi[0] - windows[w].lo[0];
    const bool defined = !row.discrepancies.empty();
    table.cell(w).cell(side).cell(windows[w].volume()).cell(row.trials).cell(row.empty_trials);
    table.cell(row.mean_interior);
    if (defined) {
      table.cell(row.median).cell(row.p90);
    } else {
      table.cell("nan").cell("nan");
    }
    table.end_row();
    std::size_t next = 0;
    for (int t = 0; t < trials; ++t) {
      const WindowCensus& census_wt = result.censuses[w][t];
      per_trial.cell(w).cell(t).cell(static_cast<long long>(spec ? w * trials + t : 0));
      per_trial.cell(census_wt.interior_count()).cell(census_wt.boundary_components);
      per_trial.cell(census_wt.unclassified);
      if (census_wt.interior_count() > 0) {
        per_trial.cell(row.discrepancies[next++]);
      } else {
        per_trial.cell("nan");
      }
      per_trial.end_row();
    }
    json r = {{"side", side},
              {"volume", windows[w].volume()},
              {"trials", row.trials},
              {"empty_trials", row.empty_trials},
              {"mean_interior", row.mean_interior}};
    if (defined) {
      r["median_d"] = row.median;
      r["p90_d"] = row.p90;
      med.points.emplace_back(side, row.median);
      p90.points.emplace_back(side, row.p90);
    }
    rows.push_back(r);
  }
  ctx.text("concentration.csv", table.str());
  ctx.text("discrepancy_trials.csv", per_trial.str());
  json reference = json::object();
  for (const auto& [type, count] : result.reference.counts()) reference[type.label()] = count;
  summary["reference"] = reference;
  summary["rows"] = rows;
  if (windows.size() >= 2) {
    std::size_t small = 0, large = 0;
    for (std::size_t w = 1; w < windows.size(); ++w) {
      if (windows[w].volume() < windows[small].volume()) small = w;
      if (windows[w].volume() > windows[large].volume()) large = w;
    }
    const auto& a = result.rows[small].discrepancies;
    const auto& b = result.rows[large].discrepancies;
    if (!a.empty() && !b.empty()) {
      summary["bootstrap_median_order"] = bootstrap_median_order(
          a, b, c["bootstrap_resamples"], c["bootstrap_seed"].get<std::uint64_t>());
    }
  }
  Plot plot{"Discrepancy from the pooled measure", "window side", "D", false, false, {med, p90}};
  ctx.text("discrepancy_quantiles.svg", render_svg(plot));
}

void run_experiment(Context& ctx) {
  json summary;
  summary["schema"] = kExperimentSummarySchema;
  summary["mode"] = ctx.config["mode"];
  if (ctx.config["mode"] == "scaling") {
    run_scaling(ctx, summary);
  } else {
    run_concentration(ctx, summary);
  }
  ctx.document("summary.json", summary);
  ctx.finish();
}

// witness --------------------------------------------------------------------

void run_witness(Context& ctx) {
  const int n = ctx.config["dim"];
  const int pairs = ctx.config["directions"];
  const Witness w = build_witness(n, pairs, ctx.config["spacing"], ctx.threads);
  const WitnessReport& r = w.report;
  ctx.document("witness.json", to_json(to_wave_sample(w.element)));
  json types = json::array();
  for (const TopologyType& t : r.types) types.push_back(t.label());
  json report = {{"schema", kWitnessReportSchema},
                 {"dim", r.dim},
                 {"directions", r.directions},
                 {"lambda", r.lambda},
                 {"window", box_json(r.window)},
                 {"spacing", r.spacing},
                 {"value_error", r.value_error},
                 {"gradient_error", r.gradient_error},
                 {"approximation_error", r.approximation_error()},
                 {"value_margin", r.value_margin},
                 {"gradient_margin", r.gradient_margin},
                 {"isotopy_margin", r.isotopy_margin()},
                 {"closed_components", r.closed_components},
                 {"boundary_components", r.boundary_components},
                 {"unclassified", r.unclassified},
                 {"types", types},
                 {"verified", r.verified}};
  ctx.document("witness_report.json", report);
  ctx.finish();
  if (!r.verified) {
    throw Error(ErrorKind::kInsufficientDirections,
                "witness with " + std::to_string(pairs) + " direction pairs not verified: error " +
                    format_number(r.approximation_error()) + ", margin " +
                    format_number(r.isotopy_margin()) + ", " +
                    std::to_string(r.closed_components) + " closed components");
  }
}

const std::map<std::string_view, std::vector<std::string_view>>& document_keys() {
  static const std::map<std::string_view, std::vector<std::string_view>> keys = {
      {kManifestSchema,
       {"schema", "tool_version", "command", "config", "field_spec", "derived_seeds", "threads",
        "timestamps", "outputs"}},
      {kSpecfunReportSchema, {"schema", "options", "checks", "passed"}},
      {kNodalSummarySchema,
       {"schema", "source", "window", "spacing", "sphere_grid", "components", "interior",
        "boundary_components", "unclassified", "types"}},
      {kExperimentSummarySchema,
       {"schema", "mode", "scale", "fit", "volumes", "reference", "rows",
        "bootstrap_median_order"}},
      {kWitnessReportSchema,
       {"schema", "dim", "directions", "lambda", "window", "spacing", "value_error",
        "gradient_error", "approximation_error", "value_margin", "gradient_margin",
        "isotopy_margin", "closed_components", "boundary_components", "unclassified", "types",
        "verified"}},
  };
  return keys;
}

}  // namespace

std::string_view tool_version() { return MONOWAVE_VERSION; }

std::string_view to_string(Command command) {
  switch (command) {
    case Command::kSpecfunCheck: return "specfun-check";
    case Command::kSample: return "sample";
    case Command::kNodal: return "nodal";
    case Command::kExperiment: return "experiment";
    case Command::kWitness: return "witness";
  }
  return "";
}

Command command_from_string(std::string_view name) {
  for (Command c : {Command::kSpecfunCheck, Command::kSample, Command::kNodal,
                    Command::kExperiment, Command::kWitness}) {
    if (to_string(c) == name) return c;
  }
  reject("unknown command '" + std::string(name) + "'");
}

std::vector<double> parse_window(std::string_view text) {
  std::vector<double> sides;
  std::stringstream in{std::string(text)};
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos) {
      reject("bad window side '" + item + "'");
    }
    sides.push_back(v);
  }
  return window_sides(json(sides), "--window");
}

json effective_config(Command command, json config, const Overrides& o) {
  if (config.is_null()) config = json::object();
  if (!config.is_object()) reject("config must be a JSON object");
  auto forbid = [&](bool given, const char* flag) {
    if (given) reject(std::string(flag) + " does not apply to " + std::string(to_string(command)));
  };
  if (o.out) config["out"] = *o.out;
  if (o.seed) {
    forbid(command == Command::kSpecfunCheck || command == Command::kWitness, "--seed");
    if (!config.contains("spec") || !config["spec"].is_object()) reject("--seed needs an ensemble 'spec'");
    config["spec"]["seed"] = *o.seed;
  }
  if (o.trials) {
    forbid(command != Command::kExperiment, "--trials");
    config["trials"] = *o.trials;
  }
  if (o.window) {
    forbid(command != Command::kSample && command != Command::kNodal, "--window");
    config["window"] = *o.window;
  }
  if (o.spacing) {
    forbid(command == Command::kSpecfunCheck, "--spacing");
    config["spacing"] = *o.spacing;
  }
  try {
    switch (command) {
      case Command::kSpecfunCheck: return canonical_specfun(config);
      case Command::kSample: return canonical_sample(config);
      case Command::kNodal: return canonical_nodal(config);
      case Command::kExperiment: return canonical_experiment(config);
      case Command::kWitness: return canonical_witness(config);
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kIo || e.kind() == ErrorKind::kValidation) throw;
    reject(e.what());
  }
  reject("unknown command");
}

RunOutcome run(Command command, const json& config, int threads) {
  Context ctx;
  ctx.command = command;
  ctx.config = effective_config(command, config);
  ctx.out = ctx.config["out"].get<std::string>();
  ctx.threads = resolve_threads(threads);
  ctx.started = timestamp();
  ensure_directory(ctx.out);
  switch (command) {
    case Command::kSpecfunCheck: run_specfun(ctx); break;
    case Command::kSample: run_sample(ctx); break;
    case Command::kNodal: run_nodal(ctx); break;
    case Command::kExperiment: run_experiment(ctx); break;
    case Command::kWitness: run_witness(ctx); break;
  }
  return {ctx.out, ctx.outputs};
}

RunOutcome replay(const fs::path& manifest, const fs::path& out_dir, int threads) {
  const json m = read_json(manifest);
  validate_document(m);
  json config = m.at("config");
  config["out"] = out_dir.string();
  return run(command_from_string(m.at("command").get<std::string>()), config, threads);
}

void validate_document(const json& j) {
  if (!j.is_object() || !j.contains("schema") || !j["schema"].is_string()) {
    reject("document has no schema tag");
  }
  const std::string schema = j["schema"];
  if (schema == kWaveSampleSchema) {
    wave_sample_from_json(j);
    return;
  }
  const auto it = document_keys().find(schema);
  if (it == document_keys().end()) reject("unknown schema '" + schema + "'");
  for (const auto& item : j.items()) {
    if (std::find(it->second.begin(), it->second.end(), item.key()) == it->second.end()) {
      reject("unknown key '" + item.key() + "' in " + schema);
    }
  }
  if (schema == kManifestSchema) {
    for (const char* key : {"tool_version", "command", "config", "timestamps", "outputs"}) {
      if (!j.contains(key)) reject(std::string("manifest lacks '") + key + "'");
    }
    const json canonical =
        effective_config(command_from_string(j["command"].get<std::string>()), j["config"]);
    if (canonical != j["config"]) reject("manifest config is not in canonical form");
  }
}

}  // namespace monowave::cli
