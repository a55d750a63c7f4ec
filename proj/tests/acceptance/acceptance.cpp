// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "monowave/approx.hpp"
#include "monowave/ensemble.hpp"
#include "monowave/error.hpp"
#include "monowave/identities.hpp"
#include "monowave/nodal.hpp"
#include "monowave/parallel.hpp"
#include "monowave/pipeline.hpp"
#include "monowave/specfun.hpp"
#include "monowave/stats.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace monowave;
using nlohmann::json;

namespace {

int g_threads = 0;
int g_failures = 0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

void report(const char* id, const std::function<Outcome()>& criterion) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = criterion();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++g_failures;
  std::printf("%s %s %s [%.1f s]\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str(), s);
  std::fflush(stdout);
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Point unit_direction(int n, int k) {
  const double a = 0.7 + 1.3 * k;
  const double b = 0.4 + 0.9 * k;
  if (n == 2) return {std::cos(a), std::sin(a), 0.0};
  return {std::sin(b) * std::cos(a), std::sin(b) * std::sin(a), std::cos(b)};
}

FieldSpec plane_wave(int n, int N, std::uint64_t seed) {
  FieldSpec s;
  s.dim = n;
  s.kind = FieldKind::kPlaneWave;
  s.direction_count = N;
  s.seed = seed;
  return s;
}

// ft_sph_harm against the library identity suite and against an independent
// tensor-product quadrature, n in {2, 3}, l <= 6, all m, radii 20k/20.
Outcome ac1() {
  const auto t0 = std::chrono::steady_clock::now();
  SpecfunSuiteOptions o;
  o.max_degree = 6;
  o.max_radius = 20.0;
  o.radii = 20;
  double suite = INFINITY;
  for (const IdentityCheck& c : run_specfun_suite(o)) {
    if (c.name == "ft_sph_harm") suite = c.max_residual;
  }
  double independent = 0.0;
  for (int n : {2, 3}) {
    for (int l = 0; l <= 6; ++l) {
      for (int m = 1; m <= specfun::harmonic_dimension(n - 1, l); ++m) {
        for (int k = 1; k <= 20; ++k) {
          const Point x = (20.0 * k / 20) * unit_direction(n, l + m + k);
          const auto closed = specfun::ft_sph_harm({n - 1, l, m}, x);
          const auto quad = oracle::ft_by_quadrature(n, l, m, x, n == 2 ? 96 : 48);
          independent = std::max(independent, std::abs(closed - quad));
        }
      }
    }
  }
  const double s = elapsed(t0);
  return {suite <= 1e-6 && independent <= 1e-6 && s < 60.0,
          fmt("ft_sph_harm max error %.2e (suite), %.2e (independent quadrature), tol 1e-6, %.1f s "
              "of 60 s",
              suite, independent, s)};
}

// Empirical covariance of PlaneWave (alpha = 1, 5000 trials) against J_0(r)
// and sin r / r within 3 standard errors at 15 radii in [0, 3 pi].
Outcome ac2() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<double> radii;
  for (int k = 0; k < 15; ++k) radii.push_back(3.0 * kPi * k / 14);
  bool ok = true;
  std::string detail;
  for (int n : {2, 3}) {
    const FieldSpec spec = plane_wave(n, n == 2 ? 256 : 512, 2024);
    const auto est = covariance_empirical(spec, radii, 5000, {}, g_threads);
    double worst = 0.0;
    for (const auto& e : est) {
      const double exact = n == 2 ? oracle::bessel_j(0.0, e.r)
                                  : (e.r == 0.0 ? 1.0 : std::sin(e.r) / e.r);
      worst = std::max(worst, std::abs(e.mean - exact) / e.std_error);
    }
    ok = ok && worst <= 3.0;
    detail += fmt("n=%d max |mean-exact|/SE %.2f; ", n, worst);
  }
  const double s = elapsed(t0);
  ok = ok && s < 300.0;
  return {ok, detail + fmt("tol 3 SE, 5000 trials, %.1f s of 300 s", s)};
}

// (Delta + 1) f = 0 by central differences (h = 1e-2) at 20 random points of
// [-10, 10]^n for 50 samples of each flat ensemble.
Outcome ac3() {
  std::mt19937_64 rng(31337);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  double worst = 0.0;
  int samples = 0;
  for (int n : {2, 3}) {
    for (FieldKind kind : {FieldKind::kPlaneWave, FieldKind::kP1Truncated}) {
      for (int t = 0; t < 50; ++t) {
        FieldSpec s = plane_wave(n, 128, 77);
        s.kind = kind;
        s.max_degree = truncation_degree(10.0 * std::sqrt(static_cast<double>(n)));
        s.stream = static_cast<std::uint64_t>(t);
        const WaveSample w = sample(s);
        for (int p = 0; p < 20; ++p) {
          const Point x{u(rng), u(rng), n == 3 ? u(rng) : 0.0};
          constexpr double h = 1e-2;
          const double f0 = evaluate(w, x);
          double lap = -2.0 * n * f0;
          for (int a = 0; a < n; ++a) {
            Point xp = x, xm = x;
            xp[a] += h;
            xm[a] -= h;
            lap += evaluate(w, xp) + evaluate(w, xm);
          }
          lap /= h * h;
          worst = std::max(worst, std::abs(lap + f0) / std::max(1.0, std::abs(f0)));
        }
        ++samples;
      }
    }
  }
  return {worst < 1e-4,
          fmt("max relative residual %.2e over %d samples x 20 points, tol 1e-4", worst, samples)};
}

// p1_to_t1 sup error on |x| <= 10 along N = 16..512, l <= 3, all m.
Outcome ac4() {
  constexpr double kNoise = 1e-12;
  bool ok = true;
  double final_worst = 0.0;
  std::string first_bad;
  for (int n : {2, 3}) {
    for (int l = 0; l <= 3; ++l) {
      for (int m = 1; m <= specfun::harmonic_dimension(n - 1, l); ++m) {
        double prev = INFINITY;
        for (int N = 16; N <= 512; N *= 2) {
          const double err = p1_to_t1({n - 1, l, m}, N, 10.0, n == 2 ? 40 : 20).measured_error;
          if (err > prev + 2.0 * kNoise) {
            ok = false;
            if (first_bad.empty()) first_bad = fmt(" increase at n=%d l=%d m=%d N=%d;", n, l, m, N);
          }
          prev = err;
        }
        final_worst = std::max(final_worst, prev);
      }
    }
  }
  ok = ok && final_worst < 1e-2;
  return {ok, fmt("monotone within 2x%.0e noise:%s max error at N=512 %.2e, tol 1e-2",
                  kNoise, first_bad.empty() ? " yes," : first_bad.c_str(), final_worst)};
}

NodalComponent surface(TriangleMesh m) {
  NodalComponent c;
  c.dim = 3;
  c.mesh = std::move(m);
  c.closed = true;
  return c;
}

// Topology of reference meshes and refinement stability of test fields.
Outcome ac5() {
  const auto oct = oracle::octahedron();
  const auto torus = oracle::torus_grid(16, 8);
  const int chi_oct = euler_characteristic(oct);
  const int chi_torus = euler_characteristic(torus);
  bool ok = chi_oct == 2 && classify(surface(oct)) == TopologyType::surface(0) &&
            chi_torus == 0 && classify(surface(torus)) == TopologyType::surface(1);
  std::string detail = fmt("octahedron chi=%d, torus chi=%d;", chi_oct, chi_torus);
  const std::vector<std::pair<std::string, std::string>> expected = {
      {"bessel_ring", "circle"}, {"sinc_sphere", "genus_0"}, {"sine_lattice", "circle"}};
  const std::vector<int> counts = {1, 1, sine_lattice_loops(2)};
  for (std::size_t k = 0; k < expected.size(); ++k) {
    const TestField t = make_test_field(expected[k].first);
    const WindowCensus a = census(t.field, t.window, kDefaultSpacing, g_threads);
    const WindowCensus b = census(t.field, t.window, kDefaultSpacing / 2, g_threads);
    bool same = a.interior == b.interior && a.boundary_components == b.boundary_components &&
                a.unclassified == 0 && b.unclassified == 0 && a.interior_count() == counts[k];
    for (const auto& type : a.interior) same = same && type.label() == expected[k].second;
    ok = ok && same;
    detail += fmt(" %s %d/%d interior at h/(h/2)%s;", t.name.c_str(), a.interior_count(),
                  b.interior_count(), same ? "" : " MISMATCH");
  }
  return {ok, detail};
}

EmpiricalTopologyMeasure measure_of(const std::vector<std::int64_t>& counts) {
  EmpiricalTopologyMeasure m;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    m.add(k == 0 ? TopologyType::circle() : TopologyType::surface(static_cast<int>(k) - 1),
          counts[k]);
  }
  return m;
}

// Discrepancy against the exhaustive subset supremum, and metric axioms.
Outcome ac6() {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> support(1, 12);
  std::uniform_int_distribution<std::int64_t> count(0, 1000);
  auto draw = [&](int s) {
    std::vector<std::int64_t> c(static_cast<std::size_t>(s));
    for (auto& x : c) x = count(rng);
    if (std::all_of(c.begin(), c.end(), [](std::int64_t x) { return x == 0; })) c[0] = 1;
    return c;
  };
  int mismatches = 0;
  for (int t = 0; t < 1000; ++t) {
    const int s = support(rng);
    const auto a = draw(s);
    const auto b = draw(s);
    if (discrepancy(measure_of(a), measure_of(b)) !=
        oracle::brute_force_discrepancy({a}, {b})) {
      ++mismatches;
    }
  }
  int violations = 0;
  for (int t = 0; t < 1000; ++t) {
    const int s = support(rng);
    const auto a = measure_of(draw(s));
    const auto b = measure_of(draw(s));
    const auto c = measure_of(draw(s));
    const double ab = discrepancy(a, b);
    if (discrepancy(a, a) != 0.0 || ab != discrepancy(b, a) || ab < 0.0 || ab > 1.0 ||
        discrepancy(a, c) > ab + discrepancy(b, c) + 1e-15) {
      ++violations;
    }
  }
  return {mismatches == 0 && violations == 0,
          fmt("%d of 1000 pairs differ from the subset maximum; %d of 1000 triples violate the "
              "metric axioms",
              mismatches, violations)};
}

// Nodal count scaling, n = 2, N = 256, 30 trials on squares of side 60 pi .. 140 pi.
Outcome ac7() {
  const auto t0 = std::chrono::steady_clock::now();
  const FieldSpec base = plane_wave(2, 256, 7);
  constexpr int kTrials = 30;
  std::vector<double> sides;
  for (int k = 60; k <= 140; k += 20) sides.push_back(k * kPi);
  std::vector<ScalingRun> runs(sides.size() * kTrials);
  parallel_for(runs.size(), g_threads, [&](std::size_t job) {
    const std::size_t w = job / kTrials;
    FieldSpec s = base;
    s.stream = job;
    const Box box = Box::centered(2, {sides[w], sides[w], 0.0});
    runs[job] = {box.volume(),
                 static_cast<double>(census(sample(s), box, kDefaultSpacing).interior_count())};
  });
  const ScalingFit fit = ns_scaling(runs);
  const auto& v = fit.volumes;
  const double d1 = v[v.size() - 2].density;
  const double d2 = v.back().density;
  const double drift = std::abs(d2 - d1) / d2;
  const double s = elapsed(t0);
  const bool ok = fit.exponent >= 0.9 && fit.exponent <= 1.1 && fit.r_squared >= 0.98 &&
                  drift <= 0.10 && s < 1800.0;
  return {ok, fmt("exponent %.4f in [0.9, 1.1], R^2 %.5f >= 0.98, c_hat %.6f, density drift "
                  "across the two largest windows %.2f%% <= 10%%, %zu windows x %d trials, %.0f s "
                  "of 1800 s",
                  fit.exponent, fit.r_squared, fit.c_hat, 100.0 * drift, v.size(), kTrials, s)};
}

// Concentration, n = 3, cubes of side 8 pi and 16 pi, 30 trials each.
Outcome ac8() {
  const FieldSpec base = plane_wave(3, 256, 11);
  constexpr int kTrials = 30;
  const std::vector<Box> windows = {Box::cube(3, 4 * kPi), Box::cube(3, 8 * kPi)};
  std::vector<int> boundary(windows.size() * kTrials);
  std::vector<int> interior(windows.size() * kTrials);
  try {
    const ConcentrationResult r = concentration_experiment(
        windows, kTrials,
        [&](std::size_t w, std::size_t t) {
          FieldSpec s = base;
          s.stream = w * kTrials + t;
          WindowCensus c = census(sample(s), windows[w], kDefaultSpacing);
          boundary[w * kTrials + t] = c.boundary_components;
          interior[w * kTrials + t] = c.interior_count();
          return c;
        },
        g_threads);
    const auto& small = r.rows[0].discrepancies;
    const auto& large = r.rows[1].discrepancies;
    if (small.empty() || large.empty()) {
      return {false, "a window has no trial with interior components"};
    }
    const double p = bootstrap_median_order(small, large, 2000, 1);
    return {p >= 0.9, fmt("median D %.4f (8 pi) vs %.4f (16 pi), bootstrap P(order) %.3f >= 0.9",
                          r.rows[0].median, r.rows[1].median, p)};
  } catch (const Error& e) {
    long in = 0;
    double bnd[2] = {0, 0};
    for (std::size_t k = 0; k < interior.size(); ++k) {
      in += interior[k];
      bnd[k / kTrials] += boundary[k];
    }
    return {false, fmt("%s; %ld interior components in %zu trials, mean boundary components "
                       "%.1f (8 pi) and %.1f (16 pi); every nodal surface reaches the window "
                       "boundary, so the pooled reference is empty",
                       e.what(), in, interior.size(), bnd[0] / kTrials, bnd[1] / kTrials)};
  }
}

json read(const fs::path& p) {
  std::ifstream in(p);
  return json::parse(in);
}

// Witness through the command layer for n = 2 and n = 3.
Outcome ac9() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  for (auto [n, N] : {std::pair{2, 256}, std::pair{3, 512}}) {
    const fs::path out = fs::path("acceptance_out") / fmt("witness_%d", n);
    fs::remove_all(out);
    const json c = cli::effective_config(cli::Command::kWitness,
                                         {{"dim", n}, {"directions", N}, {"out", out.string()}});
    cli::run(cli::Command::kWitness, c, g_threads);
    const json r = read(out / "witness_report.json");
    const std::string want = n == 2 ? "circle" : "genus_0";
    const double err = std::max(r["value_error"].get<double>(), r["gradient_error"].get<double>());
    const double margin =
        std::min(r["value_margin"].get<double>(), r["gradient_margin"].get<double>());
    const bool one = r["closed_components"] == 1 && r["types"] == json::array({want}) &&
                     r["verified"] == true && err < margin;
    ok = ok && one;
    detail += fmt("n=%d N=%d %d closed component(s) %s, error %.2e < margin %.2e; ", n, N,
                  r["closed_components"].get<int>(), r["types"].dump().c_str(), err, margin);
  }
  const double s = elapsed(t0);
  ok = ok && s < 600.0;
  return {ok, detail + fmt("%.1f s of 600 s", s)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Every command, replayed from its manifest, reproduces its data outputs byte for byte.
Outcome ac10() {
  const json pw2 = {{"dim", 2}, {"kind", "plane_wave"}, {"direction_count", 64}, {"seed", 5}};
  const json pw3 = {{"dim", 3}, {"kind", "plane_wave"}, {"direction_count", 64}, {"seed", 5}};
  const std::vector<std::pair<cli::Command, json>> runs = {
      {cli::Command::kSpecfunCheck, {{"max_degree", 3}, {"radii", 5}}},
      {cli::Command::kSample, {{"spec", pw2}, {"window", {10, 10}}, {"grid", true}}},
      {cli::Command::kNodal, {{"spec", pw3}, {"window", {12, 12, 12}}}},
      {cli::Command::kNodal, {{"spec", {{"kind", "sphere"}, {"degree", 10}, {"seed", 4}}}}},
      {cli::Command::kExperiment,
       {{"mode", "scaling"}, {"spec", pw2}, {"windows", {{20, 20}, {30, 30}, {40, 40}, {50, 50}}},
        {"trials", 5}}},
      {cli::Command::kExperiment,
       {{"mode", "concentration"}, {"spec", pw2}, {"windows", {{20, 20}, {40, 40}}}, {"trials", 20}}},
      {cli::Command::kWitness, {{"dim", 2}, {"directions", 128}}},
  };
  const int workers = std::max(g_threads, 4);
  int files = 0;
  int differ = 0;
  std::string first;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const fs::path a = fs::path("acceptance_out") / fmt("replay_%zu_a", k);
    const fs::path b = fs::path("acceptance_out") / fmt("replay_%zu_b", k);
    fs::remove_all(a);
    fs::remove_all(b);
    json config = runs[k].second;
    config["out"] = a.string();
    const auto first_run =
        cli::run(runs[k].first, cli::effective_config(runs[k].first, config), workers);
    const auto second_run = cli::replay(a / "manifest.json", b, 1);
    if (first_run.outputs != second_run.outputs) {
      ++differ;
      continue;
    }
    for (const auto& f : first_run.outputs) {
      if (f == "manifest.json") continue;
      ++files;
      if (slurp(a / f) != slurp(b / f)) {
        ++differ;
        if (first.empty()) first = " first: " + (a / f).string();
      }
    }
  }
  return {differ == 0 && files > 0,
          fmt("%d data files from %zu runs replayed (thread counts %d vs 1), %d differ%s", files,
              runs.size(), workers, differ, first.c_str())};
}

}  // namespace

int main(int argc, char** argv) {
  for (int k = 1; k + 1 < argc; ++k) {
    if (std::string(argv[k]) == "--threads") g_threads = std::atoi(argv[k + 1]);
  }
  g_threads = resolve_threads(g_threads);
  report("AC1", ac1);
  report("AC2", ac2);
  report("AC3", ac3);
  report("AC4", ac4);
  report("AC5", ac5);
  report("AC6", ac6);
  report("AC7", ac7);
  report("AC8", ac8);
  report("AC9", ac9);
  report("AC10", ac10);
  std::printf("%d of 10 criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
