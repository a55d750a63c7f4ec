#include "monowave/pipeline.hpp"

#include <cmath>

#include "monowave/error.hpp"
#include "monowave/specfun.hpp"

namespace monowave {
namespace {

WindowCensus tally(const std::vector<NodalComponent>& components, double volume) {
  WindowCensus out;
  out.volume = volume;
  for (const NodalComponent& c : components) {
    if (c.touches_boundary) {
      ++out.boundary_components;
      continue;
    }
    TopologyType type = classify(c);
    if (type.classified()) {
      out.interior.push_back(std::move(type));
    } else {
      ++out.unclassified;
    }
  }
  return out;
}

}  // namespace

WindowCensus census(const ScalarGrid& grid) {
  return tally(extract_components(grid), grid.extent().volume());
}

WindowCensus census(const Field& field, const Box& window, double spacing,
                    int threads) {
  return census(rasterize(field, window, spacing, threads));
}

WindowCensus census(const WaveSample& sample, const Box& window, double spacing,
                    int threads) {
  return census(rasterize(sample, window, spacing, threads));
}

WindowCensus census_sphere(const WaveSample& sample, int n_theta, int n_phi) {
  return tally(extract_components_sphere(rasterize_sphere(sample, n_theta, n_phi)),
               4.0 * kPi);
}

TestField make_test_field(std::string_view name) {
  TestField t;
  t.name = std::string(name);
  if (name == "bessel_ring") {
    t.field = {2, [](const Point& x) {
                 return specfun::bessel_j(specfun::BesselOrder(0.0), std::hypot(x[0], x[1]));
               }};
    t.window = Box::cube(2, 5.0);
  } else if (name == "sinc_sphere") {
    t.field = {3, [](const Point& x) {
                 return specfun::bessel_j_scaled(specfun::BesselOrder(0.5), norm(x)) *
                        std::sqrt(kPi / 2.0);
               }};
    t.window = Box::cube(3, 4.5);
  } else if (name == "sine_lattice") {
    t.field = {2, [](const Point& x) { return std::sin(x[0]) * std::sin(x[1]) - 0.5; }};
    t.window = Box::cube(2, kTwoPi);
  } else if (name == "sine_sheet") {
    t.field = {3, [](const Point& x) { return std::sin(x[0]); }};
    t.window = {3, {0.3, 0.3, 0.3}, {kTwoPi - 0.3, kTwoPi - 0.3, kTwoPi - 0.3}};
  } else if (name == "linear") {
    t.field = {2, [](const Point& x) { return x[0]; }};
    t.window = Box::cube(2, 3.0);
  } else if (name == "positive") {
    t.field = {2, [](const Point&) { return 1.0; }};
    t.window = Box::cube(2, 3.0);
  } else {
    throw Error(ErrorKind::kValidation, "unknown test field '" + t.name + "'");
  }
  return t;
}

std::vector<std::string> test_field_names() {
  return {"bessel_ring", "sinc_sphere", "sine_lattice", "sine_sheet", "linear", "positive"};
}

}  // namespace monowave
