#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "monowave/ensemble.hpp"
#include "monowave/grid.hpp"
#include "monowave/nodal.hpp"

namespace monowave {

/// Component census of one field on one window.
struct WindowCensus {
  double volume = 0.0;
  std::vector<TopologyType> interior;  // classified closed components
  int boundary_components = 0;
  int unclassified = 0;

  int interior_count() const { return static_cast<int>(interior.size()); }
};

/// Extracts and classifies every component of the grid's zero set.
WindowCensus census(const ScalarGrid& grid);

/// rasterize + census.
WindowCensus census(const Field& field, const Box& window, double spacing,
                    int threads = 1);
WindowCensus census(const WaveSample& sample, const Box& window, double spacing,
                    int threads = 1);

/// Census of the S^2 ensemble; every component is interior.
WindowCensus census_sphere(const WaveSample& sample, int n_theta, int n_phi);

/// Deterministic fields with known zero sets.
///   bessel_ring   J_0(|x|) on [-5, 5]^2: one ring at 2.4048 plus four
///                 arcs of the ring at 5.5201 cut by the window
///   sinc_sphere   sin(|x|)/|x| on [-4.5, 4.5]^3: one sphere of radius pi
///   sine_lattice  sin(x) sin(y) - 1/2 on [-2 pi, 2 pi]^2: one closed loop
///                 around each maximum of sin(x) sin(y), 8 in this window
///   sine_sheet    sin(x) on [0.3, 2 pi - 0.3]^3: one sheet at x = pi
///   linear        x on [-3, 3]^2: one line through the window
///   positive      the constant 1 on [-3, 3]^2: empty zero set
struct TestField {
  std::string name;
  Field field;
  Box window;
};

TestField make_test_field(std::string_view name);
std::vector<std::string> test_field_names();

/// Interior loops of sine_lattice in the centred square of side 2 pi m.
inline int sine_lattice_loops(int m) { return 2 * m * m; }

}  // namespace monowave
