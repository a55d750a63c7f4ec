#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "monowave/ensemble.hpp"
#include "monowave/geometry.hpp"

namespace monowave {

/// Default sampling step: 16 samples per wavelength 2 pi.
inline constexpr double kDefaultSpacing = kTwoPi / 16.0;
/// Coarsest admissible step for monochromatic fields.
inline constexpr double kMaxSpacing = kTwoPi / 10.0;
/// Grid values with |v| below this are replaced by +kZeroJitter.
inline constexpr double kZeroJitter = 1e-14;

/// Samples of a field on the lattice origin + spacing * (i, j, k).
/// Values are stored with the first axis fastest.
struct ScalarGrid {
  int dim = 2;
  Point origin{};
  double spacing = 0.0;
  std::array<int, 3> shape{1, 1, 1};
  std::vector<double> values;

  std::size_t size() const {
    return static_cast<std::size_t>(shape[0]) * shape[1] * shape[2];
  }
  std::size_t index(int i, int j, int k = 0) const {
    return static_cast<std::size_t>(i) +
           static_cast<std::size_t>(shape[0]) *
               (static_cast<std::size_t>(j) + static_cast<std::size_t>(shape[1]) * k);
  }
  double at(int i, int j, int k = 0) const { return values[index(i, j, k)]; }
  Point position(int i, int j, int k = 0) const {
    return {origin[0] + spacing * i, origin[1] + spacing * j,
            dim == 3 ? origin[2] + spacing * k : 0.0};
  }
  /// The sampled box: origin to the last lattice point.
  Box extent() const;
};

/// Number of lattice points covering [lo, hi] with the given step.
int axis_count(double lo, double hi, double spacing);

/// Throws kResolution if the spacing is non-positive, coarser than
/// kMaxSpacing, or leaves fewer than two samples along some axis.
void check_resolution(const Box& window, double spacing);

/// Dense evaluation of the field on the window lattice, parallel over slabs.
ScalarGrid rasterize(const Field& field, const Box& window, double spacing,
                     int threads = 1);
/// Same, with a separable fast path for plane-wave samples.
ScalarGrid rasterize(const WaveSample& sample, const Box& window, double spacing,
                     int threads = 1);

/// Samples on S^2 at colatitudes theta_i = pi (i + 1/2) / n_theta and
/// longitudes phi_j = 2 pi j / n_phi, plus both poles.
struct SphereGrid {
  int n_theta = 0;
  int n_phi = 0;
  std::vector<double> values;  // row-major (theta, phi)
  double north = 0.0;
  double south = 0.0;

  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * n_phi + j]; }
  Point position(int i, int j) const;
};

/// Throws kResolution unless n_theta >= 4 and n_phi >= 8.
SphereGrid rasterize_sphere(const Field& field, int n_theta, int n_phi);
SphereGrid rasterize_sphere(const WaveSample& sample, int n_theta, int n_phi);
/// max(32, 8 (l + 1)) rows for degree l, twice as many columns.
int default_sphere_rows(int degree);

}  // namespace monowave
