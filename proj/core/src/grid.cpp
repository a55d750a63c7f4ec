#include "monowave/grid.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "monowave/error.hpp"
#include "monowave/parallel.hpp"

namespace monowave {
namespace {

constexpr std::size_t kMaxGridPoints = std::size_t{1} << 31;

ScalarGrid empty_grid(const Box& window, double spacing) {
  check_resolution(window, spacing);
  ScalarGrid g;
  g.dim = window.dim;
  g.origin = window.lo;
  if (g.dim == 2) g.origin[2] = 0.0;
  g.spacing = spacing;
  for (int a = 0; a < g.dim; ++a) g.shape[a] = axis_count(window.lo[a], window.hi[a], spacing);
  if (g.size() > kMaxGridPoints) {
    throw Error(ErrorKind::kResolution, "grid exceeds 2^31 samples");
  }
  g.values.resize(g.size());
  return g;
}

void apply_jitter(std::vector<double>& values) {
  for (double& v : values) {
    if (std::abs(v) < kZeroJitter) v = kZeroJitter;
  }
}

// Slab = one line along the first axis; slab s covers (j, k) = (s % ny, s / ny).
std::size_t slab_count(const ScalarGrid& g) {
  return static_cast<std::size_t>(g.shape[1]) * g.shape[2];
}

ScalarGrid rasterize_plane_wave(const WaveSample& s, const Box& window,
                                double spacing, int threads) {
  ScalarGrid g = empty_grid(window, spacing);
  const std::size_t count = s.directions.size();
  const double scale = 1.0 / std::sqrt(static_cast<double>(count));
  // a cos(t) + b sin(t) = Re((a - i b) e^{i t}); phases factor per axis.
  std::array<std::vector<std::complex<double>>, 3> axis_phase;
  for (int a = 0; a < g.dim; ++a) {
    auto& table = axis_phase[a];
    table.resize(count * g.shape[a]);
    for (std::size_t d = 0; d < count; ++d) {
      for (int i = 0; i < g.shape[a]; ++i) {
        const double x = g.origin[a] + spacing * i;
        table[d * g.shape[a] + i] = std::polar(1.0, s.directions[d][a] * x);
      }
    }
  }
  const int nx = g.shape[0];
  parallel_for(slab_count(g), threads, [&](std::size_t slab) {
    const int j = static_cast<int>(slab % g.shape[1]);
    const int k = static_cast<int>(slab / g.shape[1]);
    double* out = g.values.data() + g.index(0, j, k);
    for (std::size_t d = 0; d < count; ++d) {
      std::complex<double> w(s.coefficients[2 * d], -s.coefficients[2 * d + 1]);
      w *= axis_phase[1][d * g.shape[1] + j];
      if (g.dim == 3) w *= axis_phase[2][d * g.shape[2] + k];
      const double wr = w.real() * scale;
      const double wi = w.imag() * scale;
      const std::complex<double>* ex = axis_phase[0].data() + d * nx;
      for (int i = 0; i < nx; ++i) {
        out[i] += wr * ex[i].real() - wi * ex[i].imag();
      }
    }
  });
  apply_jitter(g.values);
  return g;
}

}  // namespace

Box ScalarGrid::extent() const {
  Box b;
  b.dim = dim;
  b.lo = origin;
  for (int a = 0; a < dim; ++a) b.hi[a] = origin[a] + spacing * (shape[a] - 1);
  return b;
}

int axis_count(double lo, double hi, double spacing) {
  return static_cast<int>(std::floor((hi - lo) / spacing + 1e-9)) + 1;
}

void check_resolution(const Box& window, double spacing) {
  if (window.dim != 2 && window.dim != 3) {
    throw Error(ErrorKind::kUnsupportedDimension,
                "grid windows need dim 2 or 3, got " + std::to_string(window.dim));
  }
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw Error(ErrorKind::kResolution, "spacing must be positive");
  }
  if (spacing > kMaxSpacing * (1.0 + 1e-12)) {
    throw Error(ErrorKind::kResolution,
                "spacing " + std::to_string(spacing) +
                    " is coarser than 2 pi / 10 (fewer than 10 samples per wavelength)");
  }
  for (int a = 0; a < window.dim; ++a) {
    const double width = window.hi[a] - window.lo[a];
    if (!(width >= spacing)) {
      throw Error(ErrorKind::kResolution,
                  "window is degenerate along axis " + std::to_string(a));
    }
  }
}

ScalarGrid rasterize(const Field& field, const Box& window, double spacing,
                     int threads) {
  if (field.dim != window.dim) {
    throw Error(ErrorKind::kUnsupportedDimension, "field and window dimensions differ");
  }
  ScalarGrid g = empty_grid(window, spacing);
  parallel_for(slab_count(g), threads, [&](std::size_t slab) {
    const int j = static_cast<int>(slab % g.shape[1]);
    const int k = static_cast<int>(slab / g.shape[1]);
    double* out = g.values.data() + g.index(0, j, k);
    for (int i = 0; i < g.shape[0]; ++i) out[i] = field(g.position(i, j, k));
  });
  apply_jitter(g.values);
  return g;
}

ScalarGrid rasterize(const WaveSample& sample, const Box& window, double spacing,
                     int threads) {
  validate(sample);
  if (sample.spec.kind == FieldKind::kSphere) {
    throw Error(ErrorKind::kUnsupportedDimension,
                "sphere samples are rasterized with rasterize_sphere");
  }
  if (sample.spec.dim != window.dim) {
    throw Error(ErrorKind::kUnsupportedDimension, "sample and window dimensions differ");
  }
  if (sample.spec.kind == FieldKind::kPlaneWave) {
    return rasterize_plane_wave(sample, window, spacing, threads);
  }
  return rasterize(as_field(sample), window, spacing, threads);
}

Point SphereGrid::position(int i, int j) const {
  const double theta = kPi * (i + 0.5) / n_theta;
  const double phi = kTwoPi * j / n_phi;
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
          std::cos(theta)};
}

SphereGrid rasterize_sphere(const Field& field, int n_theta, int n_phi) {
  if (n_theta < 4 || n_phi < 8) {
    throw Error(ErrorKind::kResolution, "sphere grid needs n_theta >= 4 and n_phi >= 8");
  }
  SphereGrid g;
  g.n_theta = n_theta;
  g.n_phi = n_phi;
  g.values.resize(static_cast<std::size_t>(n_theta) * n_phi);
  for (int i = 0; i < n_theta; ++i) {
    for (int j = 0; j < n_phi; ++j) {
      g.values[static_cast<std::size_t>(i) * n_phi + j] = field(g.position(i, j));
    }
  }
  g.north = field({0.0, 0.0, 1.0});
  g.south = field({0.0, 0.0, -1.0});
  apply_jitter(g.values);
  if (std::abs(g.north) < kZeroJitter) g.north = kZeroJitter;
  if (std::abs(g.south) < kZeroJitter) g.south = kZeroJitter;
  return g;
}

SphereGrid rasterize_sphere(const WaveSample& sample, int n_theta, int n_phi) {
  validate(sample);
  if (sample.spec.kind != FieldKind::kSphere) {
    throw Error(ErrorKind::kUnsupportedDimension, "rasterize_sphere needs a sphere sample");
  }
  return rasterize_sphere(as_field(sample), n_theta, n_phi);
}

int default_sphere_rows(int degree) { return std::max(32, 8 * (degree + 1)); }

}  // namespace monowave
