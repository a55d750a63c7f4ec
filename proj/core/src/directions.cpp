#include "monowave/directions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "monowave/error.hpp"

namespace monowave {
namespace {

void require_dimension(int n) {
  if (n != 2 && n != 3) {
    throw Error(ErrorKind::kUnsupportedDimension,
                "direction sets exist for n in {2, 3}, got " + std::to_string(n));
  }
}

Point uniform_direction(int n, RandomStream& stream) {
  if (n == 2) {
    const double theta = kTwoPi * stream.uniform();
    return {std::cos(theta), std::sin(theta), 0.0};
  }
  const double z = 2.0 * stream.uniform() - 1.0;
  const double phi = kTwoPi * stream.uniform();
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {s * std::cos(phi), s * std::sin(phi), z};
}

}  // namespace

std::vector<Point> equidistributed_directions(int n, int pairs) {
  require_dimension(n);
  if (pairs < 1) {
    throw Error(ErrorKind::kInvalidSpec, "direction count must be >= 1");
  }
  std::vector<Point> out(static_cast<std::size_t>(pairs));
  if (n == 2) {
    for (int k = 0; k < pairs; ++k) {
      const double theta = kPi * k / pairs;
      out[k] = {std::cos(theta), std::sin(theta), 0.0};
    }
    return out;
  }
  const double golden = 0.5 * (1.0 + std::sqrt(5.0));
  for (int i = 0; i < pairs; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / pairs;
    const double phi = kTwoPi * std::fmod(i / golden, 1.0);
    const double s = std::sqrt((1.0 - z) * (1.0 + z));
    out[i] = {s * std::cos(phi), s * std::sin(phi), z};
  }
  return out;
}

std::vector<Point> random_directions(int n, int count, RandomStream& stream) {
  require_dimension(n);
  std::vector<Point> out(static_cast<std::size_t>(count));
  for (auto& p : out) p = uniform_direction(n, stream);
  return out;
}

std::vector<Point> with_antipodes(const std::vector<Point>& representatives) {
  std::vector<Point> out;
  out.reserve(2 * representatives.size());
  for (const Point& p : representatives) {
    out.push_back(p);
    out.push_back(-1.0 * p);
  }
  return out;
}

double cap_discrepancy(const std::vector<Point>& points, int n, int caps,
                       std::uint64_t seed) {
  require_dimension(n);
  if (points.empty()) return 1.0;
  RandomStream stream(seed, 0);
  double worst = 0.0;
  for (int c = 0; c < caps; ++c) {
    const Point center = uniform_direction(n, stream);
    const double area = 0.1 + 0.4 * stream.uniform();
    // Cap {x : <x, center> >= h} with the requested area fraction.
    const double h = n == 2 ? std::cos(kPi * area) : 1.0 - 2.0 * area;
    std::size_t inside = 0;
    for (const Point& p : points) {
      if (dot(p, center) >= h) ++inside;
    }
    const double fraction = static_cast<double>(inside) / points.size();
    worst = std::max(worst, std::fabs(fraction - area) / area);
  }
  return worst;
}

}  // namespace monowave
