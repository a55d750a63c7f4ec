#pragma once

#include <cstdint>
#include <vector>

#include "monowave/geometry.hpp"
#include "monowave/rng.hpp"

namespace monowave {

enum class DirectionScheme { kEquidistributed, kIidRandom };

/// One representative of each antipodal pair {xi, -xi} on S^{n-1}.
///
/// n = 2: xi_k = (cos(pi k / N), sin(pi k / N)), so the full set is the
/// 2N-th roots of unity. n = 3: an N-point spherical Fibonacci lattice
/// z_i = 1 - (2i + 1)/N, phi_i = 2 pi frac(i / golden ratio); the set with
/// its antipodes integrates smooth functions at the rate of the lattice
/// itself.
std::vector<Point> equidistributed_directions(int n, int pairs);

/// Independent uniform directions on S^{n-1}.
std::vector<Point> random_directions(int n, int count, RandomStream& stream);

/// {xi_1, -xi_1, xi_2, -xi_2, ...}.
std::vector<Point> with_antipodes(const std::vector<Point>& representatives);

/// Largest relative deviation |count/total - area| / area over `caps` random
/// spherical caps whose area fraction lies in [0.1, 0.5]. Measures how well a
/// point set equidistributes with respect to surface measure.
double cap_discrepancy(const std::vector<Point>& points, int n, int caps,
                       std::uint64_t seed);

}  // namespace monowave
