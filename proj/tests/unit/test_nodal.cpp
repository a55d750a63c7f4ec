#include <gtest/gtest.h>

#include <cmath>

#include "monowave/error.hpp"
#include "monowave/nodal.hpp"
#include "monowave/pipeline.hpp"
#include "monowave/specfun.hpp"
#include "oracles.hpp"

using namespace monowave;

namespace {

NodalComponent closed_surface(TriangleMesh mesh) {
  NodalComponent c;
  c.dim = 3;
  c.mesh = std::move(mesh);
  c.closed = true;
  return c;
}

double signed_volume(const TriangleMesh& m) {
  double v = 0.0;
  for (const auto& t : m.triangles) {
    v += dot(m.vertices[t[0]], cross(m.vertices[t[1]], m.vertices[t[2]]));
  }
  return v / 6.0;
}

std::vector<NodalComponent> interior(const std::vector<NodalComponent>& all) {
  std::vector<NodalComponent> out;
  for (const auto& c : all) {
    if (!c.touches_boundary) out.push_back(c);
  }
  return out;
}

}  // namespace

TEST(Topology, Octahedron) {
  const auto m = oracle::octahedron();
  EXPECT_EQ(euler_characteristic(m), 2);
  EXPECT_TRUE(consistently_oriented(m));
  EXPECT_EQ(classify(closed_surface(m)), TopologyType::surface(0));
}

TEST(Topology, TorusGrid) {
  const auto m = oracle::torus_grid(12, 8);
  EXPECT_EQ(euler_characteristic(m), 0);
  EXPECT_TRUE(consistently_oriented(m));
  EXPECT_EQ(classify(closed_surface(m)), TopologyType::surface(1));
}

TEST(Topology, HigherGenusVoxelSurfaces) {
  for (int g = 1; g <= 4; ++g) {
    const auto m = oracle::multi_torus(g);
    EXPECT_EQ(euler_characteristic(m), 2 - 2 * g);
    EXPECT_TRUE(consistently_oriented(m));
    EXPECT_EQ(classify(closed_surface(m)).label(), "genus_" + std::to_string(g));
  }
}

TEST(Topology, OpenAndMisorientedMeshesAreUnclassified) {
  auto open = oracle::octahedron();
  open.triangles.pop_back();
  try {
    euler_characteristic(open);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kOpenMesh);
  }
  EXPECT_FALSE(classify(closed_surface(open)).classified());

  auto flipped = oracle::octahedron();
  std::swap(flipped.triangles[0][1], flipped.triangles[0][2]);
  EXPECT_FALSE(consistently_oriented(flipped));
  EXPECT_FALSE(classify(closed_surface(flipped)).classified());
}

TEST(Topology, BoundaryComponentsCannotBeClassified) {
  NodalComponent c = closed_surface(oracle::octahedron());
  c.touches_boundary = true;
  try {
    classify(c);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kBoundary);
  }
}

TEST(Topology, Labels) {
  EXPECT_EQ(TopologyType::circle().label(), "circle");
  EXPECT_EQ(TopologyType::surface(3).label(), "genus_3");
  EXPECT_EQ(TopologyType::unclassified("open").label(), "unclassified:open");
  EXPECT_LT(TopologyType::surface(0), TopologyType::surface(1));
}

TEST(Contour2d, RingFieldHasOneInteriorCircle) {
  const TestField t = make_test_field("bessel_ring");
  const auto comps = extract_components(rasterize(t.field, t.window, kDefaultSpacing));
  const auto inner = interior(comps);
  ASSERT_EQ(inner.size(), 1u);
  EXPECT_EQ(comps.size(), 5u);
  const auto& ring = inner[0];
  EXPECT_TRUE(ring.closed);
  EXPECT_EQ(ring.polyline.front(), ring.polyline.back());
  const double zero = oracle::first_bessel_zero(0.0);
  for (const Point& p : ring.polyline) EXPECT_NEAR(std::hypot(p[0], p[1]), zero, 0.01);
  EXPECT_EQ(classify(ring), TopologyType::circle());
}

TEST(Contour2d, EmptyAndOpenZeroSets) {
  const TestField pos = make_test_field("positive");
  EXPECT_TRUE(extract_components(rasterize(pos.field, pos.window, 0.5)).empty());
  const TestField lin = make_test_field("linear");
  const auto comps = extract_components(rasterize(lin.field, lin.window, 0.5));
  ASSERT_EQ(comps.size(), 1u);
  EXPECT_FALSE(comps[0].closed);
  EXPECT_TRUE(comps[0].touches_boundary);
}

TEST(Contour2d, SaddleCellFollowsBilinearInterpolant) {
  // One cell straddles the saddle of x y - 0.01; the two hyperbola branches
  // must stay apart.
  const Box box = Box::cube(2, 0.75);
  for (double sign : {1.0, -1.0}) {
    const Field f{2, [sign](const Point& x) { return x[0] * x[1] - sign * 0.01; }};
    const auto comps = extract_components(rasterize(f, box, 0.5));
    ASSERT_EQ(comps.size(), 2u);
    for (const auto& c : comps) {
      const Point mid = 0.5 * (c.bounding_box.lo + c.bounding_box.hi);
      EXPECT_GT(sign * mid[0] * mid[1], 0.0);
    }
  }
}

TEST(Contour2d, SineLatticeMatchesAnalyticCount) {
  const Field f = make_test_field("sine_lattice").field;
  for (int m = 1; m <= 4; ++m) {
    const Box box = Box::cube(2, kPi * m);
    const auto inner = interior(extract_components(rasterize(f, box, kDefaultSpacing)));
    EXPECT_EQ(static_cast<int>(inner.size()), oracle::sine_lattice_maxima(box));
    EXPECT_EQ(static_cast<int>(inner.size()), sine_lattice_loops(m));
  }
}

TEST(Marching3d, SincSphereIsOneInwardOrientedSphere) {
  const TestField t = make_test_field("sinc_sphere");
  const auto inner = interior(extract_components(rasterize(t.field, t.window, kDefaultSpacing)));
  ASSERT_EQ(inner.size(), 1u);
  const auto& s = inner[0];
  EXPECT_EQ(classify(s), TopologyType::surface(0));
  EXPECT_TRUE(consistently_oriented(s.mesh));
  for (const Point& p : s.mesh.vertices) EXPECT_NEAR(norm(p), kPi, 0.05);
  // Normals point towards f > 0, which is inside the sphere.
  EXPECT_NEAR(signed_volume(s.mesh), -4.0 / 3.0 * kPi * kPi * kPi * kPi, 2.0);
}

TEST(Marching3d, TorusAndDoubleTorus) {
  const Field torus{3, [](const Point& x) {
                      const double q = std::hypot(x[0], x[1]) - 1.5;
                      return q * q + x[2] * x[2] - 0.25;
                    }};
  auto inner = interior(extract_components(rasterize(torus, Box::centered(3, {5, 5, 2}), 0.1)));
  ASSERT_EQ(inner.size(), 1u);
  EXPECT_EQ(classify(inner[0]), TopologyType::surface(1));

  const Field two{3, [](const Point& x) {
                    const double a = x[0] * x[0], b = x[1] * x[1];
                    const double q = (a + b) * (a + b) - a + b;
                    return q * q + x[2] * x[2] - 0.01;
                  }};
  inner = interior(extract_components(rasterize(two, Box::centered(3, {2.6, 1.4, 0.6}), 0.02)));
  ASSERT_EQ(inner.size(), 1u);
  EXPECT_EQ(classify(inner[0]), TopologyType::surface(2));
}

TEST(Marching3d, SlabLatticeCountsPockets) {
  const Field f{3, [](const Point& x) {
                  return std::sin(x[0]) * std::sin(x[1]) * std::sin(x[2]) - 0.5;
                }};
  const auto inner = interior(extract_components(rasterize(f, Box::cube(3, 2 * kPi), kDefaultSpacing)));
  EXPECT_EQ(inner.size(), 32u);
  for (const auto& c : inner) EXPECT_EQ(classify(c), TopologyType::surface(0));
}

TEST(Refinement, TestFieldCountsAreStable) {
  for (const std::string& name : test_field_names()) {
    const TestField t = make_test_field(name);
    const WindowCensus coarse = census(t.field, t.window, kDefaultSpacing);
    const WindowCensus fine = census(t.field, t.window, kDefaultSpacing / 2);
    EXPECT_EQ(coarse.interior, fine.interior) << name;
    EXPECT_EQ(coarse.boundary_components, fine.boundary_components) << name;
    EXPECT_EQ(coarse.unclassified, 0) << name;
  }
}

TEST(SphereContours, ZonalFieldsGiveLatitudeCircles) {
  for (int l = 1; l <= 5; ++l) {
    const Field f{2, [l](const Point& u) { return std::legendre(l, u[2]); }};
    const auto comps = extract_components_sphere(rasterize_sphere(f, 48, 96));
    ASSERT_EQ(static_cast<int>(comps.size()), l);
    for (const auto& c : comps) {
      EXPECT_TRUE(c.closed);
      EXPECT_EQ(classify(c), TopologyType::circle());
      for (const Point& p : c.polyline) EXPECT_NEAR(norm(p), 1.0, 1e-12);
    }
  }
}

TEST(Census, SphereEnsembleComponentsAreInterior) {
  FieldSpec s;
  s.kind = FieldKind::kSphere;
  s.degree = 8;
  s.seed = 3;
  const WindowCensus c = census_sphere(sample(s), 64, 128);
  EXPECT_GT(c.interior_count(), 0);
  EXPECT_EQ(c.boundary_components, 0);
  EXPECT_EQ(c.unclassified, 0);
}
