#pragma once

#include <array>
#include <compare>
#include <string>
#include <vector>

#include "monowave/geometry.hpp"
#include "monowave/grid.hpp"

/// Zero sets of sampled fields, their connected components, and topology.
namespace monowave {

struct TriangleMesh {
  std::vector<Point> vertices;
  std::vector<std::array<int, 3>> triangles;
};

/// One connected piece of the discrete zero set.
///
/// dim == 2: `polyline` holds the curve; closed curves repeat their first
/// point at the end. Curves on S^2 are stored the same way, as points of R^3.
/// dim == 3: `mesh` holds the surface, oriented so that triangle normals
/// (counter-clockwise winding) point towards f > 0.
struct NodalComponent {
  int dim = 2;
  std::vector<Point> polyline;
  TriangleMesh mesh;
  bool closed = false;
  bool touches_boundary = false;
  Box bounding_box;

  std::size_t vertex_count() const {
    return dim == 2 ? polyline.size() : mesh.vertices.size();
  }
};

/// Marching squares at level 0. Vertices are linearly interpolated on cell
/// edges. Saddle cells (alternating corner signs) are split by the asymptotic
/// decider: the sign of the bilinear interpolant at its saddle point decides
/// which diagonal pair of corners is connected; when the interpolant has no
/// saddle the sign of the corner average is used.
std::vector<NodalComponent> extract_components_2d(const ScalarGrid& grid);

/// Level-0 surfaces by marching tetrahedra on the Kuhn subdivision of each
/// cube into six tetrahedra sharing the main diagonal. The subdivision is the
/// same in every cube, so neighbouring cells agree on every face and no
/// ambiguity rule is needed; the result is watertight away from the window
/// boundary. Throws kNonManifold if an interior edge is not shared by exactly
/// two triangles.
std::vector<NodalComponent> extract_components_3d(const ScalarGrid& grid);

/// Dispatches on grid.dim.
std::vector<NodalComponent> extract_components(const ScalarGrid& grid);

/// Zero curves on S^2 by marching triangles on the lat/long grid (each quad
/// split along a fixed diagonal, the polar caps as triangle fans). Every
/// component is closed.
std::vector<NodalComponent> extract_components_sphere(const SphereGrid& grid);

/// V - E + F with E counted over unique undirected edges. Throws kOpenMesh if
/// some edge does not belong to exactly two triangles.
int euler_characteristic(const TriangleMesh& mesh);

/// True if every edge is traversed once in each direction by the triangles.
bool consistently_oriented(const TriangleMesh& mesh);

struct TopologyType {
  enum class Tag { kCircle, kClosedSurface, kUnclassified };

  Tag tag = Tag::kUnclassified;
  int genus = 0;
  std::string reason;

  static TopologyType circle() { return {Tag::kCircle, 0, {}}; }
  static TopologyType surface(int genus) { return {Tag::kClosedSurface, genus, {}}; }
  static TopologyType unclassified(std::string why) {
    return {Tag::kUnclassified, 0, std::move(why)};
  }

  bool classified() const { return tag != Tag::kUnclassified; }
  /// "circle", "genus_<g>" or "unclassified:<reason>".
  std::string label() const;

  auto operator<=>(const TopologyType&) const = default;
};

/// Circle for closed curves; ClosedSurface{(2 - chi)/2} for closed surfaces.
/// Unclassified when the mesh is open, badly oriented, or chi is odd or > 2.
/// Throws kBoundary for components touching the window boundary.
TopologyType classify(const NodalComponent& component);

}  // namespace monowave
