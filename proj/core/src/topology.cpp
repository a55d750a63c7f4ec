#include <cstdint>
#include <string>
#include <unordered_map>

#include "monowave/error.hpp"
#include "monowave/nodal.hpp"

namespace monowave {
namespace {

std::uint64_t directed(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

}  // namespace

int euler_characteristic(const TriangleMesh& mesh) {
  std::unordered_map<std::uint64_t, int> edges;
  edges.reserve(mesh.triangles.size() * 2);
  for (const auto& tri : mesh.triangles) {
    for (int q = 0; q < 3; ++q) {
      int a = tri[q];
      int b = tri[(q + 1) % 3];
      if (a > b) std::swap(a, b);
      ++edges[directed(a, b)];
    }
  }
  for (const auto& [key, count] : edges) {
    if (count != 2) {
      throw Error(ErrorKind::kOpenMesh, "edge (" + std::to_string(key >> 32) + ", " +
                                            std::to_string(key & 0xFFFFFFFFu) +
                                            ") belongs to " + std::to_string(count) +
                                            " triangles");
    }
  }
  return static_cast<int>(mesh.vertices.size()) - static_cast<int>(edges.size()) +
         static_cast<int>(mesh.triangles.size());
}

bool consistently_oriented(const TriangleMesh& mesh) {
  std::unordered_map<std::uint64_t, int> edges;
  edges.reserve(mesh.triangles.size() * 3);
  for (const auto& tri : mesh.triangles) {
    for (int q = 0; q < 3; ++q) {
      if (++edges[directed(tri[q], tri[(q + 1) % 3])] > 1) return false;
    }
  }
  for (const auto& [key, count] : edges) {
    const int a = static_cast<int>(key >> 32);
    const int b = static_cast<int>(key & 0xFFFFFFFFu);
    if (!edges.contains(directed(b, a))) return false;
  }
  return true;
}

std::string TopologyType::label() const {
  switch (tag) {
    case Tag::kCircle: return "circle";
    case Tag::kClosedSurface: return "genus_" + std::to_string(genus);
    case Tag::kUnclassified: return "unclassified:" + reason;
  }
  return {};
}

TopologyType classify(const NodalComponent& c) {
  if (c.touches_boundary) {
    throw Error(ErrorKind::kBoundary, "component touches the window boundary");
  }
  if (c.dim == 2) {
    if (!c.closed) return TopologyType::unclassified("open curve");
    if (c.polyline.size() < 4) return TopologyType::unclassified("degenerate curve");
    return TopologyType::circle();
  }
  int chi = 0;
  try {
    chi = euler_characteristic(c.mesh);
  } catch (const Error&) {
    return TopologyType::unclassified("open mesh");
  }
  if (!consistently_oriented(c.mesh)) return TopologyType::unclassified("not orientable");
  if (chi % 2 != 0) return TopologyType::unclassified("odd euler characteristic");
  if (chi > 2) return TopologyType::unclassified("euler characteristic above 2");
  return TopologyType::surface((2 - chi) / 2);
}

}  // namespace monowave
