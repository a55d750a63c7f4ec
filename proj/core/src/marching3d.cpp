#include <algorithm>
#include <limits>
#include <string>
#include <unordered_map>

#include "monowave/error.hpp"
#include "monowave/nodal.hpp"
#include "monowave/union_find.hpp"

namespace monowave {
namespace {

// Cube corners are bitmasks: bit 0 = +x, bit 1 = +y, bit 2 = +z.
// Tetrahedron (a, b, c) is 0 -> e_a -> e_a + e_b -> 7, one per axis order.
struct TetTable {
  std::array<std::array<int, 4>, 6> corners{};
  // triangles[tet][case] lists triangles as three local edges; each edge is a
  // pair of tet vertex slots (lower corner first). Case bit v = slot v positive.
  std::array<std::array<std::vector<std::array<std::array<int, 2>, 3>>, 16>, 6> triangles;
};

Point corner_point(int c) {
  return {static_cast<double>(c & 1), static_cast<double>((c >> 1) & 1),
          static_cast<double>((c >> 2) & 1)};
}

TetTable build_table() {
  TetTable table;
  const int orders[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                            {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (int t = 0; t < 6; ++t) {
    const int a = 1 << orders[t][0];
    const int b = 1 << orders[t][1];
    table.corners[t] = {0, a, a | b, 7};
    const auto& corners = table.corners[t];
    for (int mask = 1; mask < 15; ++mask) {
      std::vector<int> pos, neg;
      for (int v = 0; v < 4; ++v) ((mask >> v) & 1 ? pos : neg).push_back(v);
      auto edge = [](int u, int w) { return std::array<int, 2>{std::min(u, w), std::max(u, w)}; };
      std::vector<std::array<std::array<int, 2>, 3>> tris;
      if (pos.size() == 1) {
        tris.push_back({edge(pos[0], neg[0]), edge(pos[0], neg[1]), edge(pos[0], neg[2])});
      } else if (neg.size() == 1) {
        tris.push_back({edge(neg[0], pos[0]), edge(neg[0], pos[1]), edge(neg[0], pos[2])});
      } else {
        const auto e0 = edge(pos[0], neg[0]);
        const auto e1 = edge(pos[0], neg[1]);
        const auto e2 = edge(pos[1], neg[1]);
        const auto e3 = edge(pos[1], neg[0]);
        tris.push_back({e0, e1, e2});
        tris.push_back({e0, e2, e3});
      }
      // Orient with exact edge midpoints so normals point towards f > 0.
      Point towards{};
      for (int v : pos) towards = towards + (1.0 / pos.size()) * corner_point(corners[v]);
      for (int v : neg) towards = towards - (1.0 / neg.size()) * corner_point(corners[v]);
      for (auto& tri : tris) {
        Point m[3];
        for (int k = 0; k < 3; ++k) {
          m[k] = 0.5 * (corner_point(corners[tri[k][0]]) + corner_point(corners[tri[k][1]]));
        }
        if (dot(cross(m[1] - m[0], m[2] - m[0]), towards) < 0.0) std::swap(tri[1], tri[2]);
      }
      table.triangles[t][mask] = std::move(tris);
    }
  }
  return table;
}

const TetTable& tet_table() {
  static const TetTable table = build_table();
  return table;
}

struct EdgeKeyHash {
  std::size_t operator()(std::uint64_t k) const noexcept {
    return std::hash<std::uint64_t>{}(k * 0x9E3779B97F4A7C15ULL);
  }
};

std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

}  // namespace

std::vector<NodalComponent> extract_components_3d(const ScalarGrid& grid) {
  if (grid.dim != 3) {
    throw Error(ErrorKind::kUnsupportedDimension, "extract_components_3d needs a 3D grid");
  }
  const TetTable& table = tet_table();
  const auto& shape = grid.shape;

  std::vector<Point> points;
  std::vector<char> on_boundary;
  std::vector<std::array<int, 3>> triangles;
  // Vertex id for the lattice edge from node u along corner offset d (1..7).
  std::vector<int> vertex_id(grid.size() * 8, -1);

  auto vertex = [&](int i, int j, int k, int from, int to) {
    const int ui = i + (from & 1), uj = j + ((from >> 1) & 1), uk = k + ((from >> 2) & 1);
    const int d = to ^ from;
    const std::size_t u = grid.index(ui, uj, uk);
    int& id = vertex_id[u * 8 + d];
    if (id < 0) {
      const int wi = ui + (d & 1), wj = uj + ((d >> 1) & 1), wk = uk + ((d >> 2) & 1);
      const double fu = grid.values[u];
      const double fw = grid.at(wi, wj, wk);
      const Point pu = grid.position(ui, uj, uk);
      const Point pw = grid.position(wi, wj, wk);
      points.push_back(pu + (fu / (fu - fw)) * (pw - pu));
      const int coords[3] = {ui, uj, uk};
      bool boundary = false;
      for (int a = 0; a < 3; ++a) {
        if (!((d >> a) & 1) && (coords[a] == 0 || coords[a] == shape[a] - 1)) boundary = true;
      }
      on_boundary.push_back(boundary);
      id = static_cast<int>(points.size()) - 1;
    }
    return id;
  };

  for (int k = 0; k + 1 < shape[2]; ++k) {
    for (int j = 0; j + 1 < shape[1]; ++j) {
      for (int i = 0; i + 1 < shape[0]; ++i) {
        int corner_sign = 0;
        for (int c = 0; c < 8; ++c) {
          if (grid.at(i + (c & 1), j + ((c >> 1) & 1), k + ((c >> 2) & 1)) > 0) {
            corner_sign |= 1 << c;
          }
        }
        if (corner_sign == 0 || corner_sign == 0xFF) continue;
        for (int t = 0; t < 6; ++t) {
          const auto& corners = table.corners[t];
          int mask = 0;
          for (int v = 0; v < 4; ++v) {
            if ((corner_sign >> corners[v]) & 1) mask |= 1 << v;
          }
          for (const auto& tri : table.triangles[t][mask]) {
            std::array<int, 3> ids;
            for (int q = 0; q < 3; ++q) {
              ids[q] = vertex(i, j, k, corners[tri[q][0]], corners[tri[q][1]]);
            }
            triangles.push_back(ids);
          }
        }
      }
    }
  }

  UnionFind sets(points.size());
  for (const auto& tri : triangles) {
    sets.unite(tri[0], tri[1]);
    sets.unite(tri[0], tri[2]);
  }
  std::vector<int> slot(points.size(), -1);
  std::vector<std::vector<int>> groups;  // triangle ids per component
  for (std::size_t v = 0; v < points.size(); ++v) {
    const std::size_t root = sets.find(v);
    if (slot[root] < 0) {
      slot[root] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
  }
  for (std::size_t f = 0; f < triangles.size(); ++f) {
    groups[slot[sets.find(triangles[f][0])]].push_back(static_cast<int>(f));
  }

  std::vector<NodalComponent> out;
  out.reserve(groups.size());
  std::vector<int> local(points.size(), -1);
  for (const auto& faces : groups) {
    NodalComponent c;
    c.dim = 3;
    std::vector<int> globals;
    for (int f : faces) {
      std::array<int, 3> tri;
      for (int q = 0; q < 3; ++q) {
        const int g = triangles[f][q];
        if (local[g] < 0) {
          local[g] = static_cast<int>(globals.size());
          globals.push_back(g);
          c.mesh.vertices.push_back(points[g]);
          c.touches_boundary = c.touches_boundary || on_boundary[g];
        }
        tri[q] = local[g];
      }
      c.mesh.triangles.push_back(tri);
    }
    std::unordered_map<std::uint64_t, int, EdgeKeyHash> edge_count;
    for (const auto& tri : c.mesh.triangles) {
      for (int q = 0; q < 3; ++q) ++edge_count[edge_key(tri[q], tri[(q + 1) % 3])];
    }
    for (const auto& [key, count] : edge_count) {
      const int a = static_cast<int>(key >> 32);
      const int b = static_cast<int>(key & 0xFFFFFFFFu);
      const bool border_edge = on_boundary[globals[a]] && on_boundary[globals[b]];
      if (count > 2 || (count == 1 && !border_edge)) {
        throw Error(ErrorKind::kNonManifold,
                    "isosurface edge shared by " + std::to_string(count) +
                        " triangles away from the window boundary");
      }
    }
    for (int g : globals) local[g] = -1;
    c.closed = !c.touches_boundary;
    Box b;
    b.dim = 3;
    constexpr double inf = std::numeric_limits<double>::infinity();
    b.lo = {inf, inf, inf};
    b.hi = {-inf, -inf, -inf};
    for (const Point& p : c.mesh.vertices) {
      for (int a = 0; a < 3; ++a) {
        b.lo[a] = std::min(b.lo[a], p[a]);
        b.hi[a] = std::max(b.hi[a], p[a]);
      }
    }
    c.bounding_box = b;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace monowave
