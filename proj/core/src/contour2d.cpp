#include <algorithm>
#include <cstdint>
#include <limits>
#include <unordered_map>

#include "monowave/error.hpp"
#include "monowave/nodal.hpp"
#include "monowave/union_find.hpp"

namespace monowave {
namespace {

Box bounding_box_of(const std::vector<Point>& points, int dim) {
  Box b;
  b.dim = dim;
  constexpr double inf = std::numeric_limits<double>::infinity();
  b.lo = {inf, inf, inf};
  b.hi = {-inf, -inf, -inf};
  for (const Point& p : points) {
    for (int a = 0; a < 3; ++a) {
      b.lo[a] = std::min(b.lo[a], p[a]);
      b.hi[a] = std::max(b.hi[a], p[a]);
    }
  }
  return b;
}

Point crossing(const Point& p0, double v0, const Point& p1, double v1) {
  const double t = v0 / (v0 - v1);
  return p0 + t * (p1 - p0);
}

// Collects curve vertices and segments, then walks each connected piece.
class CurveBuilder {
 public:
  int add_vertex(const Point& p, bool on_boundary) {
    points_.push_back(p);
    boundary_.push_back(on_boundary);
    adjacency_.push_back({-1, -1});
    return static_cast<int>(points_.size()) - 1;
  }

  void add_segment(int a, int b) {
    link(a, b);
    link(b, a);
  }

  std::vector<NodalComponent> finish(int dim, int ambient) {
    const std::size_t count = points_.size();
    UnionFind sets(count);
    for (std::size_t v = 0; v < count; ++v) {
      for (int w : adjacency_[v]) {
        if (w >= 0) sets.unite(v, static_cast<std::size_t>(w));
      }
    }
    // Components in order of their smallest vertex id.
    std::vector<int> slot(count, -1);
    std::vector<std::vector<int>> groups;
    for (std::size_t v = 0; v < count; ++v) {
      const std::size_t root = sets.find(v);
      if (slot[root] < 0) {
        slot[root] = static_cast<int>(groups.size());
        groups.emplace_back();
      }
      groups[slot[root]].push_back(static_cast<int>(v));
    }
    std::vector<NodalComponent> out;
    out.reserve(groups.size());
    for (const auto& members : groups) out.push_back(walk(members, dim, ambient));
    return out;
  }

 private:
  void link(int from, int to) {
    auto& slots = adjacency_[from];
    if (slots[0] < 0) {
      slots[0] = to;
    } else if (slots[1] < 0) {
      slots[1] = to;
    } else {
      throw Error(ErrorKind::kNonManifold, "contour vertex with more than two neighbours");
    }
  }

  int degree(int v) const {
    return (adjacency_[v][0] >= 0) + (adjacency_[v][1] >= 0);
  }

  NodalComponent walk(const std::vector<int>& members, int dim, int ambient) const {
    int start = members.front();
    bool closed = true;
    for (int v : members) {
      if (degree(v) < 2) {
        start = v;
        closed = false;
        break;
      }
    }
    NodalComponent c;
    c.dim = dim;
    c.closed = closed;
    int prev = -1;
    int cur = start;
    for (;;) {
      c.polyline.push_back(points_[cur]);
      c.touches_boundary = c.touches_boundary || boundary_[cur];
      const auto& nb = adjacency_[cur];
      const int next = nb[0] != prev ? nb[0] : nb[1];
      if (next < 0 || next == start) break;
      prev = cur;
      cur = next;
    }
    if (closed) c.polyline.push_back(points_[start]);
    c.bounding_box = bounding_box_of(c.polyline, ambient);
    return c;
  }

  std::vector<Point> points_;
  std::vector<char> boundary_;
  std::vector<std::array<int, 2>> adjacency_;
};

}  // namespace

std::vector<NodalComponent> extract_components_2d(const ScalarGrid& grid) {
  if (grid.dim != 2) {
    throw Error(ErrorKind::kUnsupportedDimension, "extract_components_2d needs a 2D grid");
  }
  const int nx = grid.shape[0];
  const int ny = grid.shape[1];
  CurveBuilder builder;
  // Vertex ids for the edge (i, j)-(i+1, j) and (i, j)-(i, j+1).
  std::vector<int> horizontal(grid.size(), -1);
  std::vector<int> vertical(grid.size(), -1);

  auto h_vertex = [&](int i, int j) {
    int& id = horizontal[grid.index(i, j)];
    if (id < 0) {
      id = builder.add_vertex(crossing(grid.position(i, j), grid.at(i, j),
                                       grid.position(i + 1, j), grid.at(i + 1, j)),
                              j == 0 || j == ny - 1);
    }
    return id;
  };
  auto v_vertex = [&](int i, int j) {
    int& id = vertical[grid.index(i, j)];
    if (id < 0) {
      id = builder.add_vertex(crossing(grid.position(i, j), grid.at(i, j),
                                       grid.position(i, j + 1), grid.at(i, j + 1)),
                              i == 0 || i == nx - 1);
    }
    return id;
  };

  for (int j = 0; j + 1 < ny; ++j) {
    for (int i = 0; i + 1 < nx; ++i) {
      const double v00 = grid.at(i, j);
      const double v10 = grid.at(i + 1, j);
      const double v11 = grid.at(i + 1, j + 1);
      const double v01 = grid.at(i, j + 1);
      const bool p00 = v00 > 0, p10 = v10 > 0, p11 = v11 > 0, p01 = v01 > 0;
      // Edges: 0 bottom, 1 right, 2 top, 3 left.
      const bool cut[4] = {p00 != p10, p10 != p11, p01 != p11, p00 != p01};
      const int cuts = cut[0] + cut[1] + cut[2] + cut[3];
      if (cuts == 0) continue;
      auto edge_vertex = [&](int e) {
        switch (e) {
          case 0: return h_vertex(i, j);
          case 1: return v_vertex(i + 1, j);
          case 2: return h_vertex(i, j + 1);
          default: return v_vertex(i, j);
        }
      };
      if (cuts == 2) {
        int ends[2];
        int n = 0;
        for (int e = 0; e < 4; ++e) {
          if (cut[e]) ends[n++] = edge_vertex(e);
        }
        builder.add_segment(ends[0], ends[1]);
        continue;
      }
      // Saddle: p00 == p11 != p10 == p01.
      const double denom = v00 + v11 - v10 - v01;
      const double decider =
          denom != 0.0 ? (v00 * v11 - v10 * v01) / denom : 0.25 * (v00 + v10 + v11 + v01);
      const bool centre_positive = decider >= 0.0;
      if (centre_positive == p00) {
        // 00 and 11 connect through the centre; cut off corners 10 and 01.
        builder.add_segment(edge_vertex(0), edge_vertex(1));
        builder.add_segment(edge_vertex(2), edge_vertex(3));
      } else {
        builder.add_segment(edge_vertex(3), edge_vertex(0));
        builder.add_segment(edge_vertex(1), edge_vertex(2));
      }
    }
  }
  return builder.finish(2, 2);
}

std::vector<NodalComponent> extract_components_sphere(const SphereGrid& grid) {
  const int rows = grid.n_theta;
  const int cols = grid.n_phi;
  const int north = rows * cols;
  const int south = north + 1;
  auto value = [&](int node) {
    if (node == north) return grid.north;
    if (node == south) return grid.south;
    return grid.values[node];
  };
  auto position = [&](int node) -> Point {
    if (node == north) return {0.0, 0.0, 1.0};
    if (node == south) return {0.0, 0.0, -1.0};
    return grid.position(node / cols, node % cols);
  };
  auto node = [&](int i, int j) { return i * cols + (j % cols); };

  CurveBuilder builder;
  std::unordered_map<std::uint64_t, int> edge_vertex;
  auto vertex_on = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    const std::uint64_t key = static_cast<std::uint64_t>(a) * (south + 1) + b;
    auto [it, inserted] = edge_vertex.try_emplace(key, -1);
    if (inserted) {
      const Point p = crossing(position(a), value(a), position(b), value(b));
      it->second = builder.add_vertex((1.0 / norm(p)) * p, false);
    }
    return it->second;
  };
  auto triangle = [&](int a, int b, int c) {
    const int nodes[3] = {a, b, c};
    int ends[2];
    int n = 0;
    for (int e = 0; e < 3; ++e) {
      const int u = nodes[e];
      const int w = nodes[(e + 1) % 3];
      if ((value(u) > 0) != (value(w) > 0)) ends[n++] = vertex_on(u, w);
    }
    if (n == 2) builder.add_segment(ends[0], ends[1]);
  };

  for (int j = 0; j < cols; ++j) triangle(north, node(0, j), node(0, j + 1));
  for (int i = 0; i + 1 < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      triangle(node(i, j), node(i, j + 1), node(i + 1, j + 1));
      triangle(node(i, j), node(i + 1, j + 1), node(i + 1, j));
    }
  }
  for (int j = 0; j < cols; ++j) triangle(south, node(rows - 1, j + 1), node(rows - 1, j));
  return builder.finish(2, 3);
}

std::vector<NodalComponent> extract_components(const ScalarGrid& grid) {
  return grid.dim == 2 ? extract_components_2d(grid) : extract_components_3d(grid);
}

}  // namespace monowave
