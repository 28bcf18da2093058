#include "unknot/primitives.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "unknot/error.hpp"

namespace unknot {

TriMesh make_icosphere(double radius, int subdivisions) {
  if (subdivisions < 0) throw InvalidInput("icosphere subdivisions must be non-negative");
  const double phi = std::numbers::phi;
  TriMesh m;
  const Vec3 base[12] = {{-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0}, {0, -1, phi},  {0, 1, phi},
                         {0, -1, -phi}, {0, 1, -phi}, {phi, 0, -1},  {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1}};
  for (const auto& p : base) m.add_vertex(normalized(p));
  m.triangles = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9},  {5, 11, 4},
                 {11, 10, 2}, {10, 7, 6}, {7, 1, 8},   {3, 9, 4},  {3, 4, 2},   {3, 2, 6},  {3, 6, 8},
                 {3, 8, 9},  {4, 9, 5},  {2, 4, 11},  {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
  for (int level = 0; level < subdivisions; ++level) {
    std::map<std::uint64_t, Index> midpoint;
    auto mid = [&](Index a, Index b) {
      auto [it, inserted] = midpoint.emplace(edge_key(a, b), 0);
      if (inserted) it->second = m.add_vertex(normalized(m.vertices[a] + m.vertices[b]));
      return it->second;
    };
    std::vector<Triangle> next;
    next.reserve(m.triangles.size() * 4);
    for (const auto& t : m.triangles) {
      const Index ab = mid(t[0], t[1]), bc = mid(t[1], t[2]), ca = mid(t[2], t[0]);
      next.push_back({t[0], ab, ca});
      next.push_back({t[1], bc, ab});
      next.push_back({t[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    m.triangles = std::move(next);
  }
  for (auto& p : m.vertices) p *= radius;
  return m;
}

TriMesh make_uv_sphere(double radius, int segments, int rings) {
  if (segments < 3 || rings < 2) throw InvalidInput("uv sphere needs segments >= 3 and rings >= 2");
  TriMesh m;
  const Index north = m.add_vertex({0, 0, radius});
  for (int r = 1; r < rings; ++r) {
    const double theta = std::numbers::pi * r / rings;
    for (int s = 0; s < segments; ++s) {
      const double a = 2 * std::numbers::pi * s / segments;
      m.add_vertex({radius * std::sin(theta) * std::cos(a), radius * std::sin(theta) * std::sin(a),
                    radius * std::cos(theta)});
    }
  }
  const Index south = m.add_vertex({0, 0, -radius});
  auto ring = [&](int r, int s) { return static_cast<Index>(1 + (r - 1) * segments + (s % segments)); };
  for (int s = 0; s < segments; ++s) m.add_triangle(north, ring(1, s), ring(1, s + 1));
  for (int r = 1; r + 1 < rings; ++r) {
    for (int s = 0; s < segments; ++s) {
      m.add_triangle(ring(r, s), ring(r + 1, s), ring(r + 1, s + 1));
      m.add_triangle(ring(r, s), ring(r + 1, s + 1), ring(r, s + 1));
    }
  }
  for (int s = 0; s < segments; ++s) m.add_triangle(south, ring(rings - 1, s + 1), ring(rings - 1, s));
  return m;
}

TriMesh make_torus(double major_radius, double minor_radius, int major_segments, int tube_segments) {
  if (major_segments < 3 || tube_segments < 3) throw InvalidInput("torus needs at least 3 segments each way");
  TriMesh m;
  for (int i = 0; i < major_segments; ++i) {
    const double u = 2 * std::numbers::pi * i / major_segments;
    for (int j = 0; j < tube_segments; ++j) {
      const double v = 2 * std::numbers::pi * j / tube_segments;
      const double r = major_radius + minor_radius * std::cos(v);
      m.add_vertex({r * std::cos(u), r * std::sin(u), minor_radius * std::sin(v)});
    }
  }
  auto id = [&](int i, int j) {
    return static_cast<Index>((i % major_segments) * tube_segments + (j % tube_segments));
  };
  for (int i = 0; i < major_segments; ++i) {
    for (int j = 0; j < tube_segments; ++j) {
      m.add_triangle(id(i, j), id(i + 1, j), id(i + 1, j + 1));
      m.add_triangle(id(i, j), id(i + 1, j + 1), id(i, j + 1));
    }
  }
  return m;
}

TriMesh make_polar_disc(double radius, int segments, int rings) {
  if (segments < 3 || rings < 1) throw InvalidInput("polar disc needs segments >= 3 and rings >= 1");
  TriMesh m;
  const Index centre = m.add_vertex({0, 0, 0});
  for (int r = 1; r <= rings; ++r) {
    const double rho = radius * (r - 0.5) / (rings - 0.5);
    for (int s = 0; s < segments; ++s) {
      const double a = 2 * std::numbers::pi * s / segments;
      m.add_vertex({rho * std::cos(a), rho * std::sin(a), 0.0});
    }
  }
  auto ring = [&](int r, int s) { return static_cast<Index>(1 + (r - 1) * segments + (s % segments)); };
  for (int s = 0; s < segments; ++s) m.add_triangle(centre, ring(1, s), ring(1, s + 1));
  for (int r = 1; r < rings; ++r) {
    for (int s = 0; s < segments; ++s) {
      m.add_triangle(ring(r, s), ring(r + 1, s), ring(r + 1, s + 1));
      m.add_triangle(ring(r, s), ring(r + 1, s + 1), ring(r, s + 1));
    }
  }
  return m;
}

TriMesh make_cylinder(double radius, double half_height, int segments, int layers) {
  if (segments < 3 || layers < 1) throw InvalidInput("cylinder needs segments >= 3 and layers >= 1");
  TriMesh m;
  for (int l = 0; l <= layers; ++l) {
    const double z = half_height * (2.0 * l / layers - 1.0);
    for (int s = 0; s < segments; ++s) {
      const double a = 2 * std::numbers::pi * s / segments;
      m.add_vertex({radius * std::cos(a), radius * std::sin(a), z});
    }
  }
  auto id = [&](int l, int s) { return static_cast<Index>(l * segments + (s % segments)); };
  for (int l = 0; l < layers; ++l) {
    for (int s = 0; s < segments; ++s) {
      m.add_triangle(id(l, s), id(l, s + 1), id(l + 1, s + 1));
      m.add_triangle(id(l, s), id(l + 1, s + 1), id(l + 1, s));
    }
  }
  return m;
}

}  // namespace unknot
