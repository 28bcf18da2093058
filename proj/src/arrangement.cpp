#include "unknot/arrangement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <unordered_set>

#include "unknot/error.hpp"
#include "unknot/intersect.hpp"

namespace unknot {
namespace {

TriMesh checked_surface(TriMesh m) {
  const MeshTopology topo = analyze_topology(m);
  if (!topo.manifold()) throw TopologyError("surface mesh is not a 2-manifold");
  if (!topo.orientable) throw TopologyError("surface mesh is not orientable");
  orient_consistently(m);
  return m;
}

Index find_root(std::vector<Index>& parent, Index x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

SurfaceMesh::SurfaceMesh(TriMesh m) : mesh_(checked_surface(std::move(m))), edges_(mesh_) {}

RegionDecomposition region_decomposition(const SurfaceMesh& s, const std::vector<EdgeCycle>& curves) {
  const TriMesh& m = s.mesh();
  std::unordered_set<std::uint64_t> cut;
  std::unordered_set<Index> seen;
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const EdgeCycle& cyc = curves[c];
    const std::string name = "curve " + std::to_string(c);
    if (cyc.size() < 3) throw InvalidInput(name + " has fewer than 3 vertices");
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      const Index a = cyc[i], b = cyc[(i + 1) % cyc.size()];
      if (a >= m.vertices.size()) throw InvalidInput(name + " has an out-of-range vertex");
      if (!seen.insert(a).second) throw InvalidInput(name + " repeats a vertex or meets another curve");
      if (!s.edges().find(a, b)) throw InvalidInput(name + " steps along a non-edge");
      cut.insert(edge_key(a, b));
    }
  }

  std::vector<Index> parent(m.triangles.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<Index>(i);
  for (const auto& [key, inc] : s.edges().raw()) {
    if (inc.size() != 2 || cut.count(key)) continue;
    const Index a = find_root(parent, inc[0].triangle), b = find_root(parent, inc[1].triangle);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }

  RegionDecomposition out;
  out.region_of_triangle.resize(m.triangles.size());
  std::vector<Index> id(m.triangles.size(), static_cast<Index>(-1));
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    const Index r = find_root(parent, static_cast<Index>(t));
    if (id[r] == static_cast<Index>(-1)) id[r] = static_cast<Index>(out.region_count++);
    out.region_of_triangle[t] = id[r];
  }

  for (std::size_t c = 0; c < curves.size(); ++c) {
    const Index a = curves[c][0], b = curves[c][1];
    const auto* inc = s.edges().find(a, b);
    if (inc->size() != 2) throw InvalidInput("curve " + std::to_string(c) + " runs along the mesh boundary");
    Index left = (*inc)[0].triangle, right = (*inc)[1].triangle;
    const Triangle& t = m.triangles[left];
    const int k = (*inc)[0].slot;
    if (!(t[k] == a && t[(k + 1) % 3] == b)) std::swap(left, right);
    out.curve_sides.emplace_back(out.region_of_triangle[left], out.region_of_triangle[right]);
  }
  return out;
}

Multigraph boundary_graph(const SurfaceMesh& s, const std::vector<EdgeCycle>& curves) {
  const RegionDecomposition rd = region_decomposition(s, curves);
  std::vector<Edge> edges;
  edges.reserve(curves.size());
  for (const auto& [a, b] : rd.curve_sides) edges.emplace_back(std::min(a, b), std::max(a, b));
  return Multigraph(rd.region_count, std::move(edges));
}

std::vector<SphericalLoop> validated_loops(std::vector<SphericalLoop> loops, double eps) {
  struct Segment {
    std::uint32_t loop, index;
  };
  std::vector<Segment> segs;
  std::vector<Aabb> boxes;
  for (std::size_t l = 0; l < loops.size(); ++l) {
    auto& loop = loops[l];
    const std::string name = "loop " + std::to_string(l);
    if (loop.size() < 3) throw GeometryError(name + " has fewer than 3 points");
    for (auto& p : loop) {
      const double r = norm(p);
      if (!std::isfinite(r) || std::abs(r - 1.0) > 1e-6) throw GeometryError(name + " has a point off the unit sphere");
      p = p / r;
    }
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const Vec3& a = loop[i];
      const Vec3& b = loop[(i + 1) % loop.size()];
      if (distance(a, b) <= eps) throw GeometryError(name + " has a zero-length segment");
      Aabb box;
      box.expand(a);
      box.expand(b);
      box.inflate(2 * eps);
      boxes.push_back(box);
      segs.push_back({static_cast<std::uint32_t>(l), static_cast<std::uint32_t>(i)});
    }
  }
  const Bvh bvh(std::move(boxes));
  bvh.self_pairs([&](Index i, Index j) {
    const Segment s = segs[i], t = segs[j];
    const auto& la = loops[s.loop];
    const auto& lb = loops[t.loop];
    if (s.loop == t.loop) {
      const std::size_t n = la.size();
      if ((s.index + 1) % n == t.index || (t.index + 1) % n == s.index) return;
    }
    const double d = segment_segment_distance(la[s.index], la[(s.index + 1) % la.size()], lb[t.index],
                                              lb[(t.index + 1) % lb.size()]);
    if (s.loop == t.loop && d <= eps) {
      throw GeometryError("loop " + std::to_string(s.loop) + " is not simple");
    }
    if (s.loop != t.loop && d <= 2 * eps) {
      throw GeometryError("loops " + std::to_string(s.loop) + " and " + std::to_string(t.loop) +
                          " intersect or touch");
    }
  });
  return loops;
}

namespace {

double unit_double(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Vec3 random_unit(std::mt19937_64& rng) {
  const double z = 2 * unit_double(rng) - 1;
  const double phi = 2 * std::numbers::pi * unit_double(rng);
  const double r = std::sqrt(std::max(0.0, 1 - z * z));
  return {r * std::cos(phi), r * std::sin(phi), z};
}

struct Degenerate {};

// Parity of crossings of the minor arc p -> r with a closed loop.
bool odd_crossings(const Vec3& p, const Vec3& r, const SphericalLoop& loop) {
  constexpr double tol = 1e-12;
  const Vec3 nb_raw = cross(p, r);
  const double nb_len = norm(nb_raw);
  if (nb_len < 1e-6 || dot(p, r) < -0.999999) throw Degenerate{};
  const Vec3 nb = nb_raw / nb_len;
  bool odd = false;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const Vec3& a1 = loop[i];
    const Vec3& a2 = loop[(i + 1) % loop.size()];
    const double s1 = dot(nb, a1), s2 = dot(nb, a2);
    if (std::abs(s1) < tol || std::abs(s2) < tol) throw Degenerate{};
    if ((s1 > 0) == (s2 > 0)) continue;
    const Vec3 na = normalized(cross(a1, a2));
    const double t1 = dot(na, p), t2 = dot(na, r);
    // p is on the segment's great circle but, being off the loop, not on the
    // segment; the arc leaves p without crossing it.
    if (std::abs(t1) < tol) continue;
    if (std::abs(t2) < tol) throw Degenerate{};
    if ((t1 > 0) == (t2 > 0)) continue;
    const Vec3 y = a1 * std::abs(s2) + a2 * std::abs(s1);
    const Vec3 z = p * std::abs(t2) + r * std::abs(t1);
    if (dot(y, z) > 0) odd = !odd;
  }
  return odd;
}

}  // namespace

Tree sphere_boundary_graph(const std::vector<SphericalLoop>& input, const SphereGraphOptions& options) {
  const std::vector<SphericalLoop> loops = validated_loops(input, options.eps);
  const std::size_t n = loops.size();
  if (n == 0) return Tree::single_vertex();

  std::mt19937_64 rng(options.seed);
  for (int attempt = 0; attempt < std::max(1, options.max_retries); ++attempt) {
    const Vec3 r = random_unit(rng);
    try {
      for (const auto& loop : loops) {
        for (std::size_t i = 0; i < loop.size(); ++i) {
          if (segment_segment_distance(r, r, loop[i], loop[(i + 1) % loop.size()]) <= 1e3 * options.eps) {
            throw Degenerate{};
          }
        }
      }
      // A random point on each loop, off its vertices.
      std::vector<Vec3> sample(n);
      for (std::size_t i = 0; i < n; ++i) {
        const auto& loop = loops[i];
        const std::size_t k = static_cast<std::size_t>(rng() % loop.size());
        const double u = 0.25 + 0.5 * unit_double(rng);
        sample[i] = normalized(loop[k] * (1 - u) + loop[(k + 1) % loop.size()] * u);
      }
      // inside[i][j]: loop i lies in the cap of loop j away from r.
      std::vector<std::vector<char>> inside(n, std::vector<char>(n, 0));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (i != j) inside[i][j] = odd_crossings(sample[i], r, loops[j]);
        }
      }
      std::vector<std::size_t> depth(n, 0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) depth[i] += inside[i][j];
      }
      std::vector<Edge> edges;
      for (std::size_t i = 0; i < n; ++i) {
        VertexId parent = 0;
        std::size_t found = 0;
        for (std::size_t j = 0; j < n; ++j) {
          if (inside[i][j] && depth[j] + 1 == depth[i]) {
            parent = static_cast<VertexId>(j + 1);
            ++found;
          }
        }
        if (depth[i] > 0 && found != 1) throw GeometryError("inconsistent loop nesting");
        edges.emplace_back(parent, static_cast<VertexId>(i + 1));
      }
      return Tree(Multigraph(n + 1, std::move(edges)));
    } catch (const Degenerate&) {
      continue;
    }
  }
  throw GeometryError("no usable reference point after " + std::to_string(options.max_retries) + " attempts");
}

}  // namespace unknot
