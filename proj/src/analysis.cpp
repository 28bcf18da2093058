#include "unknot/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "unknot/arrangement.hpp"
#include "unknot/error.hpp"
#include "unknot/intersect.hpp"

namespace unknot {

const char* const kIsotopyHypothesisNote =
    "signatures (genus, boundary tree) decide the isotopy class only for free boundary minimal surfaces "
    "or strong Heegaard splittings of the ball; for other meshes equal signatures are necessary, not sufficient";

std::string Signature::to_string() const { return "g=" + std::to_string(genus) + ";tree=" + boundary_tree.code; }

bool self_intersects(const TriMesh& m) { return !intersecting_triangle_pairs(m, kEpsilon, 1).empty(); }

ValidationReport validate_properly_embedded(const TriMesh& m, const BallDomain& ball) {
  if (!(ball.radius > 0)) throw InvalidInput("ball radius must be positive");
  ValidationReport r;
  const MeshTopology topo = analyze_topology(m);
  r.manifold = topo.manifold();
  r.orientable = topo.orientable;
  r.connected = topo.components == 1;

  auto add = [&](std::string kind, std::vector<Index> idx) {
    if (!idx.empty()) r.offending_items.push_back({std::move(kind), std::move(idx)});
  };
  std::vector<Index> edges;
  for (std::uint64_t e : topo.non_manifold_edges) {
    edges.push_back(static_cast<Index>(e >> 32));
    edges.push_back(static_cast<Index>(e & 0xffffffffu));
  }
  add("non-manifold-edge", std::move(edges));
  add("non-manifold-vertex", topo.non_manifold_vertices);
  add("degenerate-triangle", topo.degenerate_triangles);
  if (!r.orientable) add("non-orientable", {0});
  if (!r.connected) add("disconnected", {static_cast<Index>(topo.components)});

  const auto hits = intersecting_triangle_pairs(m, kEpsilon, 64);
  r.self_intersecting = !hits.empty();
  std::vector<Index> pairs;
  for (const auto& [a, b] : hits) {
    pairs.push_back(a);
    pairs.push_back(b);
  }
  add("self-intersection", std::move(pairs));

  const double R = ball.radius;
  const double tol = kEpsilon * std::max(1.0, R);
  std::vector<char> on_boundary(m.vertices.size(), 0);
  for (const auto& loop : topo.boundary_loops) {
    for (Index v : loop) on_boundary[v] = 1;
  }
  std::vector<char> used(m.vertices.size(), 0);
  for (const auto& t : m.triangles) {
    for (Index v : t) used[v] = 1;
  }
  std::vector<Index> off_sphere, touching;
  r.boundary_error = 0;
  r.interior_clearance = R;
  for (std::size_t i = 0; i < m.vertices.size(); ++i) {
    if (!used[i]) continue;
    const double len = norm(m.vertices[i]);
    if (on_boundary[i]) {
      r.boundary_error = std::max(r.boundary_error, std::abs(len - R));
      if (!(std::abs(len - R) <= tol)) off_sphere.push_back(static_cast<Index>(i));
    } else {
      r.interior_clearance = std::min(r.interior_clearance, R - len);
      if (!(R - len > tol)) touching.push_back(static_cast<Index>(i));
    }
  }
  add("boundary-off-sphere", std::move(off_sphere));
  add("interior-not-inside", std::move(touching));

  r.properly_embedded = r.manifold && r.connected && !r.self_intersecting &&
                        std::none_of(r.offending_items.begin(), r.offending_items.end(), [](const OffendingItem& o) {
                          return o.kind == "boundary-off-sphere" || o.kind == "interior-not-inside";
                        });
  return r;
}

std::pair<int, int> genus_and_boundary(const TriMesh& m) {
  const MeshTopology topo = analyze_topology(m);
  if (!topo.manifold()) throw TopologyError("genus needs a manifold mesh");
  if (!topo.orientable) throw TopologyError("genus needs an orientable mesh");
  if (topo.components != 1) throw TopologyError("genus needs a connected mesh");
  const long b = static_cast<long>(topo.boundary_loops.size());
  const long twice = 2 - topo.euler_characteristic() - b;
  if (twice < 0 || twice % 2) throw TopologyError("inconsistent Euler characteristic");
  return {static_cast<int>(twice / 2), static_cast<int>(b)};
}

Tree boundary_graph_of_surface(const TriMesh& m, const BallDomain& ball, std::uint64_t seed) {
  const ValidationReport report = validate_properly_embedded(m, ball);
  if (!report.properly_embedded) throw GeometryError("mesh is not properly embedded in the ball");
  std::vector<SphericalLoop> loops;
  for (const auto& loop : boundary_loops(m)) {
    SphericalLoop l;
    for (Index v : loop) l.push_back(m.vertices[v] / ball.radius);
    loops.push_back(std::move(l));
  }
  SphereGraphOptions options;
  options.seed = seed;
  return sphere_boundary_graph(loops, options);
}

Signature isotopy_signature(const TriMesh& m, const BallDomain& ball, std::uint64_t seed) {
  const Tree t = boundary_graph_of_surface(m, ball, seed);
  return {genus_and_boundary(m).first, ahu_code(t)};
}

bool isotopy_equivalent(const TriMesh& a, const TriMesh& b, const BallDomain& ball, std::uint64_t seed) {
  return isotopy_signature(a, ball, seed) == isotopy_signature(b, ball, seed);
}

}  // namespace unknot
