#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "unknot/mesh.hpp"
#include "unknot/tree.hpp"

namespace unknot {

inline constexpr double kEpsilon = 1e-9;

// Closed walk along mesh edges; the edge back to the first vertex is implied.
using EdgeCycle = std::vector<Index>;

// Edge-manifold, orientable triangle mesh, stored consistently oriented.
class SurfaceMesh {
 public:
  // Throws TopologyError for non-manifold or non-orientable input.
  explicit SurfaceMesh(TriMesh m);

  const TriMesh& mesh() const noexcept { return mesh_; }
  const EdgeMap& edges() const noexcept { return edges_; }

 private:
  TriMesh mesh_;
  EdgeMap edges_;
};

struct RegionDecomposition {
  std::vector<Index> region_of_triangle;
  std::size_t region_count = 0;
  // Per curve: region left of its first edge, region right of it.
  std::vector<std::pair<Index, Index>> curve_sides;
};

// Regions are numbered by their smallest triangle index.
RegionDecomposition region_decomposition(const SurfaceMesh& s, const std::vector<EdgeCycle>& curves);

// One vertex per region, edge i joins the two sides of curve i.
Multigraph boundary_graph(const SurfaceMesh& s, const std::vector<EdgeCycle>& curves);

// Closed polyline on the unit sphere.
using SphericalLoop = std::vector<Vec3>;

struct SphereGraphOptions {
  double eps = kEpsilon;
  std::uint64_t seed = 0;
  int max_retries = 16;
};

// Checks the loop set (>= 3 points, no zero-length segment, simple,
// pairwise farther apart than 2 eps) and returns it normalised. Points must
// be within 1e-6 of the unit sphere. Throws GeometryError.
std::vector<SphericalLoop> validated_loops(std::vector<SphericalLoop> loops, double eps = kEpsilon);

// Nesting tree of disjoint loops on the sphere. Vertex 0 is the region
// holding the random reference point, vertex i + 1 the region just inside
// loop i (on the side away from the reference), edge i belongs to loop i.
Tree sphere_boundary_graph(const std::vector<SphericalLoop>& loops, const SphereGraphOptions& options = {});

}  // namespace unknot
