#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "unknot/vec3.hpp"

namespace unknot {

using Index = std::uint32_t;
using Triangle = std::array<Index, 3>;

// Indexed triangle mesh. Boundary loops are derived on demand.
struct TriMesh {
  std::vector<Vec3> vertices;
  std::vector<Triangle> triangles;

  Index add_vertex(const Vec3& p) {
    vertices.push_back(p);
    return static_cast<Index>(vertices.size() - 1);
  }
  void add_triangle(Index a, Index b, Index c) { triangles.push_back({a, b, c}); }
  // Appends `other`, shifting its indices; returns the offset used.
  Index append(const TriMesh& other);

  friend bool operator==(const TriMesh&, const TriMesh&) = default;
};

constexpr std::uint64_t edge_key(Index a, Index b) {
  return a < b ? (std::uint64_t{a} << 32) | b : (std::uint64_t{b} << 32) | a;
}

// Undirected edge -> incident (triangle, local edge slot) pairs. Slot k is
// the edge from corner k to corner (k+1)%3.
class EdgeMap {
 public:
  struct Incidence {
    Index triangle;
    std::uint8_t slot;
  };

  explicit EdgeMap(const TriMesh& m);

  const std::vector<Incidence>* find(Index a, Index b) const;
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::unordered_map<std::uint64_t, std::vector<Incidence>>& raw() const noexcept { return edges_; }
  // Edge keys in ascending order.
  std::vector<std::uint64_t> sorted_keys() const;

 private:
  std::unordered_map<std::uint64_t, std::vector<Incidence>> edges_;
};

struct MeshTopology {
  std::size_t vertex_count = 0;  // vertices referenced by some triangle
  std::size_t edge_count = 0;
  std::size_t face_count = 0;
  std::size_t unreferenced_vertices = 0;
  std::vector<std::uint64_t> non_manifold_edges;  // edges in more than two triangles
  std::vector<Index> non_manifold_vertices;        // more than one fan around the vertex
  std::vector<Index> degenerate_triangles;         // repeated corner index
  std::vector<std::vector<Index>> boundary_loops;  // empty when not edge-manifold
  std::size_t components = 0;                      // by triangle adjacency
  bool orientable = false;
  bool consistently_oriented = false;

  bool manifold() const {
    return non_manifold_edges.empty() && non_manifold_vertices.empty() && degenerate_triangles.empty();
  }
  long euler_characteristic() const {
    return static_cast<long>(vertex_count) - static_cast<long>(edge_count) + static_cast<long>(face_count);
  }
};

MeshTopology analyze_topology(const TriMesh& m);

// Closed boundary cycles following triangle orientation, each starting at
// its smallest vertex index, ordered by that index. Throws TopologyError
// when boundary edges do not decompose into simple cycles.
std::vector<std::vector<Index>> boundary_loops(const TriMesh& m);

// Flips triangles so every interior edge is traversed in opposite
// directions by its two triangles; each component keeps the orientation of
// its lowest-index triangle. Throws TopologyError if non-orientable.
void orient_consistently(TriMesh& m);

// Removes vertices no triangle references, preserving order.
void remove_unreferenced_vertices(TriMesh& m);

// Index of the connected component (by shared edges) of every triangle.
std::vector<Index> triangle_components(const TriMesh& m, std::size_t* count = nullptr);

// Wavefront OBJ, vertices and faces only. Polygons are fan-triangulated on read.
TriMesh read_obj(std::istream& in);
TriMesh read_obj(const std::filesystem::path& path);
void write_obj(std::ostream& out, const TriMesh& m);
void write_obj(const std::filesystem::path& path, const TriMesh& m);

}  // namespace unknot
