#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "unknot/mesh.hpp"
#include "unknot/tree.hpp"

namespace unknot {

// Closed ball of the given radius about the origin.
struct BallDomain {
  double radius = 1.0;
};

struct OffendingItem {
  std::string kind;  // non-manifold-edge, self-intersection, boundary-off-sphere, ...
  std::vector<Index> indices;
};

struct ValidationReport {
  bool properly_embedded = false;
  bool self_intersecting = false;
  bool connected = false;
  bool orientable = false;
  bool manifold = false;
  std::vector<OffendingItem> offending_items;
  double boundary_error = 0;      // max | |v| - R | over boundary vertices
  double interior_clearance = 0;  // min R - |v| over the other vertices
};

struct Signature {
  int genus = 0;
  CanonicalCode boundary_tree;

  // "g=<genus>;tree=<code>"
  std::string to_string() const;
  friend bool operator==(const Signature&, const Signature&) = default;
};

// What isotopy_equivalent can and cannot claim.
extern const char* const kIsotopyHypothesisNote;

bool self_intersects(const TriMesh& m);
ValidationReport validate_properly_embedded(const TriMesh& m, const BallDomain& ball = {});

// (genus, number of boundary loops). Throws TopologyError unless the mesh is
// a connected orientable manifold.
std::pair<int, int> genus_and_boundary(const TriMesh& m);

// Boundary loops scaled to the unit sphere, then sphere_boundary_graph.
// Throws GeometryError when the mesh is not properly embedded.
Tree boundary_graph_of_surface(const TriMesh& m, const BallDomain& ball = {}, std::uint64_t seed = 0);

Signature isotopy_signature(const TriMesh& m, const BallDomain& ball = {}, std::uint64_t seed = 0);

// Equal signatures. Complete only for surfaces meeting the hypotheses in
// kIsotopyHypothesisNote; otherwise a necessary condition.
bool isotopy_equivalent(const TriMesh& a, const TriMesh& b, const BallDomain& ball = {}, std::uint64_t seed = 0);

}  // namespace unknot
