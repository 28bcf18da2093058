#pragma once

#include <vector>

#include "unknot/mesh.hpp"
#include "unknot/vec3.hpp"

namespace unknot {

// Triangulates the planar region inside rings[0] and outside every other
// ring. Rings are lists of indices into `points`, in either orientation,
// and must be simple and mutually disjoint. Steiner points (also indices into
// `points`) must lie strictly inside the region. Ring edges always appear in
// the output; with `delaunay` the remaining edges are flipped to the
// constrained Delaunay triangulation. Output triangles are counter-clockwise.
//
// Throws GeometryError if the ear clipper leaves part of the region uncovered
// or a Steiner point falls outside it.
std::vector<Triangle> triangulate_polygon(const std::vector<Vec2>& points,
                                          const std::vector<std::vector<Index>>& rings,
                                          const std::vector<Index>& steiner = {}, bool delaunay = true);

}  // namespace unknot
