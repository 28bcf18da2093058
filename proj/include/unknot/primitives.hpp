#pragma once

#include "unknot/mesh.hpp"

namespace unknot {

// Subdivided icosahedron projected to the sphere. The base icosahedron is
// (0, ±1, ±phi) and cyclic permutations, so every level is mirror symmetric
// across the three coordinate planes.
TriMesh make_icosphere(double radius, int subdivisions);

// Latitude/longitude sphere about the z axis; `rings` >= 2 latitude bands.
TriMesh make_uv_sphere(double radius, int segments, int rings);

// Torus about the z axis; u runs around the z axis, v around the tube.
// Vertex (i, j) has index i * tube_segments + j.
TriMesh make_torus(double major_radius, double minor_radius, int major_segments, int tube_segments);

// Flat disc in the plane z = 0 made of `rings` concentric rings around a
// centre vertex. Ring j sits at radius radius * (j - 1/2) / (rings - 1/2),
// so the outermost ring is the boundary.
TriMesh make_polar_disc(double radius, int segments, int rings);

// Open tube x^2 + y^2 = radius^2, |z| <= half_height, with `layers` + 1 rings.
TriMesh make_cylinder(double radius, double half_height, int segments, int layers);

}  // namespace unknot
