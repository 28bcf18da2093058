#pragma once

#include <optional>
#include <string>
#include <vector>

#include "unknot/mesh.hpp"
#include "unknot/tree.hpp"

namespace unknot {

inline constexpr double kCentralSphereRadius = 0.125;

struct ModelSurfaceSpec {
  Tree tree = Tree::path(2);
  int genus = 0;
  std::optional<VertexId> root;  // defaults to the smallest tree centre
  int resolution = 64;           // segments per circle, >= 12
  double shrink = 0.35;          // cap angle factor per generation, in (0, 1)
  bool symmetric = true;         // mirror symmetric across y = 0
  bool smooth_joins = false;     // one Laplacian step on the stitch rings
};

// One sphere (the root) or disc of the construction.
struct Feature {
  VertexId node = 0;
  std::optional<VertexId> parent;
  int depth = 0;
  std::string kind;  // "sphere" or "disc"
  Vec3 center;
  Vec3 normal;               // disc normal, pointing away from the origin
  double radius = 0;         // sphere or disc radius
  double cap_angle = 0;      // angular radius of the disc's cap on the unit sphere
  double bridge_radius = 0;  // cylinder joining the disc to its parent
};

// Ball in which the genus handles are built.
struct GenusSite {
  Vec3 center;
  double radius = 0;
};

struct ModelSurface {
  TriMesh mesh;
  VertexId root = 0;
  std::vector<Feature> features;  // root first, then breadth-first
  bool symmetric = true;          // vertex set invariant under y -> -y
  GenusSite genus_site;
};

VertexId default_root(const Tree& t);

// Throws InvalidInput for a bad spec and GeometryError when the features
// of some generation cannot be made disjoint at this resolution/shrink.
ModelSurface build_model_surface(const ModelSurfaceSpec& spec);
TriMesh generate_model_surface(const ModelSurfaceSpec& spec);

struct GenusOptions {
  int ring_segments = 16;  // even
  int arch_segments = 16;
};

// Connected sum with a genus-g surface inside the site ball: the triangles
// touching the ball are replaced by a plate with 2g holes joined in pairs by
// half-torus arches. Boundary loops outside the ball are untouched.
// Throws GeometryError if the patch is not a disc or a handle would come
// within 1e-9 of the rest of the mesh.
TriMesh attach_genus(const TriMesh& m, int g, const GenusSite& site, const GenusOptions& options = {});

}  // namespace unknot
