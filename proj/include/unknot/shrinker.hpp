#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "unknot/arrangement.hpp"
#include "unknot/mesh.hpp"
#include "unknot/tree.hpp"

namespace unknot {

struct SliceResult {
  double R = 0;
  std::vector<SphericalLoop> loops;  // scaled to the unit sphere
  Multigraph graph;
};

// Intersection of the mesh with the sphere |x| = R and its nesting graph.
// Throws GeometryError if a vertex lies within eps * R of the sphere or an
// intersection curve runs into the mesh boundary.
SliceResult slice_graph(const TriMesh& m, double R, const SphereGraphOptions& options = {});

struct StabilizationReport {
  std::vector<double> radii_tested;  // ascending, after any jitter
  std::vector<std::string> codes;    // canonical code per radius
  bool stabilized = false;
  std::optional<double> r0_estimate;
  std::optional<CanonicalCode> graph_at_infinity;
  double truncation_radius = 0;  // where the mesh stops (min boundary radius, or max vertex radius)
};

struct InfinityOptions {
  std::uint64_t seed = 0;
  unsigned threads = 1;
  int max_retries = 8;
  double jitter = 1e-4;  // relative
};

inline constexpr double kShrinkerMinRadius = 2.8284271247461903;  // 2 sqrt 2

// Slices at `steps` geometrically spaced radii in [r_min, r_max]; stabilised
// when the trailing ceil(steps / 2) graphs agree.
StabilizationReport graph_at_infinity(const TriMesh& m, double r_min, double r_max, int steps,
                                      const InfinityOptions& options = {});

// Number of radii for a spacing ratio of about 1.3.
int default_slice_steps(double r_min, double r_max);

enum class ShrinkerKind { plane, sphere2, cylinder2 };

std::optional<ShrinkerKind> parse_shrinker_kind(std::string_view name);

// Plane: disc of radius `extent` in z = 0. Sphere2: round sphere of radius 2.
// Cylinder2: radius 2 about the z axis, |z| <= extent.
TriMesh builtin_shrinker(ShrinkerKind kind, double extent, int resolution);

}  // namespace unknot
