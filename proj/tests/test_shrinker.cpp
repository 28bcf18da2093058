#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "unknot/analysis.hpp"
#include "unknot/error.hpp"
#include "unknot/shrinker.hpp"

using namespace unknot;

namespace {

// Surface of revolution z = 0.5 sqrt(r^2 + 1) for r <= extent: one end
// asymptotic to a cone.
TriMesh cone_end(double extent, int segments, int rings) {
  TriMesh m;
  m.add_vertex({0, 0, 0.5});
  for (int j = 1; j <= rings; ++j) {
    const double r = extent * j / rings;
    for (int s = 0; s < segments; ++s) {
      const double a = 2 * std::numbers::pi * (s + 0.5 * (j % 2)) / segments;
      m.add_vertex({r * std::cos(a), r * std::sin(a), 0.5 * std::sqrt(r * r + 1)});
    }
  }
  auto id = [&](int j, int s) { return static_cast<Index>(1 + (j - 1) * segments + (s % segments)); };
  for (int s = 0; s < segments; ++s) m.add_triangle(0, id(1, s), id(1, s + 1));
  for (int j = 1; j < rings; ++j) {
    for (int s = 0; s < segments; ++s) {
      if (j % 2) {
        m.add_triangle(id(j, s), id(j + 1, s), id(j + 1, s + 1));
        m.add_triangle(id(j, s), id(j + 1, s + 1), id(j, s + 1));
      } else {
        m.add_triangle(id(j, s), id(j + 1, s), id(j, s + 1));
        m.add_triangle(id(j, s + 1), id(j + 1, s), id(j + 1, s + 1));
      }
    }
  }
  return m;
}

TriMesh rotated(TriMesh m, const Vec3& axis, double a) {
  const Vec3 k = normalized(axis);
  for (auto& p : m.vertices) {
    p = p * std::cos(a) + cross(k, p) * std::sin(a) + k * (dot(k, p) * (1 - std::cos(a)));
  }
  return m;
}

}  // namespace

TEST_CASE("builtin shrinkers have the expected topology") {
  const auto sphere = analyze_topology(builtin_shrinker(ShrinkerKind::sphere2, 16, 32));
  CHECK(sphere.euler_characteristic() == 2);
  CHECK(sphere.boundary_loops.empty());

  const TriMesh plane = builtin_shrinker(ShrinkerKind::plane, 8, 32);
  CHECK(genus_and_boundary(plane) == std::pair{0, 1});

  const auto cyl = analyze_topology(builtin_shrinker(ShrinkerKind::cylinder2, 8, 32));
  CHECK(cyl.euler_characteristic() == 0);
  CHECK(cyl.boundary_loops.size() == 2);

  CHECK_THROWS_AS(builtin_shrinker(ShrinkerKind::plane, 8, 11), InvalidInput);
  CHECK_THROWS_AS(builtin_shrinker(ShrinkerKind::cylinder2, 4, 32), InvalidInput);
  CHECK(parse_shrinker_kind("cylinder2") == ShrinkerKind::cylinder2);
  CHECK_FALSE(parse_shrinker_kind("torus").has_value());
}

TEST_CASE("slices at radius 4") {
  const auto plane = slice_graph(builtin_shrinker(ShrinkerKind::plane, 16, 64), 4);
  CHECK(plane.loops.size() == 1);
  CHECK(multigraphs_isomorphic(plane.graph, Tree::path(2).graph()));

  const auto cyl = slice_graph(builtin_shrinker(ShrinkerKind::cylinder2, 16, 64), 4);
  CHECK(cyl.loops.size() == 2);
  CHECK(multigraphs_isomorphic(cyl.graph, Tree::path(3).graph()));

  const auto sphere = slice_graph(builtin_shrinker(ShrinkerKind::sphere2, 16, 64), 4);
  CHECK(sphere.loops.empty());
  CHECK(sphere.graph.vertex_count() == 1);
  CHECK(sphere.graph.edge_count() == 0);
}

TEST_CASE("slice loops lie on the unit sphere and edge count equals loop count") {
  const TriMesh cyl = builtin_shrinker(ShrinkerKind::cylinder2, 16, 48);
  for (double R : {3.0, 5.5, 9.25, 14.0}) {
    const auto s = slice_graph(cyl, R);
    CHECK(s.graph.edge_count() == s.loops.size());
    CHECK(is_tree(s.graph));
    for (const auto& loop : s.loops) {
      for (const auto& p : loop) CHECK(std::abs(norm(p) - 1) < 1e-12);
    }
  }
}

TEST_CASE("graphs at infinity of the builtin shrinkers") {
  const std::pair<ShrinkerKind, std::size_t> cases[] = {
      {ShrinkerKind::plane, 2}, {ShrinkerKind::sphere2, 1}, {ShrinkerKind::cylinder2, 3}};
  for (const auto& [kind, vertices] : cases) {
    const TriMesh m = builtin_shrinker(kind, 16, 64);
    const auto rep = graph_at_infinity(m, kShrinkerMinRadius, 12, default_slice_steps(kShrinkerMinRadius, 12));
    CHECK(rep.stabilized);
    REQUIRE(rep.graph_at_infinity.has_value());
    CHECK(rep.graph_at_infinity->code.size() / 2 == vertices);
    CHECK(rep.r0_estimate.has_value());
    CHECK(std::is_sorted(rep.radii_tested.begin(), rep.radii_tested.end()));
    for (const auto& c : rep.codes) CHECK(c == rep.graph_at_infinity->code);
  }
}

TEST_CASE("cone end stabilises to a single loop") {
  const TriMesh m = cone_end(16, 64, 48);
  const auto rep = graph_at_infinity(m, kShrinkerMinRadius, 12, 8);
  CHECK(rep.stabilized);
  REQUIRE(rep.graph_at_infinity.has_value());
  CHECK(rep.graph_at_infinity->code == "(())");
}

TEST_CASE("stabilised code is invariant under rotation") {
  const TriMesh m = builtin_shrinker(ShrinkerKind::cylinder2, 16, 48);
  const auto base = graph_at_infinity(m, kShrinkerMinRadius, 12, 6);
  const auto turned = graph_at_infinity(rotated(m, {1, 2, 3}, 0.7), kShrinkerMinRadius, 12, 6);
  REQUIRE(base.graph_at_infinity.has_value());
  REQUIRE(turned.graph_at_infinity.has_value());
  CHECK(base.graph_at_infinity == turned.graph_at_infinity);
}

TEST_CASE("slices at different radii agree") {
  const TriMesh m = builtin_shrinker(ShrinkerKind::plane, 16, 48);
  const auto a = slice_graph(m, 3.1), b = slice_graph(m, 11.7);
  CHECK(multigraphs_isomorphic(a.graph, b.graph));
}

TEST_CASE("non-transversal slices are retried with jitter") {
  const TriMesh sphere = builtin_shrinker(ShrinkerKind::sphere2, 16, 32);
  CHECK_THROWS_AS(slice_graph(sphere, 2.0), GeometryError);

  const TriMesh plane = builtin_shrinker(ShrinkerKind::plane, 16, 32);
  const double ring = norm(plane.vertices[1 + 6 * 32]);
  CHECK_THROWS_AS(slice_graph(plane, ring), GeometryError);
  const auto rep = graph_at_infinity(plane, ring, 12, 4);
  CHECK(rep.radii_tested.front() != ring);
  CHECK(std::abs(rep.radii_tested.front() / ring - 1) <= 1e-4);
  CHECK(rep.graph_at_infinity->code == "(())");
}

TEST_CASE("threads do not change the report") {
  const TriMesh m = builtin_shrinker(ShrinkerKind::cylinder2, 16, 48);
  InfinityOptions one, four;
  four.threads = 4;
  const auto a = graph_at_infinity(m, kShrinkerMinRadius, 12, 7, one);
  const auto b = graph_at_infinity(m, kShrinkerMinRadius, 12, 7, four);
  CHECK(a.radii_tested == b.radii_tested);
  CHECK(a.codes == b.codes);
}

TEST_CASE("argument checks") {
  const TriMesh m = builtin_shrinker(ShrinkerKind::plane, 16, 32);
  CHECK_THROWS_AS(graph_at_infinity(m, 1.0, 12, 5), InvalidInput);
  CHECK_THROWS_AS(graph_at_infinity(m, 5.0, 4.0, 5), InvalidInput);
  CHECK_THROWS_AS(slice_graph(m, -1), InvalidInput);
  CHECK(default_slice_steps(kShrinkerMinRadius, 12) == 7);
}
