#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "unknot/mesh.hpp"

namespace unknot {

struct Aabb {
  Vec3 lo{1e300, 1e300, 1e300};
  Vec3 hi{-1e300, -1e300, -1e300};

  void expand(const Vec3& p);
  void expand(const Aabb& b);
  void inflate(double d);
  bool overlaps(const Aabb& o) const {
    return lo.x <= o.hi.x && o.lo.x <= hi.x && lo.y <= o.hi.y && o.lo.y <= hi.y && lo.z <= o.hi.z && o.lo.z <= hi.z;
  }
};

// Median-split bounding volume hierarchy over a set of boxes.
class Bvh {
 public:
  explicit Bvh(std::vector<Aabb> boxes, std::size_t leaf_size = 4);

  // Calls visit(i) for each box overlapping `query`.
  void query(const Aabb& query, const std::function<void(Index)>& visit) const;
  // Calls visit(i, j), i < j, for each overlapping pair of distinct boxes.
  void self_pairs(const std::function<void(Index, Index)>& visit) const;

 private:
  struct Node {
    Aabb box;
    std::uint32_t left = 0, right = 0;  // children when count == 0
    std::uint32_t first = 0, count = 0;  // leaf range into order_
  };
  std::uint32_t build(std::uint32_t first, std::uint32_t count, std::size_t leaf_size);
  void pairs(std::uint32_t a, std::uint32_t b, const std::function<void(Index, Index)>& visit) const;

  std::vector<Aabb> boxes_;
  std::vector<Index> order_;
  std::vector<Node> nodes_;
};

double point_triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);
double segment_segment_distance(const Vec3& p1, const Vec3& q1, const Vec3& p2, const Vec3& q2);

// True when the closed triangles meet or come within `eps` of each other.
bool triangles_intersect(const std::array<Vec3, 3>& t, const std::array<Vec3, 3>& u, double eps);

// Pairs (i < j) of triangles that share no vertex and intersect within eps,
// sorted ascending. Stops after `limit` pairs when limit > 0.
std::vector<std::pair<Index, Index>> intersecting_triangle_pairs(const TriMesh& m, double eps,
                                                                 std::size_t limit = 0);

}  // namespace unknot
