#include "unknot/intersect.hpp"

#include <algorithm>
#include <cmath>

namespace unknot {

void Aabb::expand(const Vec3& p) {
  lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
  hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
}

void Aabb::expand(const Aabb& b) {
  expand(b.lo);
  expand(b.hi);
}

void Aabb::inflate(double d) {
  lo -= Vec3{d, d, d};
  hi += Vec3{d, d, d};
}

Bvh::Bvh(std::vector<Aabb> boxes, std::size_t leaf_size) : boxes_(std::move(boxes)) {
  order_.resize(boxes_.size());
  for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = static_cast<Index>(i);
  if (!boxes_.empty()) build(0, static_cast<std::uint32_t>(boxes_.size()), std::max<std::size_t>(leaf_size, 1));
}

std::uint32_t Bvh::build(std::uint32_t first, std::uint32_t count, std::size_t leaf_size) {
  const auto id = static_cast<std::uint32_t>(nodes_.size());
  nodes_.emplace_back();
  Aabb box;
  for (std::uint32_t i = first; i < first + count; ++i) box.expand(boxes_[order_[i]]);
  nodes_[id].box = box;
  if (count <= leaf_size) {
    nodes_[id].first = first;
    nodes_[id].count = count;
    return id;
  }
  const Vec3 ext = box.hi - box.lo;
  const int axis = ext.x >= ext.y && ext.x >= ext.z ? 0 : (ext.y >= ext.z ? 1 : 2);
  auto centre = [&](Index i) {
    const Aabb& b = boxes_[i];
    return axis == 0 ? b.lo.x + b.hi.x : axis == 1 ? b.lo.y + b.hi.y : b.lo.z + b.hi.z;
  };
  const std::uint32_t half = count / 2;
  std::nth_element(order_.begin() + first, order_.begin() + first + half, order_.begin() + first + count,
                   [&](Index a, Index b) { return centre(a) < centre(b) || (centre(a) == centre(b) && a < b); });
  const std::uint32_t left = build(first, half, leaf_size);
  const std::uint32_t right = build(first + half, count - half, leaf_size);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

void Bvh::query(const Aabb& q, const std::function<void(Index)>& visit) const {
  if (nodes_.empty()) return;
  std::vector<std::uint32_t> stack{0};
  while (!stack.empty()) {
    const Node& n = nodes_[stack.back()];
    stack.pop_back();
    if (!n.box.overlaps(q)) continue;
    if (n.count) {
      for (std::uint32_t i = n.first; i < n.first + n.count; ++i) {
        if (boxes_[order_[i]].overlaps(q)) visit(order_[i]);
      }
    } else {
      stack.push_back(n.left);
      stack.push_back(n.right);
    }
  }
}

void Bvh::self_pairs(const std::function<void(Index, Index)>& visit) const {
  if (!nodes_.empty()) pairs(0, 0, visit);
}

void Bvh::pairs(std::uint32_t a, std::uint32_t b, const std::function<void(Index, Index)>& visit) const {
  const Node& na = nodes_[a];
  const Node& nb = nodes_[b];
  if (a != b && !na.box.overlaps(nb.box)) return;
  if (na.count && nb.count) {
    for (std::uint32_t i = na.first; i < na.first + na.count; ++i) {
      for (std::uint32_t j = (a == b ? i + 1 : nb.first); j < nb.first + nb.count; ++j) {
        const Index u = order_[i], v = order_[j];
        if (boxes_[u].overlaps(boxes_[v])) visit(std::min(u, v), std::max(u, v));
      }
    }
    return;
  }
  if (a == b) {
    pairs(na.left, na.left, visit);
    pairs(na.right, na.right, visit);
    pairs(na.left, na.right, visit);
    return;
  }
  if (na.count) {
    pairs(a, nb.left, visit);
    pairs(a, nb.right, visit);
  } else {
    pairs(na.left, b, visit);
    pairs(na.right, b, visit);
  }
}

namespace {

Vec3 closest_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 ab = b - a, ac = c - a, ap = p - a;
  const double d1 = dot(ab, ap), d2 = dot(ac, ap);
  if (d1 <= 0 && d2 <= 0) return a;
  const Vec3 bp = p - b;
  const double d3 = dot(ab, bp), d4 = dot(ac, bp);
  if (d3 >= 0 && d4 <= d3) return b;
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0 && d1 >= 0 && d3 <= 0) return a + ab * (d1 / (d1 - d3));
  const Vec3 cp = p - c;
  const double d5 = dot(ab, cp), d6 = dot(ac, cp);
  if (d6 >= 0 && d5 <= d6) return c;
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0 && d2 >= 0 && d6 <= 0) return a + ac * (d2 / (d2 - d6));
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0) return b + (c - b) * ((d4 - d3) / ((d4 - d3) + (d5 - d6)));
  const double denom = 1.0 / (va + vb + vc);
  return a + ab * (vb * denom) + ac * (vc * denom);
}

// Segment pq crosses the plane of abc at a point of the triangle. Nearly
// coplanar segments are left to the distance tests.
bool segment_pierces(const Vec3& p, const Vec3& q, const Vec3& a, const Vec3& b, const Vec3& c, double eps) {
  const Vec3 n = cross(b - a, c - a);
  const double len = norm(n);
  if (len == 0) return false;
  const double dp = dot(n, p - a) / len, dq = dot(n, q - a) / len;
  if (std::abs(dp) <= eps && std::abs(dq) <= eps) return false;
  if ((dp > 0 && dq > 0) || (dp < 0 && dq < 0)) return false;
  const Vec3 x = p + (q - p) * (dp / (dp - dq));
  return distance(x, closest_on_triangle(x, a, b, c)) <= eps;
}

}  // namespace

double point_triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  return distance(p, closest_on_triangle(p, a, b, c));
}

double segment_segment_distance(const Vec3& p1, const Vec3& q1, const Vec3& p2, const Vec3& q2) {
  const Vec3 d1 = q1 - p1, d2 = q2 - p2, r = p1 - p2;
  const double a = dot(d1, d1), e = dot(d2, d2), f = dot(d2, r);
  double s = 0, t = 0;
  if (a <= 1e-300 && e <= 1e-300) return distance(p1, p2);
  if (a <= 1e-300) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = dot(d1, r);
    if (e <= 1e-300) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = dot(d1, d2);
      const double denom = a * e - b * b;
      s = denom > 0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
      t = (b * s + f) / e;
      if (t < 0) {
        t = 0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1) {
        t = 1;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  return distance(p1 + d1 * s, p2 + d2 * t);
}

bool triangles_intersect(const std::array<Vec3, 3>& t, const std::array<Vec3, 3>& u, double eps) {
  for (int i = 0; i < 3; ++i) {
    if (segment_pierces(t[i], t[(i + 1) % 3], u[0], u[1], u[2], eps)) return true;
    if (segment_pierces(u[i], u[(i + 1) % 3], t[0], t[1], t[2], eps)) return true;
  }
  for (int i = 0; i < 3; ++i) {
    if (point_triangle_distance(t[i], u[0], u[1], u[2]) <= eps) return true;
    if (point_triangle_distance(u[i], t[0], t[1], t[2]) <= eps) return true;
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (segment_segment_distance(t[i], t[(i + 1) % 3], u[j], u[(j + 1) % 3]) <= eps) return true;
    }
  }
  return false;
}

std::vector<std::pair<Index, Index>> intersecting_triangle_pairs(const TriMesh& m, double eps, std::size_t limit) {
  std::vector<Aabb> boxes(m.triangles.size());
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    for (Index v : m.triangles[i]) boxes[i].expand(m.vertices[v]);
    boxes[i].inflate(eps);
  }
  const Bvh bvh(std::move(boxes));
  std::vector<std::pair<Index, Index>> hits;
  bvh.self_pairs([&](Index i, Index j) {
    if (limit && hits.size() >= limit) return;
    const Triangle& a = m.triangles[i];
    const Triangle& b = m.triangles[j];
    for (Index x : a) {
      for (Index y : b) {
        if (x == y) return;
      }
    }
    const std::array<Vec3, 3> ta{m.vertices[a[0]], m.vertices[a[1]], m.vertices[a[2]]};
    const std::array<Vec3, 3> tb{m.vertices[b[0]], m.vertices[b[1]], m.vertices[b[2]]};
    if (triangles_intersect(ta, tb, eps)) hits.emplace_back(i, j);
  });
  std::sort(hits.begin(), hits.end());
  return hits;
}

}  // namespace unknot
