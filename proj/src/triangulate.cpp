#include "unknot/triangulate.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "unknot/error.hpp"

namespace unknot {
namespace {

// Ear clipping with hole bridging, after the mapbox earcut algorithm.

struct Node {
  Index i;
  double x, y;
  Node* prev = nullptr;
  Node* next = nullptr;
  bool steiner = false;
};

class EarClipper {
 public:
  EarClipper(const std::vector<Vec2>& pts, std::vector<Triangle>& out) : pts_(pts), out_(out) {}

  void run(const std::vector<std::vector<Index>>& rings) {
    Node* outer = linked_list(rings[0], true);
    if (!outer || outer->next == outer->prev) return;
    if (rings.size() > 1) outer = eliminate_holes(rings, outer);
    earcut_linked(outer, 0);
  }

 private:
  static double area(const Node* p, const Node* q, const Node* r) {
    return (q->y - p->y) * (r->x - q->x) - (q->x - p->x) * (r->y - q->y);
  }
  static bool equals(const Node* a, const Node* b) { return a->x == b->x && a->y == b->y; }
  static bool point_in_triangle(double ax, double ay, double bx, double by, double cx, double cy, double px,
                                double py) {
    return (cx - px) * (ay - py) >= (ax - px) * (cy - py) && (ax - px) * (by - py) >= (bx - px) * (ay - py) &&
           (bx - px) * (cy - py) >= (cx - px) * (by - py);
  }
  static int sign(double v) { return (v > 0) - (v < 0); }
  static bool on_segment(const Node* p, const Node* q, const Node* r) {
    return q->x <= std::max(p->x, r->x) && q->x >= std::min(p->x, r->x) && q->y <= std::max(p->y, r->y) &&
           q->y >= std::min(p->y, r->y);
  }
  static bool intersects(const Node* p1, const Node* q1, const Node* p2, const Node* q2) {
    const int o1 = sign(area(p1, q1, p2)), o2 = sign(area(p1, q1, q2));
    const int o3 = sign(area(p2, q2, p1)), o4 = sign(area(p2, q2, q1));
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(p1, p2, q1)) return true;
    if (o2 == 0 && on_segment(p1, q2, q1)) return true;
    if (o3 == 0 && on_segment(p2, p1, q2)) return true;
    if (o4 == 0 && on_segment(p2, q1, q2)) return true;
    return false;
  }
  static bool intersects_polygon(const Node* a, const Node* b) {
    const Node* p = a;
    do {
      if (p->i != a->i && p->next->i != a->i && p->i != b->i && p->next->i != b->i &&
          intersects(p, p->next, a, b))
        return true;
      p = p->next;
    } while (p != a);
    return false;
  }
  static bool locally_inside(const Node* a, const Node* b) {
    return area(a->prev, a, a->next) < 0 ? area(a, b, a->next) >= 0 && area(a, a->prev, b) >= 0
                                         : area(a, b, a->prev) < 0 || area(a, a->next, b) < 0;
  }
  static bool middle_inside(const Node* a, const Node* b) {
    const Node* p = a;
    bool inside = false;
    const double px = (a->x + b->x) / 2, py = (a->y + b->y) / 2;
    do {
      if (((p->y > py) != (p->next->y > py)) && p->next->y != p->y &&
          (px < (p->next->x - p->x) * (py - p->y) / (p->next->y - p->y) + p->x))
        inside = !inside;
      p = p->next;
    } while (p != a);
    return inside;
  }
  static bool sector_contains_sector(const Node* m, const Node* p) {
    return area(m->prev, m, p->prev) < 0 && area(p->next, m, m->next) < 0;
  }
  static bool valid_diagonal(const Node* a, const Node* b) {
    return a->next->i != b->i && a->prev->i != b->i && !intersects_polygon(a, b) &&
           ((locally_inside(a, b) && locally_inside(b, a) && middle_inside(a, b) &&
             (area(a->prev, a, b->prev) != 0 || area(a, b->prev, b) != 0)) ||
            (equals(a, b) && area(a->prev, a, a->next) > 0 && area(b->prev, b, b->next) > 0));
  }
  static void remove_node(Node* p) {
    p->next->prev = p->prev;
    p->prev->next = p->next;
  }

  Node* insert_node(Index i, Node* last) {
    Node& n = pool_.emplace_back(Node{i, pts_[i].x, pts_[i].y});
    if (!last) {
      n.prev = n.next = &n;
    } else {
      n.next = last->next;
      n.prev = last;
      last->next->prev = &n;
      last->next = &n;
    }
    return &n;
  }

  Node* linked_list(const std::vector<Index>& ring, bool clockwise) {
    double sum = 0;
    for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
      sum += (pts_[ring[j]].x - pts_[ring[i]].x) * (pts_[ring[i]].y + pts_[ring[j]].y);
    }
    Node* last = nullptr;
    if (clockwise == (sum > 0)) {
      for (Index i : ring) last = insert_node(i, last);
    } else {
      for (auto it = ring.rbegin(); it != ring.rend(); ++it) last = insert_node(*it, last);
    }
    if (last && equals(last, last->next)) {
      remove_node(last);
      last = last->next;
    }
    return last;
  }

  Node* filter_points(Node* start, Node* end = nullptr) {
    if (!start) return start;
    if (!end) end = start;
    Node* p = start;
    bool again;
    do {
      again = false;
      if (!p->steiner && (equals(p, p->next) || area(p->prev, p, p->next) == 0)) {
        remove_node(p);
        p = end = p->prev;
        if (p == p->next) break;
        again = true;
      } else {
        p = p->next;
      }
    } while (again || p != end);
    return end;
  }

  bool is_ear(const Node* ear) const {
    const Node *a = ear->prev, *b = ear, *c = ear->next;
    if (area(a, b, c) >= 0) return false;
    for (const Node* p = ear->next->next; p != ear->prev; p = p->next) {
      if (!(a->x == p->x && a->y == p->y) && point_in_triangle(a->x, a->y, b->x, b->y, c->x, c->y, p->x, p->y) &&
          area(p->prev, p, p->next) >= 0)
        return false;
    }
    return true;
  }

  void emit(const Node* a, const Node* b, const Node* c) { out_.push_back({a->i, b->i, c->i}); }

  void earcut_linked(Node* ear, int pass) {
    if (!ear) return;
    Node* stop = ear;
    while (ear->prev != ear->next) {
      Node* prev = ear->prev;
      Node* next = ear->next;
      if (is_ear(ear)) {
        emit(prev, ear, next);
        remove_node(ear);
        ear = next->next;
        stop = next->next;
        continue;
      }
      ear = next;
      if (ear == stop) {
        if (pass == 0) {
          earcut_linked(filter_points(ear), 1);
        } else if (pass == 1) {
          ear = cure_local_intersections(filter_points(ear));
          earcut_linked(ear, 2);
        } else {
          split_earcut(ear);
        }
        break;
      }
    }
  }

  Node* cure_local_intersections(Node* start) {
    Node* p = start;
    do {
      Node* a = p->prev;
      Node* b = p->next->next;
      if (!equals(a, b) && intersects(a, p, p->next, b) && locally_inside(a, b) && locally_inside(b, a)) {
        emit(a, p, b);
        remove_node(p);
        remove_node(p->next);
        p = start = b;
      }
      p = p->next;
    } while (p != start);
    return filter_points(p);
  }

  Node* split_polygon(Node* a, Node* b) {
    Node* a2 = &pool_.emplace_back(Node{a->i, a->x, a->y});
    Node* b2 = &pool_.emplace_back(Node{b->i, b->x, b->y});
    Node* an = a->next;
    Node* bp = b->prev;
    a->next = b;
    b->prev = a;
    a2->next = an;
    an->prev = a2;
    b2->next = a2;
    a2->prev = b2;
    bp->next = b2;
    b2->prev = bp;
    return b2;
  }

  void split_earcut(Node* start) {
    Node* a = start;
    do {
      for (Node* b = a->next->next; b != a->prev; b = b->next) {
        if (a->i != b->i && valid_diagonal(a, b)) {
          Node* c = split_polygon(a, b);
          a = filter_points(a, a->next);
          c = filter_points(c, c->next);
          earcut_linked(a, 0);
          earcut_linked(c, 0);
          return;
        }
      }
      a = a->next;
    } while (a != start);
  }

  static Node* leftmost(Node* start) {
    Node* p = start;
    Node* best = start;
    do {
      if (p->x < best->x || (p->x == best->x && p->y < best->y)) best = p;
      p = p->next;
    } while (p != start);
    return best;
  }

  Node* find_hole_bridge(const Node* hole, Node* outer) {
    Node* p = outer;
    const double hx = hole->x, hy = hole->y;
    double qx = -std::numeric_limits<double>::infinity();
    Node* m = nullptr;
    do {
      if (hy <= p->y && hy >= p->next->y && p->next->y != p->y) {
        const double x = p->x + (hy - p->y) * (p->next->x - p->x) / (p->next->y - p->y);
        if (x <= hx && x > qx) {
          qx = x;
          m = p->x < p->next->x ? p : p->next;
          if (x == hx) return m;
        }
      }
      p = p->next;
    } while (p != outer);
    if (!m) return nullptr;

    const Node* stop = m;
    const double mx = m->x, my = m->y;
    double tan_min = std::numeric_limits<double>::infinity();
    p = m;
    do {
      if (hx >= p->x && p->x >= mx && hx != p->x &&
          point_in_triangle(hy < my ? hx : qx, hy, mx, my, hy < my ? qx : hx, hy, p->x, p->y)) {
        const double tan = std::abs(hy - p->y) / (hx - p->x);
        if (locally_inside(p, hole) &&
            (tan < tan_min || (tan == tan_min && (p->x > m->x || (p->x == m->x && sector_contains_sector(m, p)))))) {
          m = p;
          tan_min = tan;
        }
      }
      p = p->next;
    } while (p != stop);
    return m;
  }

  Node* eliminate_holes(const std::vector<std::vector<Index>>& rings, Node* outer) {
    std::vector<Node*> queue;
    for (std::size_t r = 1; r < rings.size(); ++r) {
      Node* list = linked_list(rings[r], false);
      if (!list) continue;
      if (list == list->next) list->steiner = true;
      queue.push_back(leftmost(list));
    }
    std::sort(queue.begin(), queue.end(), [](const Node* a, const Node* b) {
      return a->x != b->x ? a->x < b->x : a->y < b->y;
    });
    for (Node* hole : queue) {
      Node* bridge = find_hole_bridge(hole, outer);
      if (!bridge) continue;
      Node* reverse = split_polygon(bridge, hole);
      filter_points(reverse, reverse->next);
      outer = filter_points(bridge, bridge->next);
    }
    return outer;
  }

  const std::vector<Vec2>& pts_;
  std::vector<Triangle>& out_;
  std::deque<Node> pool_;
};

constexpr std::uint64_t directed(Index a, Index b) { return (std::uint64_t{a} << 32) | b; }

// Triangulation with directed-edge lookup for flips and point insertion.
class Refiner {
 public:
  Refiner(const std::vector<Vec2>& pts, std::vector<Triangle>& tris, std::unordered_set<std::uint64_t> constrained)
      : pts_(pts), tris_(tris), constrained_(std::move(constrained)) {
    for (std::size_t t = 0; t < tris_.size(); ++t) link(static_cast<Index>(t));
  }

  void legalize_all() {
    std::vector<std::uint64_t> stack;
    for (const auto& t : tris_) {
      for (int k = 0; k < 3; ++k) stack.push_back(directed(t[k], t[(k + 1) % 3]));
    }
    legalize(stack);
  }

  void insert(Index p, double tol) {
    const Vec2& q = pts_[p];
    Index best = kNone;
    double best_d = -std::numeric_limits<double>::infinity();
    int best_edge = -1;
    for (std::size_t t = 0; t < tris_.size(); ++t) {
      const auto& tri = tris_[t];
      double dmin = std::numeric_limits<double>::infinity();
      int emin = -1;
      for (int k = 0; k < 3; ++k) {
        const Vec2& a = pts_[tri[k]];
        const Vec2& b = pts_[tri[(k + 1) % 3]];
        const double len = std::hypot(b.x - a.x, b.y - a.y);
        const double d = orient2d(a, b, q) / len;
        if (d < dmin) {
          dmin = d;
          emin = k;
        }
      }
      if (dmin > best_d) {
        best_d = dmin;
        best = static_cast<Index>(t);
        best_edge = emin;
      }
    }
    if (best == kNone || best_d < -tol) throw GeometryError("triangulation: Steiner point outside the region");
    std::vector<std::uint64_t> stack;
    const Triangle t = tris_[best];
    if (best_d > tol) {
      unlink(best);
      tris_[best] = {t[0], t[1], p};
      link(best);
      add({t[1], t[2], p});
      add({t[2], t[0], p});
      for (int k = 0; k < 3; ++k) stack.push_back(directed(t[k], t[(k + 1) % 3]));
    } else {
      const Index a = t[best_edge], b = t[(best_edge + 1) % 3], c = t[(best_edge + 2) % 3];
      for (Index v : t) {
        const Vec2& w = pts_[v];
        if (std::hypot(w.x - q.x, w.y - q.y) <= tol) return;
      }
      if (constrained_.count(edge_key(a, b))) throw GeometryError("triangulation: Steiner point on a ring edge");
      auto it = owner_.find(directed(b, a));
      const Index other = it == owner_.end() ? kNone : it->second;
      unlink(best);
      tris_[best] = {c, a, p};
      link(best);
      add({b, c, p});
      stack.push_back(directed(c, a));
      stack.push_back(directed(b, c));
      if (other != kNone) {
        const Index u = other;
        const Triangle s = tris_[u];
        int k = 0;
        while (!(s[k] == b && s[(k + 1) % 3] == a)) ++k;
        const Index d = s[(k + 2) % 3];
        unlink(u);
        tris_[u] = {a, d, p};
        link(u);
        add({d, b, p});
        stack.push_back(directed(a, d));
        stack.push_back(directed(d, b));
      }
    }
    legalize(stack);
  }

 private:
  static constexpr Index kNone = std::numeric_limits<Index>::max();

  void link(Index t) {
    const auto& tri = tris_[t];
    for (int k = 0; k < 3; ++k) owner_[directed(tri[k], tri[(k + 1) % 3])] = t;
  }
  void unlink(Index t) {
    const auto& tri = tris_[t];
    for (int k = 0; k < 3; ++k) owner_.erase(directed(tri[k], tri[(k + 1) % 3]));
  }
  void add(const Triangle& t) {
    tris_.push_back(t);
    link(static_cast<Index>(tris_.size() - 1));
  }

  // d inside the circumcircle of counter-clockwise (a, b, c), with a
  // relative threshold so cocircular quads are left alone.
  bool in_circle(Index ia, Index ib, Index ic, Index id) const {
    const Vec2 &a = pts_[ia], &b = pts_[ib], &c = pts_[ic], &d = pts_[id];
    const double adx = a.x - d.x, ady = a.y - d.y;
    const double bdx = b.x - d.x, bdy = b.y - d.y;
    const double cdx = c.x - d.x, cdy = c.y - d.y;
    const double al = adx * adx + ady * ady, bl = bdx * bdx + bdy * bdy, cl = cdx * cdx + cdy * cdy;
    const double det = al * (bdx * cdy - bdy * cdx) + bl * (cdx * ady - cdy * adx) + cl * (adx * bdy - ady * bdx);
    const double perm = al * (std::abs(bdx * cdy) + std::abs(bdy * cdx)) +
                        bl * (std::abs(cdx * ady) + std::abs(cdy * adx)) +
                        cl * (std::abs(adx * bdy) + std::abs(ady * bdx));
    return det > 1e-10 * perm;
  }

  void legalize(std::vector<std::uint64_t>& stack) {
    while (!stack.empty()) {
      const std::uint64_t e = stack.back();
      stack.pop_back();
      const Index a = static_cast<Index>(e >> 32), b = static_cast<Index>(e & 0xffffffffu);
      if (constrained_.count(edge_key(a, b))) continue;
      auto i1 = owner_.find(directed(a, b));
      auto i2 = owner_.find(directed(b, a));
      if (i1 == owner_.end() || i2 == owner_.end()) continue;
      const Index t1 = i1->second, t2 = i2->second;
      const Index c = third(tris_[t1], a, b), d = third(tris_[t2], b, a);
      if (!in_circle(a, b, c, d)) continue;
      if (orient2d(pts_[a], pts_[d], pts_[c]) <= 0 || orient2d(pts_[d], pts_[b], pts_[c]) <= 0) continue;
      unlink(t1);
      unlink(t2);
      tris_[t1] = {c, a, d};
      tris_[t2] = {d, b, c};
      link(t1);
      link(t2);
      stack.push_back(directed(a, d));
      stack.push_back(directed(d, b));
      stack.push_back(directed(b, c));
      stack.push_back(directed(c, a));
    }
  }

  static Index third(const Triangle& t, Index a, Index b) {
    for (int k = 0; k < 3; ++k) {
      if (t[k] == a && t[(k + 1) % 3] == b) return t[(k + 2) % 3];
    }
    throw GeometryError("triangulation: broken adjacency");
  }

  const std::vector<Vec2>& pts_;
  std::vector<Triangle>& tris_;
  std::unordered_set<std::uint64_t> constrained_;
  std::unordered_map<std::uint64_t, Index> owner_;
};

double ring_area(const std::vector<Vec2>& pts, const std::vector<Index>& ring) {
  double s = 0;
  for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
    s += pts[ring[j]].x * pts[ring[i]].y - pts[ring[i]].x * pts[ring[j]].y;
  }
  return s / 2;
}

}  // namespace

std::vector<Triangle> triangulate_polygon(const std::vector<Vec2>& points,
                                          const std::vector<std::vector<Index>>& rings,
                                          const std::vector<Index>& steiner, bool delaunay) {
  if (rings.empty() || rings[0].size() < 3) throw InvalidInput("triangulate_polygon: need an outer ring");
  for (const auto& r : rings) {
    if (r.size() < 3) throw InvalidInput("triangulate_polygon: ring with fewer than 3 points");
    for (Index i : r) {
      if (i >= points.size()) throw InvalidInput("triangulate_polygon: ring index out of range");
    }
  }

  std::vector<Triangle> tris;
  EarClipper(points, tris).run(rings);
  for (auto& t : tris) {
    if (orient2d(points[t[0]], points[t[1]], points[t[2]]) < 0) std::swap(t[1], t[2]);
  }

  double expected = std::abs(ring_area(points, rings[0]));
  for (std::size_t r = 1; r < rings.size(); ++r) expected -= std::abs(ring_area(points, rings[r]));
  double got = 0;
  for (const auto& t : tris) got += orient2d(points[t[0]], points[t[1]], points[t[2]]) / 2;
  if (std::abs(got - expected) > 1e-9 * std::abs(ring_area(points, rings[0]))) {
    throw GeometryError("triangulation: ear clipping did not cover the region");
  }
  std::unordered_set<Index> used;
  for (const auto& t : tris) used.insert(t.begin(), t.end());
  for (const auto& r : rings) {
    for (Index i : r) {
      if (!used.count(i)) throw GeometryError("triangulation: ring vertex dropped (collinear or duplicate points)");
    }
  }

  if (!delaunay && steiner.empty()) return tris;

  std::unordered_set<std::uint64_t> constrained;
  for (const auto& r : rings) {
    for (std::size_t i = 0; i < r.size(); ++i) constrained.insert(edge_key(r[i], r[(i + 1) % r.size()]));
  }
  double lo_x = points[rings[0][0]].x, hi_x = lo_x, lo_y = points[rings[0][0]].y, hi_y = lo_y;
  for (Index i : rings[0]) {
    lo_x = std::min(lo_x, points[i].x);
    hi_x = std::max(hi_x, points[i].x);
    lo_y = std::min(lo_y, points[i].y);
    hi_y = std::max(hi_y, points[i].y);
  }
  const double tol = 1e-12 * std::max(hi_x - lo_x, hi_y - lo_y);

  Refiner refiner(points, tris, std::move(constrained));
  if (delaunay) refiner.legalize_all();
  for (Index p : steiner) {
    if (p >= points.size()) throw InvalidInput("triangulate_polygon: Steiner index out of range");
    refiner.insert(p, tol);
  }
  return tris;
}

}  // namespace unknot
