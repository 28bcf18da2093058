#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <queue>
#include <set>

#include "unknot/primitives.hpp"

namespace oracle {

using unknot::Vec3;

EdgeList pruefer_decode(const std::vector<int>& seq, int n) {
  EdgeList edges;
  if (n == 2) {
    edges.emplace_back(0, 1);
    return edges;
  }
  std::vector<int> degree(n, 1);
  for (int s : seq) ++degree[s];
  for (int s : seq) {
    int leaf = 0;
    while (degree[leaf] != 1) ++leaf;
    edges.emplace_back(leaf, s);
    --degree[leaf];
    --degree[s];
  }
  int u = -1;
  for (int v = 0; v < n; ++v) {
    if (degree[v] == 1) {
      if (u < 0) {
        u = v;
      } else {
        edges.emplace_back(u, v);
      }
    }
  }
  return edges;
}

namespace {

std::vector<std::vector<char>> adjacency_matrix(int n, const EdgeList& e) {
  std::vector<std::vector<char>> a(n, std::vector<char>(n, 0));
  for (auto [u, v] : e) a[u][v] = a[v][u] = 1;
  return a;
}

}  // namespace

bool isomorphic_by_permutation(int n, const EdgeList& a, const EdgeList& b) {
  if (a.size() != b.size()) return false;
  const auto A = adjacency_matrix(n, a), B = adjacency_matrix(n, b);
  std::vector<int> da(n, 0), db(n, 0);
  for (auto [u, v] : a) ++da[u], ++da[v];
  for (auto [u, v] : b) ++db[u], ++db[v];
  std::vector<int> map(n, -1);
  std::vector<char> used(n, 0);
  auto place = [&](auto&& self, int i) -> bool {
    if (i == n) return true;
    for (int j = 0; j < n; ++j) {
      if (used[j] || da[i] != db[j]) continue;
      bool ok = true;
      for (int k = 0; k < i && ok; ++k) ok = A[i][k] == B[j][map[k]];
      if (!ok) continue;
      map[i] = j;
      used[j] = 1;
      if (self(self, i + 1)) return true;
      used[j] = 0;
    }
    return false;
  };
  return place(place, 0);
}

bool multigraphs_isomorphic_brute(int n, const EdgeList& a, const EdgeList& b) {
  if (a.size() != b.size()) return false;
  auto normal = [](EdgeList e) {
    for (auto& [u, v] : e) {
      if (u > v) std::swap(u, v);
    }
    std::sort(e.begin(), e.end());
    return e;
  };
  const EdgeList target = normal(b);
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  do {
    EdgeList mapped;
    for (auto [u, v] : a) mapped.emplace_back(perm[u], perm[v]);
    if (normal(mapped) == target) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

int count_free_trees_pruefer(int n) {
  if (n <= 2) return 1;
  std::map<std::vector<int>, std::vector<EdgeList>> classes;
  std::vector<int> seq(n - 2, 0);
  int count = 0;
  while (true) {
    const EdgeList t = pruefer_decode(seq, n);
    std::vector<int> deg(n, 0);
    for (auto [u, v] : t) ++deg[u], ++deg[v];
    std::vector<int> key = deg;
    std::sort(key.begin(), key.end());
    auto& reps = classes[key];
    bool known = false;
    for (const auto& r : reps) {
      if (isomorphic_by_permutation(n, t, r)) {
        known = true;
        break;
      }
    }
    if (!known) {
      reps.push_back(t);
      ++count;
    }
    int i = 0;
    while (i < n - 2 && ++seq[i] == n) seq[i++] = 0;
    if (i == n - 2) break;
  }
  return count;
}

namespace {

double point_segment(const Vec3& p, const Vec3& a, const Vec3& b) {
  const Vec3 ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0 ? dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, a + ab * t);
}

double point_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 n = cross(b - a, c - a);
  const double area2 = dot(n, n);
  if (area2 > 0) {
    const double d = dot(p - a, n) / area2;
    const Vec3 q = p - n * d;
    const double u = dot(cross(c - b, q - b), n) / area2;
    const double v = dot(cross(a - c, q - c), n) / area2;
    const double w = 1 - u - v;
    if (u >= 0 && v >= 0 && w >= 0) return std::abs(d) * std::sqrt(area2);
  }
  return std::min({point_segment(p, a, b), point_segment(p, b, c), point_segment(p, c, a)});
}

double segment_segment(const Vec3& p1, const Vec3& q1, const Vec3& p2, const Vec3& q2) {
  double best = std::min({point_segment(p1, p2, q2), point_segment(q1, p2, q2), point_segment(p2, p1, q1),
                          point_segment(q2, p1, q1)});
  const Vec3 d1 = q1 - p1, d2 = q2 - p2, r = p1 - p2;
  const double a = dot(d1, d1), e = dot(d2, d2), b = dot(d1, d2), c = dot(d1, r), f = dot(d2, r);
  const double den = a * e - b * b;
  if (den > 1e-14 * a * e) {
    const double s = (b * f - c * e) / den;
    const double t = (a * f - b * c) / den;
    if (s >= 0 && s <= 1 && t >= 0 && t <= 1) best = std::min(best, distance(p1 + d1 * s, p2 + d2 * t));
  }
  return best;
}

bool edge_crosses(const Vec3& p, const Vec3& q, const Vec3& a, const Vec3& b, const Vec3& c, double eps) {
  const Vec3 n = normalized(cross(b - a, c - a));
  if (!std::isfinite(n.x)) return false;
  const double dp = dot(p - a, n), dq = dot(q - a, n);
  if (!((dp > 0 && dq < 0) || (dp < 0 && dq > 0))) return false;
  const Vec3 x = p + (q - p) * (dp / (dp - dq));
  return point_triangle(x, a, b, c) <= eps;
}

bool triangle_pair(const std::array<Vec3, 3>& t, const std::array<Vec3, 3>& u, double eps) {
  for (int i = 0; i < 3; ++i) {
    if (edge_crosses(t[i], t[(i + 1) % 3], u[0], u[1], u[2], eps)) return true;
    if (edge_crosses(u[i], u[(i + 1) % 3], t[0], t[1], t[2], eps)) return true;
  }
  for (int i = 0; i < 3; ++i) {
    if (point_triangle(t[i], u[0], u[1], u[2]) <= eps) return true;
    if (point_triangle(u[i], t[0], t[1], t[2]) <= eps) return true;
    for (int j = 0; j < 3; ++j) {
      if (segment_segment(t[i], t[(i + 1) % 3], u[j], u[(j + 1) % 3]) <= eps) return true;
    }
  }
  return false;
}

}  // namespace

bool all_pairs_self_intersect(const unknot::TriMesh& m, double eps) {
  const std::size_t n = m.triangles.size();
  std::vector<std::array<Vec3, 3>> tri(n);
  std::vector<Vec3> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (int k = 0; k < 3; ++k) tri[i][k] = m.vertices[m.triangles[i][k]];
    lo[i] = hi[i] = tri[i][0];
    for (int k = 1; k < 3; ++k) {
      const Vec3& p = tri[i][k];
      lo[i] = {std::min(lo[i].x, p.x), std::min(lo[i].y, p.y), std::min(lo[i].z, p.z)};
      hi[i] = {std::max(hi[i].x, p.x), std::max(hi[i].y, p.y), std::max(hi[i].z, p.z)};
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (lo[i].x > hi[j].x + eps || lo[j].x > hi[i].x + eps || lo[i].y > hi[j].y + eps ||
          lo[j].y > hi[i].y + eps || lo[i].z > hi[j].z + eps || lo[j].z > hi[i].z + eps) {
        continue;
      }
      const auto& a = m.triangles[i];
      const auto& b = m.triangles[j];
      bool shared = false;
      for (auto x : a) {
        for (auto y : b) shared |= x == y;
      }
      if (shared) continue;
      if (triangle_pair(tri[i], tri[j], eps)) return true;
    }
  }
  return false;
}

namespace {

void frame(const Vec3& c, Vec3& e1, Vec3& e2) {
  const Vec3 helper = std::abs(c.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  e1 = normalized(cross(c, helper));
  e2 = cross(c, e1);
}

double angle_between(const Vec3& a, const Vec3& b) { return std::atan2(norm(cross(a, b)), dot(a, b)); }

}  // namespace

double WobblyLoop::radius_at(double phi) const { return radius * (1 + wobble * std::sin(k * phi + phase)); }

bool WobblyLoop::contains(const Vec3& p) const {
  Vec3 e1, e2;
  frame(center, e1, e2);
  const Vec3 q = normalized(p);
  const double phi = std::atan2(dot(q, e2), dot(q, e1));
  return angle_between(q, center) < radius_at(phi);
}

unknot::SphericalLoop WobblyLoop::polyline(int samples) const {
  Vec3 e1, e2;
  frame(center, e1, e2);
  unknot::SphericalLoop out;
  for (int i = 0; i < samples; ++i) {
    const double phi = 2 * std::numbers::pi * i / samples;
    const double r = radius_at(phi);
    out.push_back(normalized(center * std::cos(r) + (e1 * std::cos(phi) + e2 * std::sin(phi)) * std::sin(r)));
  }
  return out;
}

std::vector<WobblyLoop> random_disjoint_loops(std::mt19937_64& rng, int count, double gap) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss;
  std::vector<WobblyLoop> loops;
  for (int attempt = 0; attempt < 400 && static_cast<int>(loops.size()) < count; ++attempt) {
    WobblyLoop l;
    l.center = normalized(Vec3{gauss(rng), gauss(rng), gauss(rng)});
    l.radius = 0.15 + 1.05 * unit(rng);
    l.wobble = 0.25 * unit(rng);
    l.k = 2 + static_cast<int>(unit(rng) * 4);
    l.phase = 2 * std::numbers::pi * unit(rng);
    bool ok = true;
    for (const auto& o : loops) {
      const double d = angle_between(l.center, o.center);
      const bool apart = d >= l.max_radius() + o.max_radius() + gap;
      const bool l_in_o = d + l.max_radius() + gap <= o.min_radius();
      const bool o_in_l = d + o.max_radius() + gap <= l.min_radius();
      if (!(apart || l_in_o || o_in_l)) {
        ok = false;
        break;
      }
    }
    if (ok) loops.push_back(l);
  }
  return loops;
}

unknot::Multigraph flood_fill_graph(const std::vector<WobblyLoop>& loops, int subdivisions) {
  const unknot::TriMesh s = unknot::make_icosphere(1.0, subdivisions);
  const std::size_t n = s.triangles.size();
  std::vector<std::uint32_t> label(n, 0);
  for (std::size_t t = 0; t < n; ++t) {
    const auto& tri = s.triangles[t];
    const Vec3 c = s.vertices[tri[0]] + s.vertices[tri[1]] + s.vertices[tri[2]];
    for (std::size_t l = 0; l < loops.size(); ++l) {
      if (loops[l].contains(c)) label[t] |= 1u << l;
    }
  }
  std::map<std::pair<unknot::Index, unknot::Index>, std::vector<std::size_t>> by_edge;
  for (std::size_t t = 0; t < n; ++t) {
    const auto& tri = s.triangles[t];
    for (int k = 0; k < 3; ++k) {
      const auto a = tri[k], b = tri[(k + 1) % 3];
      by_edge[{std::min(a, b), std::max(a, b)}].push_back(t);
    }
  }
  std::vector<std::vector<std::size_t>> nbr(n);
  for (const auto& [e, ts] : by_edge) {
    nbr[ts[0]].push_back(ts[1]);
    nbr[ts[1]].push_back(ts[0]);
  }
  std::vector<int> comp(n, -1);
  int comps = 0;
  for (std::size_t t = 0; t < n; ++t) {
    if (comp[t] >= 0) continue;
    std::queue<std::size_t> q;
    q.push(t);
    comp[t] = comps;
    while (!q.empty()) {
      const std::size_t x = q.front();
      q.pop();
      for (std::size_t y : nbr[x]) {
        if (comp[y] < 0 && label[y] == label[x]) {
          comp[y] = comps;
          q.push(y);
        }
      }
    }
    ++comps;
  }
  std::set<std::pair<int, int>> adj;
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t y : nbr[t]) {
      if (comp[y] != comp[t]) adj.insert({std::min(comp[t], comp[y]), std::max(comp[t], comp[y])});
    }
  }
  std::vector<unknot::Edge> edges;
  for (auto [a, b] : adj) edges.emplace_back(a, b);
  return unknot::Multigraph(comps, std::move(edges));
}

}  // namespace oracle
