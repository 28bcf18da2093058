#include "unknot/model_surface.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>
#include <unordered_set>

#include "unknot/arrangement.hpp"
#include "unknot/error.hpp"
#include "unknot/intersect.hpp"
#include "unknot/primitives.hpp"
#include "unknot/triangulate.hpp"

namespace unknot {
namespace {

using std::numbers::pi;

constexpr double kGenusWedge = pi / 4;        // kept free around +z for the handles
constexpr double kGenusSiteAngle = pi / 9;    // 20 degrees
constexpr int kSphereSubdivisions = 3;

// Disc normal d at angle gamma from +z towards +x, with e1 the in-plane
// direction of increasing gamma and e2 = y.
struct Frame {
  Vec3 d, e1, e2;
};

Frame frame_at(double gamma) {
  return {{std::sin(gamma), 0, std::cos(gamma)}, {std::cos(gamma), 0, -std::sin(gamma)}, {0, 1, 0}};
}

struct Placement {
  VertexId node = 0;
  VertexId parent = 0;
  int depth = 0;
  double gamma = 0;  // direction of the disc centre
  double theta = 0;  // cap angle
  double rho = 0;    // bridge radius towards the parent
  std::vector<VertexId> children;
};

[[noreturn]] void collision(int depth, const std::string& what) {
  throw GeometryError("model surface: features at depth " + std::to_string(depth) + " do not fit (" + what +
                      "); raise the resolution or change shrink");
}

struct Layout {
  VertexId root = 0;
  std::vector<Placement> nodes;  // indexed by tree vertex
  std::vector<VertexId> order;   // breadth-first, root first
};

Layout plan(const ModelSurfaceSpec& spec, VertexId root) {
  const Tree& t = spec.tree;
  const std::size_t n = t.vertex_count();
  Layout out;
  out.root = root;
  out.nodes.resize(n);
  std::vector<char> seen(n, 0);
  std::queue<VertexId> q;
  q.push(root);
  seen[root] = 1;
  while (!q.empty()) {
    const VertexId v = q.front();
    q.pop();
    out.order.push_back(v);
    out.nodes[v].node = v;
    std::vector<VertexId> kids;
    for (VertexId w : t.adjacency()[v]) {
      if (!seen[w]) kids.push_back(w);
    }
    std::sort(kids.begin(), kids.end());
    for (VertexId w : kids) {
      seen[w] = 1;
      out.nodes[w].parent = v;
      out.nodes[w].depth = out.nodes[v].depth + 1;
      q.push(w);
    }
    out.nodes[v].children = std::move(kids);
  }

  const double N = spec.resolution;
  const double rs = kCentralSphereRadius;
  const auto& top = out.nodes[root].children;
  if (!top.empty()) {
    const double k = static_cast<double>(top.size());
    const double s = (2 * pi - 2 * kGenusWedge) / k;
    const double theta = std::min(pi / 3, s / 2.4);
    const double rho = std::min(0.25 * std::min(rs, std::sin(theta)), rs * std::sin(s / 2) / 1.5);
    for (std::size_t i = 0; i < top.size(); ++i) {
      Placement& p = out.nodes[top[i]];
      p.gamma = kGenusWedge + (static_cast<double>(i) + 0.5) * s;
      p.theta = theta;
      p.rho = rho;
    }
    if (2 * rho * std::sin(pi / N) < 1e-7) collision(1, "bridge ring too small");
  }

  for (VertexId v : out.order) {
    if (v == root) continue;
    Placement& pv = out.nodes[v];
    const auto& kids = pv.children;
    if (kids.empty()) continue;
    const int depth = pv.depth + 1;
    const double ct = std::cos(pv.theta);
    const double L = 0.9 * pv.theta;
    const double e = std::atan(2 * pv.rho / ct);
    const double per_side = static_cast<double>((kids.size() + 1) / 2);
    const double slot = (L - e) / per_side;
    if (slot <= 0) collision(depth, "no room beside the parent bridge");
    const double phi = std::min(spec.shrink * pv.theta, slot / 2.4);
    const double rho = 0.25 * std::min(std::sin(pv.theta), std::sin(phi));

    struct Interval {
      double lo, hi;
    };
    std::vector<Interval> holes{{-pv.rho, pv.rho}};
    for (std::size_t c = 0; c < kids.size(); ++c) {
      const double side = c % 2 == 0 ? 1.0 : -1.0;
      const double delta = side * (e + (static_cast<double>(c / 2) + 0.5) * slot);
      Placement& pw = out.nodes[kids[c]];
      pw.gamma = pv.gamma + delta;
      pw.theta = phi;
      pw.rho = rho;
      const double centre = ct * std::tan(delta);
      const double half = rho / std::cos(delta);
      holes.push_back({centre - half, centre + half});
      if (std::abs(delta) + phi >= pv.theta) collision(depth, "cap leaves the parent cap");
    }
    std::sort(holes.begin(), holes.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    const double reach = std::sin(pv.theta) * std::cos(pi / N);
    const double margin = 0.25 * std::min(rho, pv.rho);
    for (std::size_t i = 0; i + 1 < holes.size(); ++i) {
      if (holes[i + 1].lo - holes[i].hi < margin) collision(depth, "bridge holes overlap on the parent disc");
    }
    if (holes.front().lo < -reach + margin || holes.back().hi > reach - margin) {
      collision(depth, "bridge hole reaches the parent disc rim");
    }
    if (2 * rho * std::sin(pi / N) < 1e-7) collision(depth, "bridge ring too small");
  }
  return out;
}

// Rotation used to break the mirror symmetry of the sphere's Steiner points.
Vec3 tilt(const Vec3& p) {
  const Vec3 axis = normalized(Vec3{1, 2, 3});
  const double a = 0.3;
  return p * std::cos(a) + cross(axis, p) * std::sin(a) + axis * (dot(axis, p) * (1 - std::cos(a)));
}

class Builder {
 public:
  Builder(const ModelSurfaceSpec& spec, const Layout& layout)
      : spec_(spec), layout_(layout), N_(spec.resolution), phase_(spec.symmetric ? 0.0 : 0.25) {}

  TriMesh build() {
    const auto& nodes = layout_.nodes;
    const VertexId root = layout_.root;
    near_.resize(nodes.size());
    far_.resize(nodes.size());
    outer_.resize(nodes.size());

    for (VertexId w : layout_.order) {
      if (w == root) continue;
      const Placement& pw = nodes[w];
      const Frame fw = frame_at(pw.gamma);
      const Vec3 cw = fw.d * std::cos(pw.theta);
      std::vector<Vec3> offsets(N_);
      for (int k = 0; k < N_; ++k) {
        const double t = angle(k);
        offsets[k] = (fw.e1 * std::cos(t) + fw.e2 * std::sin(t)) * pw.rho;
      }
      for (int k = 0; k < N_; ++k) near_[w].push_back(mesh_.add_vertex(cw + offsets[k]));
      if (pw.parent == root) {
        const double h = std::sqrt(kCentralSphereRadius * kCentralSphereRadius - pw.rho * pw.rho);
        for (int k = 0; k < N_; ++k) far_[w].push_back(mesh_.add_vertex(offsets[k] + fw.d * h));
      } else {
        const Placement& pv = nodes[pw.parent];
        const Frame fv = frame_at(pv.gamma);
        const double cv = std::cos(pv.theta);
        for (int k = 0; k < N_; ++k) {
          const double lambda = (cv - dot(offsets[k], fv.d)) / dot(fw.d, fv.d);
          far_[w].push_back(mesh_.add_vertex(offsets[k] + fw.d * lambda));
        }
      }
      const double r = std::sin(pw.theta);
      for (int k = 0; k < N_; ++k) {
        const double t = angle(k);
        outer_[w].push_back(mesh_.add_vertex(cw + (fw.e1 * std::cos(t) + fw.e2 * std::sin(t)) * r));
      }
      bridge(far_[w], near_[w], pw.rho);
    }

    for (VertexId w : layout_.order) {
      if (w != root) disc(w);
    }
    sphere();
    return std::move(mesh_);
  }

  std::vector<Index> stitch_vertices() const {
    std::vector<Index> out;
    for (std::size_t w = 0; w < near_.size(); ++w) {
      out.insert(out.end(), near_[w].begin(), near_[w].end());
      out.insert(out.end(), far_[w].begin(), far_[w].end());
    }
    return out;
  }

 private:
  double angle(int k) const { return 2 * pi * (k + phase_) / N_; }

  void bridge(const std::vector<Index>& a, const std::vector<Index>& b, double rho) {
    const double len = distance(mesh_.vertices[a[0]], mesh_.vertices[b[0]]);
    const int layers = std::clamp(static_cast<int>(std::ceil(len * N_ / (2 * pi * rho))), 1, 16);
    std::vector<std::vector<Index>> rings{a};
    for (int l = 1; l < layers; ++l) {
      const double f = static_cast<double>(l) / layers;
      std::vector<Index> ring;
      for (int k = 0; k < N_; ++k) {
        const Vec3 p = mesh_.vertices[a[k]] + (mesh_.vertices[b[k]] - mesh_.vertices[a[k]]) * f;
        ring.push_back(mesh_.add_vertex(p));
      }
      rings.push_back(std::move(ring));
    }
    rings.push_back(b);
    for (int l = 0; l < layers; ++l) {
      const auto& r0 = rings[l];
      const auto& r1 = rings[l + 1];
      for (int k = 0; k < N_; ++k) {
        const int k1 = (k + 1) % N_;
        mesh_.add_triangle(r0[k], r0[k1], r1[k1]);
        mesh_.add_triangle(r0[k], r1[k1], r1[k]);
      }
    }
  }

  void disc(VertexId v) {
    const Placement& pv = layout_.nodes[v];
    const Frame f = frame_at(pv.gamma);
    const Vec3 c = f.d * std::cos(pv.theta);
    std::vector<Vec2> pts;
    std::vector<Index> global;
    std::vector<std::vector<Index>> rings;
    auto add_ring = [&](const std::vector<Index>& ring) {
      std::vector<Index> local;
      for (Index g : ring) {
        const Vec3 q = mesh_.vertices[g] - c;
        local.push_back(static_cast<Index>(pts.size()));
        pts.push_back({dot(q, f.e1), dot(q, f.e2)});
        global.push_back(g);
      }
      rings.push_back(std::move(local));
    };
    add_ring(outer_[v]);
    add_ring(near_[v]);
    for (VertexId w : pv.children) add_ring(far_[w]);
    emit(triangulate_polygon(pts, rings), global);
  }

  void sphere() {
    const double rs = kCentralSphereRadius;
    const auto& top = layout_.nodes[layout_.root].children;
    TriMesh ico = make_icosphere(1.0, kSphereSubdivisions);
    if (!spec_.symmetric) {
      for (auto& p : ico.vertices) p = tilt(p);
    }
    if (top.empty()) {
      for (auto& p : ico.vertices) p *= rs;
      mesh_.append(ico);
      return;
    }
    const double edge_angle = std::acos(std::clamp(
        dot(ico.vertices[ico.triangles[0][0]], ico.vertices[ico.triangles[0][1]]), -1.0, 1.0));

    std::vector<Vec3> centres;
    std::vector<double> keep_out;
    for (VertexId w : top) {
      const Placement& pw = layout_.nodes[w];
      centres.push_back(frame_at(pw.gamma).d);
      keep_out.push_back(std::asin(pw.rho / rs) + 0.5 * edge_angle);
    }

    const Vec3 pole = centres[0];
    const Vec3 f1 = frame_at(layout_.nodes[top[0]].gamma).e1;
    const Vec3 f2 = cross(pole, f1);
    auto project = [&](const Vec3& p) {
      const Vec3 u = normalized(p);
      const double s = 1.0 - dot(u, pole);
      return Vec2{dot(u, f1) / s, dot(u, f2) / s};
    };

    std::vector<Vec2> pts;
    std::vector<Index> global;
    std::vector<std::vector<Index>> rings;
    for (VertexId w : top) {
      std::vector<Index> local;
      for (Index g : far_[w]) {
        local.push_back(static_cast<Index>(pts.size()));
        pts.push_back(project(mesh_.vertices[g]));
        global.push_back(g);
      }
      rings.push_back(std::move(local));
    }
    std::vector<Index> steiner;
    for (const Vec3& u : ico.vertices) {
      bool clear = true;
      for (std::size_t i = 0; i < centres.size() && clear; ++i) {
        clear = std::acos(std::clamp(dot(u, centres[i]), -1.0, 1.0)) > keep_out[i];
      }
      if (!clear) continue;
      steiner.push_back(static_cast<Index>(pts.size()));
      pts.push_back(project(u));
      global.push_back(mesh_.add_vertex(u * rs));
    }
    emit(triangulate_polygon(pts, rings, steiner), global);
  }

  void emit(const std::vector<Triangle>& tris, const std::vector<Index>& global) {
    for (const auto& t : tris) mesh_.add_triangle(global[t[0]], global[t[1]], global[t[2]]);
  }

  const ModelSurfaceSpec& spec_;
  const Layout& layout_;
  const int N_;
  const double phase_;
  TriMesh mesh_;
  std::vector<std::vector<Index>> near_;   // ring on the node's own disc
  std::vector<std::vector<Index>> far_;    // ring on the parent (disc or sphere)
  std::vector<std::vector<Index>> outer_;  // boundary circle
};

void smooth(TriMesh& m, const std::vector<Index>& ring_vertices) {
  std::vector<std::vector<Index>> nbrs(m.vertices.size());
  for (const auto& t : m.triangles) {
    for (int k = 0; k < 3; ++k) {
      nbrs[t[k]].push_back(t[(k + 1) % 3]);
      nbrs[t[k]].push_back(t[(k + 2) % 3]);
    }
  }
  std::vector<Vec3> moved;
  for (Index v : ring_vertices) {
    auto& nb = nbrs[v];
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    Vec3 avg;
    for (Index u : nb) avg += m.vertices[u];
    avg = avg / static_cast<double>(nb.size());
    moved.push_back(m.vertices[v] * 0.5 + avg * 0.5);
  }
  for (std::size_t i = 0; i < ring_vertices.size(); ++i) m.vertices[ring_vertices[i]] = moved[i];
}

// Flip everything if the sphere's +y side faces inwards; +y carries no feature.
void orient_outwards(TriMesh& m) {
  const Vec3 probe{0, kCentralSphereRadius, 0};
  Index best = 0;
  double best_d = 1e300;
  for (std::size_t i = 0; i < m.vertices.size(); ++i) {
    const double d = distance(m.vertices[i], probe);
    if (d < best_d) {
      best_d = d;
      best = static_cast<Index>(i);
    }
  }
  for (const auto& t : m.triangles) {
    if (t[0] != best && t[1] != best && t[2] != best) continue;
    const Vec3 a = m.vertices[t[0]], b = m.vertices[t[1]], c = m.vertices[t[2]];
    if (dot(cross(b - a, c - a), a + b + c) < 0) {
      for (auto& u : m.triangles) std::swap(u[1], u[2]);
    }
    return;
  }
}

}  // namespace

VertexId default_root(const Tree& t) { return t.centers().front(); }

ModelSurface build_model_surface(const ModelSurfaceSpec& spec) {
  if (spec.genus < 0) throw InvalidInput("genus must be non-negative");
  if (spec.resolution < 12) throw InvalidInput("resolution must be at least 12");
  if (!(spec.shrink > 0 && spec.shrink < 1)) throw InvalidInput("shrink must lie in (0, 1)");
  const VertexId root = spec.root.value_or(default_root(spec.tree));
  if (root >= spec.tree.vertex_count()) throw InvalidInput("root vertex out of range");

  const Layout layout = plan(spec, root);
  Builder builder(spec, layout);
  ModelSurface out;
  out.mesh = builder.build();
  out.root = root;
  out.symmetric = spec.symmetric;
  orient_consistently(out.mesh);
  if (spec.smooth_joins) smooth(out.mesh, builder.stitch_vertices());

  const double rs = kCentralSphereRadius;
  out.genus_site = {{0, 0, rs}, 2 * rs * std::sin(kGenusSiteAngle / 2)};
  if (spec.genus > 0) out.mesh = attach_genus(out.mesh, spec.genus, out.genus_site);
  orient_outwards(out.mesh);

  for (VertexId v : layout.order) {
    const Placement& p = layout.nodes[v];
    Feature f;
    f.node = v;
    f.depth = p.depth;
    if (v == root) {
      f.kind = "sphere";
      f.radius = rs;
    } else {
      const Frame fr = frame_at(p.gamma);
      f.parent = p.parent;
      f.kind = "disc";
      f.center = fr.d * std::cos(p.theta);
      f.normal = fr.d;
      f.radius = std::sin(p.theta);
      f.cap_angle = p.theta;
      f.bridge_radius = p.rho;
    }
    out.features.push_back(f);
  }
  return out;
}

TriMesh generate_model_surface(const ModelSurfaceSpec& spec) { return build_model_surface(spec).mesh; }

TriMesh attach_genus(const TriMesh& m, int g, const GenusSite& site, const GenusOptions& options) {
  if (g < 0) throw InvalidInput("genus must be non-negative");
  if (g == 0) return m;
  if (options.ring_segments < 8 || options.ring_segments % 2) {
    throw InvalidInput("attach_genus: ring_segments must be even and at least 8");
  }
  if (options.arch_segments < 2) throw InvalidInput("attach_genus: arch_segments must be at least 2");

  std::vector<char> in_ball(m.vertices.size(), 0);
  for (std::size_t i = 0; i < m.vertices.size(); ++i) {
    in_ball[i] = distance(m.vertices[i], site.center) < site.radius;
  }
  TriMesh patch;
  patch.vertices = m.vertices;
  std::vector<char> removed(m.triangles.size(), 0);
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    const auto& tri = m.triangles[t];
    if (in_ball[tri[0]] || in_ball[tri[1]] || in_ball[tri[2]]) {
      removed[t] = 1;
      patch.triangles.push_back(tri);
    }
  }
  if (patch.triangles.empty()) throw GeometryError("attach_genus: site ball does not touch the mesh");
  const MeshTopology pt = analyze_topology(patch);
  if (!pt.manifold() || pt.components != 1 || pt.boundary_loops.size() != 1 || pt.euler_characteristic() != 1) {
    throw GeometryError("attach_genus: site patch is not a disc");
  }
  const EdgeMap full(m);
  const std::vector<Index> B = pt.boundary_loops[0];
  for (std::size_t i = 0; i < B.size(); ++i) {
    const auto* inc = full.find(B[i], B[(i + 1) % B.size()]);
    if (!inc || inc->size() != 2) throw GeometryError("attach_genus: site patch reaches the mesh boundary");
  }

  Vec3 area, c;
  for (std::size_t i = 0; i < B.size(); ++i) {
    area += cross(m.vertices[B[i]], m.vertices[B[(i + 1) % B.size()]]);
    c += m.vertices[B[i]];
  }
  c = c / static_cast<double>(B.size());
  Vec3 n = normalized(area);
  if (dot(site.center - c, n) < -1e-12) n = -n;
  const Vec3 y{0, 1, 0};
  const Vec3 e2 = std::abs(dot(y, n)) < 0.9 ? normalized(y - n * dot(y, n)) : normalized(cross(n, Vec3{1, 0, 0}));
  const Vec3 e1 = cross(e2, n);

  std::vector<Vec2> pts;
  std::vector<Index> global;
  std::vector<Index> outer;
  for (Index v : B) {
    const Vec3 q = m.vertices[v] - c;
    outer.push_back(static_cast<Index>(pts.size()));
    pts.push_back({dot(q, e1), dot(q, e2)});
    global.push_back(v);
  }
  double turn = 0;
  double reach = 1e300;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vec2 a = pts[i], b = pts[(i + 1) % pts.size()];
    const double cr = a.x * b.y - a.y * b.x;
    if (i == 0) turn = cr;
    if (cr * turn <= 0) throw GeometryError("attach_genus: site patch is not star-shaped about its centre");
    const Vec3 a3{a.x, a.y, 0}, b3{b.x, b.y, 0};
    reach = std::min(reach, segment_segment_distance({}, {}, a3, b3));
  }

  TriMesh out;
  out.vertices = m.vertices;
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    if (!removed[t]) out.triangles.push_back(m.triangles[t]);
  }
  const std::size_t first_new = out.triangles.size();

  const int Nh = options.ring_segments;
  const double R = 0.8 * reach;
  const double rh = 0.7 * R / (std::sqrt(9.0 + 4.0 * (g - 1) * (g - 1)) + 1.0);
  const double a = 3 * rh;
  std::vector<std::vector<Index>> rings;
  std::vector<std::array<std::vector<Index>, 2>> hole_rings(g);
  for (int j = 0; j < g; ++j) {
    const double yj = (j - (g - 1) / 2.0) * 4 * rh;
    for (int s = 0; s < 2; ++s) {
      const double cx = s == 0 ? a : -a;
      std::vector<Index> local;
      for (int k = 0; k < Nh; ++k) {
        const double phi = 2 * pi * k / Nh;
        const Vec2 p{cx + rh * std::cos(phi), yj + rh * std::sin(phi)};
        local.push_back(static_cast<Index>(pts.size()));
        pts.push_back(p);
        const Index gv = out.add_vertex(c + e1 * p.x + e2 * p.y);
        global.push_back(gv);
        hole_rings[j][s].push_back(gv);
      }
      rings.push_back(std::move(local));
    }
  }
  rings.insert(rings.begin(), outer);
  for (const auto& t : triangulate_polygon(pts, rings)) {
    out.add_triangle(global[t[0]], global[t[1]], global[t[2]]);
  }

  const int Na = options.arch_segments;
  for (int j = 0; j < g; ++j) {
    const double yj = (j - (g - 1) / 2.0) * 4 * rh;
    std::vector<std::vector<Index>> arch{hole_rings[j][0]};
    for (int i = 1; i < Na; ++i) {
      const double t = pi * i / Na;
      const Vec3 centre = c + e1 * (a * std::cos(t)) + e2 * yj + n * (a * std::sin(t));
      const Vec3 radial = e1 * std::cos(t) + n * std::sin(t);
      std::vector<Index> ring;
      for (int k = 0; k < Nh; ++k) {
        const double v = 2 * pi * k / Nh;
        ring.push_back(out.add_vertex(centre + (radial * std::cos(v) + e2 * std::sin(v)) * rh));
      }
      arch.push_back(std::move(ring));
    }
    std::vector<Index> last(Nh);
    for (int k = 0; k < Nh; ++k) last[k] = hole_rings[j][1][(Nh / 2 - k + Nh) % Nh];
    arch.push_back(std::move(last));
    for (int i = 0; i < Na; ++i) {
      for (int k = 0; k < Nh; ++k) {
        const int k1 = (k + 1) % Nh;
        out.add_triangle(arch[i][k], arch[i][k1], arch[i + 1][k1]);
        out.add_triangle(arch[i][k], arch[i + 1][k1], arch[i + 1][k]);
      }
    }
  }

  remove_unreferenced_vertices(out);
  orient_consistently(out);

  std::vector<Aabb> boxes(out.triangles.size());
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    for (Index v : out.triangles[i]) boxes[i].expand(out.vertices[v]);
    boxes[i].inflate(kEpsilon);
  }
  const Bvh bvh(boxes);
  for (std::size_t i = first_new; i < out.triangles.size(); ++i) {
    const Triangle& t = out.triangles[i];
    const std::array<Vec3, 3> tv{out.vertices[t[0]], out.vertices[t[1]], out.vertices[t[2]]};
    bvh.query(boxes[i], [&](Index j) {
      if (j == i || (j >= first_new && j < i)) return;
      const Triangle& u = out.triangles[j];
      for (Index x : t) {
        for (Index z : u) {
          if (x == z) return;
        }
      }
      const std::array<Vec3, 3> uv{out.vertices[u[0]], out.vertices[u[1]], out.vertices[u[2]]};
      if (triangles_intersect(tv, uv, kEpsilon)) throw GeometryError("attach_genus: clearance violation");
    });
  }
  return out;
}

}  // namespace unknot
