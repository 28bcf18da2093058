#include "unknot/mesh.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "unknot/error.hpp"

namespace unknot {

Index TriMesh::append(const TriMesh& other) {
  const auto offset = static_cast<Index>(vertices.size());
  vertices.insert(vertices.end(), other.vertices.begin(), other.vertices.end());
  for (const auto& t : other.triangles) triangles.push_back({t[0] + offset, t[1] + offset, t[2] + offset});
  return offset;
}

EdgeMap::EdgeMap(const TriMesh& m) {
  edges_.reserve(m.triangles.size() * 2);
  for (Index t = 0; t < m.triangles.size(); ++t) {
    const auto& tri = m.triangles[t];
    for (std::uint8_t k = 0; k < 3; ++k) {
      const Index a = tri[k], b = tri[(k + 1) % 3];
      if (a == b) continue;
      edges_[edge_key(a, b)].push_back({t, k});
    }
  }
}

const std::vector<EdgeMap::Incidence>* EdgeMap::find(Index a, Index b) const {
  auto it = edges_.find(edge_key(a, b));
  return it == edges_.end() ? nullptr : &it->second;
}

std::vector<std::uint64_t> EdgeMap::sorted_keys() const {
  std::vector<std::uint64_t> keys;
  keys.reserve(edges_.size());
  for (const auto& kv : edges_) keys.push_back(kv.first);
  std::sort(keys.begin(), keys.end());
  return keys;
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

std::size_t corner_of(const Triangle& t, Index v) {
  for (std::size_t k = 0; k < 3; ++k) {
    if (t[k] == v) return k;
  }
  return 3;
}

// Returns flip flags; sets `orientable` and `consistent`.
std::vector<char> orientation_flips(const TriMesh& m, const EdgeMap& edges, bool& orientable, bool& consistent) {
  const std::size_t nt = m.triangles.size();
  std::vector<char> flip(nt, 0), seen(nt, 0);
  orientable = true;
  consistent = true;
  std::vector<Index> queue;
  for (Index seed = 0; seed < nt; ++seed) {
    if (seen[seed]) continue;
    seen[seed] = 1;
    queue.assign(1, seed);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Index t = queue[head];
      const auto& tri = m.triangles[t];
      for (std::uint8_t k = 0; k < 3; ++k) {
        const Index a = tri[k], b = tri[(k + 1) % 3];
        if (a == b) continue;
        const auto* inc = edges.find(a, b);
        if (inc->size() != 2) continue;
        for (const auto& other : *inc) {
          if (other.triangle == t) continue;
          const auto& o = m.triangles[other.triangle];
          // Same direction a->b in both triangles means one must flip.
          const bool same_dir = o[other.slot] == a;
          if (same_dir) consistent = false;
          const char want = static_cast<char>(flip[t] ^ (same_dir ? 1 : 0));
          if (!seen[other.triangle]) {
            seen[other.triangle] = 1;
            flip[other.triangle] = want;
            queue.push_back(other.triangle);
          } else if (flip[other.triangle] != want) {
            orientable = false;
          }
        }
      }
    }
  }
  return flip;
}

std::vector<std::vector<Index>> chain_boundary(const TriMesh& m, const EdgeMap& edges) {
  // Directed boundary edges as they appear in their triangle.
  std::map<Index, std::vector<Index>> nbrs;
  std::map<Index, Index> outgoing;
  for (const auto& [key, inc] : edges.raw()) {
    if (inc.size() != 1) continue;
    const auto& tri = m.triangles[inc[0].triangle];
    const Index a = tri[inc[0].slot], b = tri[(inc[0].slot + 1) % 3];
    nbrs[a].push_back(b);
    nbrs[b].push_back(a);
    outgoing[a] = b;
  }
  for (const auto& [v, ns] : nbrs) {
    if (ns.size() != 2) {
      throw TopologyError("boundary vertex " + std::to_string(v) + " has " + std::to_string(ns.size()) +
                          " boundary edges");
    }
  }
  std::vector<std::vector<Index>> loops;
  std::map<Index, bool> visited;
  for (const auto& [start, ns] : nbrs) {
    if (visited[start]) continue;
    std::vector<Index> loop{start};
    visited[start] = true;
    auto out = outgoing.find(start);
    Index prev = start;
    Index cur = out != outgoing.end() ? out->second : std::min(ns[0], ns[1]);
    while (cur != start) {
      if (visited[cur]) throw TopologyError("boundary edges do not form simple cycles");
      visited[cur] = true;
      loop.push_back(cur);
      const auto& cn = nbrs[cur];
      const Index next = cn[0] == prev ? cn[1] : cn[0];
      prev = cur;
      cur = next;
    }
    loops.push_back(std::move(loop));
  }
  return loops;
}

}  // namespace

MeshTopology analyze_topology(const TriMesh& m) {
  MeshTopology topo;
  const EdgeMap edges(m);
  topo.face_count = m.triangles.size();
  topo.edge_count = edges.edge_count();

  std::vector<char> referenced(m.vertices.size(), 0);
  for (Index t = 0; t < m.triangles.size(); ++t) {
    const auto& tri = m.triangles[t];
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) topo.degenerate_triangles.push_back(t);
    for (Index v : tri) {
      if (v >= m.vertices.size()) throw InvalidInput("triangle references missing vertex " + std::to_string(v));
      referenced[v] = 1;
    }
  }
  topo.vertex_count = static_cast<std::size_t>(std::count(referenced.begin(), referenced.end(), 1));
  topo.unreferenced_vertices = m.vertices.size() - topo.vertex_count;

  for (auto key : edges.sorted_keys()) {
    if (edges.raw().at(key).size() > 2) topo.non_manifold_edges.push_back(key);
  }

  // Fans: union corners of a vertex that share an interior edge.
  UnionFind corners(m.triangles.size() * 3);
  for (const auto& [key, inc] : edges.raw()) {
    if (inc.size() != 2) continue;
    const Index a = static_cast<Index>(key >> 32), b = static_cast<Index>(key & 0xffffffffu);
    for (Index v : {a, b}) {
      const std::size_t c0 = inc[0].triangle * 3 + corner_of(m.triangles[inc[0].triangle], v);
      const std::size_t c1 = inc[1].triangle * 3 + corner_of(m.triangles[inc[1].triangle], v);
      corners.unite(c0, c1);
    }
  }
  std::vector<std::size_t> fan_root(m.vertices.size(), ~std::size_t{0});
  std::vector<char> flagged(m.vertices.size(), 0);
  for (Index t = 0; t < m.triangles.size(); ++t) {
    for (std::size_t k = 0; k < 3; ++k) {
      const Index v = m.triangles[t][k];
      const std::size_t r = corners.find(t * 3 + k);
      if (fan_root[v] == ~std::size_t{0}) {
        fan_root[v] = r;
      } else if (fan_root[v] != r && !flagged[v]) {
        flagged[v] = 1;
      }
    }
  }
  for (Index v = 0; v < flagged.size(); ++v) {
    if (flagged[v]) topo.non_manifold_vertices.push_back(v);
  }

  triangle_components(m, &topo.components);
  bool orientable = false, consistent = false;
  if (topo.non_manifold_edges.empty()) {
    orientation_flips(m, edges, orientable, consistent);
  }
  topo.orientable = orientable;
  topo.consistently_oriented = consistent && orientable;

  if (topo.manifold()) {
    try {
      topo.boundary_loops = chain_boundary(m, edges);
    } catch (const TopologyError&) {
      topo.boundary_loops.clear();
    }
  }
  return topo;
}

std::vector<std::vector<Index>> boundary_loops(const TriMesh& m) {
  const EdgeMap edges(m);
  for (const auto& [key, inc] : edges.raw()) {
    if (inc.size() > 2) throw TopologyError("non-manifold edge in mesh");
  }
  return chain_boundary(m, edges);
}

void orient_consistently(TriMesh& m) {
  const EdgeMap edges(m);
  for (const auto& [key, inc] : edges.raw()) {
    if (inc.size() > 2) throw TopologyError("cannot orient a mesh with non-manifold edges");
  }
  bool orientable = false, consistent = false;
  const auto flip = orientation_flips(m, edges, orientable, consistent);
  if (!orientable) throw TopologyError("mesh is not orientable");
  for (std::size_t t = 0; t < flip.size(); ++t) {
    if (flip[t]) std::swap(m.triangles[t][1], m.triangles[t][2]);
  }
}

void remove_unreferenced_vertices(TriMesh& m) {
  constexpr Index kNone = ~Index{0};
  std::vector<Index> remap(m.vertices.size(), kNone);
  for (const auto& t : m.triangles) {
    for (Index v : t) remap[v] = 0;
  }
  std::vector<Vec3> kept;
  kept.reserve(m.vertices.size());
  for (Index v = 0; v < m.vertices.size(); ++v) {
    if (remap[v] == kNone) continue;
    remap[v] = static_cast<Index>(kept.size());
    kept.push_back(m.vertices[v]);
  }
  for (auto& t : m.triangles) {
    for (auto& v : t) v = remap[v];
  }
  m.vertices = std::move(kept);
}

std::vector<Index> triangle_components(const TriMesh& m, std::size_t* count) {
  const EdgeMap edges(m);
  UnionFind uf(m.triangles.size());
  for (const auto& [key, inc] : edges.raw()) {
    for (std::size_t i = 1; i < inc.size(); ++i) uf.unite(inc[0].triangle, inc[i].triangle);
  }
  std::vector<Index> comp(m.triangles.size());
  std::map<std::size_t, Index> ids;
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    auto [it, inserted] = ids.emplace(uf.find(t), static_cast<Index>(ids.size()));
    comp[t] = it->second;
  }
  if (count) *count = ids.size();
  return comp;
}

namespace {

long parse_obj_index(std::string_view token, std::size_t vertex_count, std::size_t line) {
  const auto slash = token.find('/');
  if (slash != std::string_view::npos) token = token.substr(0, slash);
  long idx = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), idx);
  if (ec != std::errc() || ptr != token.data() + token.size() || idx == 0) {
    throw ParseError("bad OBJ face index '" + std::string(token) + "' on line " + std::to_string(line), line);
  }
  const long resolved = idx > 0 ? idx - 1 : static_cast<long>(vertex_count) + idx;
  if (resolved < 0 || static_cast<std::size_t>(resolved) >= vertex_count) {
    throw ParseError("OBJ face index out of range on line " + std::to_string(line), line);
  }
  return resolved;
}

}  // namespace

TriMesh read_obj(std::istream& in) {
  TriMesh m;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag)) continue;
    if (tag == "v") {
      Vec3 p;
      if (!(ss >> p.x >> p.y >> p.z)) throw ParseError("bad OBJ vertex on line " + std::to_string(line_no), line_no);
      m.vertices.push_back(p);
    } else if (tag == "f") {
      std::vector<Index> poly;
      std::string tok;
      while (ss >> tok) poly.push_back(static_cast<Index>(parse_obj_index(tok, m.vertices.size(), line_no)));
      if (poly.size() < 3) throw ParseError("OBJ face with fewer than 3 vertices on line " + std::to_string(line_no), line_no);
      for (std::size_t k = 1; k + 1 < poly.size(); ++k) m.add_triangle(poly[0], poly[k], poly[k + 1]);
    }
  }
  return m;
}

TriMesh read_obj(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return read_obj(in);
}

void write_obj(std::ostream& out, const TriMesh& m) {
  char buf[32];
  auto put = [&](double d) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, d);
    out.write(buf, ptr - buf);
  };
  for (const auto& p : m.vertices) {
    out << "v ";
    put(p.x);
    out << ' ';
    put(p.y);
    out << ' ';
    put(p.z);
    out << '\n';
  }
  for (const auto& t : m.triangles) out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
}

void write_obj(const std::filesystem::path& path, const TriMesh& m) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_obj(out, m);
}

}  // namespace unknot
