#include "unknot/tree.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "unknot/error.hpp"

namespace unknot {

Multigraph::Multigraph(std::size_t vertex_count, std::vector<Edge> edges,
                       std::optional<std::vector<std::string>> labels)
    : vertex_count_(vertex_count), edges_(std::move(edges)), labels_(std::move(labels)) {
  for (const auto& [u, v] : edges_) {
    if (u >= vertex_count_ || v >= vertex_count_) {
      throw InvalidInput("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                         ") has an endpoint outside 0.." + std::to_string(vertex_count_));
    }
  }
  if (labels_ && labels_->size() != vertex_count_) {
    throw InvalidInput("vertex label count does not match vertex count");
  }
}

std::vector<std::size_t> Multigraph::degrees() const {
  std::vector<std::size_t> deg(vertex_count_, 0);
  for (const auto& [u, v] : edges_) {
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

std::size_t Multigraph::self_loop_count() const {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [](const Edge& e) { return e.first == e.second; }));
}

std::string Multigraph::to_dot(std::string_view name) const {
  std::ostringstream out;
  out << "graph " << name << " {\n";
  for (std::size_t v = 0; v < vertex_count_; ++v) {
    out << "  " << v;
    if (labels_) out << " [label=\"" << (*labels_)[v] << "\"]";
    out << ";\n";
  }
  for (const auto& [u, v] : edges_) out << "  " << u << " -- " << v << ";\n";
  out << "}\n";
  return out.str();
}

bool is_tree(const Multigraph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0 || g.edge_count() != n - 1) return false;
  // n-1 edges and connected without self-loops or duplicates is a tree;
  // union-find catches both cycles and parallel edges.
  std::vector<VertexId> parent(n);
  std::iota(parent.begin(), parent.end(), VertexId{0});
  std::function<VertexId(VertexId)> find = [&](VertexId x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& [u, v] : g.edges()) {
    const VertexId ru = find(u), rv = find(v);
    if (ru == rv) return false;
    parent[ru] = rv;
  }
  return true;
}

Tree::Tree(Multigraph g) : graph_(std::move(g)) {
  if (!is_tree(graph_)) throw InvalidInput("graph is not a tree");
  adjacency_.resize(graph_.vertex_count());
  for (const auto& [u, v] : graph_.edges()) {
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

Tree Tree::single_vertex() { return Tree(Multigraph(1, {})); }

Tree Tree::path(std::size_t n) {
  if (n == 0) throw InvalidInput("path needs at least one vertex");
  std::vector<Edge> edges;
  for (VertexId i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Tree(Multigraph(n, std::move(edges)));
}

Tree Tree::star(std::size_t n) {
  if (n == 0) throw InvalidInput("star needs at least one vertex");
  std::vector<Edge> edges;
  for (VertexId i = 1; i < n; ++i) edges.emplace_back(0, i);
  return Tree(Multigraph(n, std::move(edges)));
}

std::vector<VertexId> Tree::centers() const {
  const std::size_t n = vertex_count();
  if (n <= 2) {
    std::vector<VertexId> all(n);
    std::iota(all.begin(), all.end(), VertexId{0});
    return all;
  }
  std::vector<std::size_t> deg(n);
  std::vector<VertexId> layer;
  for (VertexId v = 0; v < n; ++v) {
    deg[v] = adjacency_[v].size();
    if (deg[v] == 1) layer.push_back(v);
  }
  std::size_t remaining = n;
  while (remaining > 2) {
    remaining -= layer.size();
    std::vector<VertexId> next;
    for (VertexId leaf : layer) {
      deg[leaf] = 0;
      for (VertexId u : adjacency_[leaf]) {
        if (deg[u] > 0 && --deg[u] == 1) next.push_back(u);
      }
    }
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

Tree Tree::relabelled(const std::vector<VertexId>& perm) const {
  if (perm.size() != vertex_count()) throw InvalidInput("permutation size mismatch");
  std::vector<Edge> edges;
  edges.reserve(graph_.edge_count());
  for (const auto& [u, v] : graph_.edges()) edges.emplace_back(perm.at(u), perm.at(v));
  return Tree(Multigraph(vertex_count(), std::move(edges)));
}

Tree parse_tree(std::string_view text) {
  std::vector<Edge> edges;
  std::vector<VertexId> stack;
  VertexId next_id = 0;
  bool closed_root = false;
  for (std::size_t pos = 0; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (closed_root) throw ParseError("unexpected text after the root group", pos);
    if (c == '(') {
      const VertexId id = next_id++;
      if (!stack.empty()) edges.emplace_back(stack.back(), id);
      stack.push_back(id);
    } else if (c == ')') {
      if (stack.empty()) throw ParseError("unbalanced ')'", pos);
      stack.pop_back();
      if (stack.empty()) closed_root = true;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", pos);
    }
  }
  if (next_id == 0) throw ParseError("empty tree text", text.size());
  if (!stack.empty()) throw ParseError("missing ')'", text.size());
  return Tree(Multigraph(next_id, std::move(edges)));
}

namespace {

// Parent pointers and a BFS order from root.
void bfs_order(const Tree& t, VertexId root, std::vector<VertexId>& order, std::vector<VertexId>& parent) {
  const std::size_t n = t.vertex_count();
  constexpr VertexId kNone = ~VertexId{0};
  parent.assign(n, kNone);
  order.clear();
  order.reserve(n);
  order.push_back(root);
  parent[root] = root;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const VertexId v = order[head];
    for (VertexId u : t.adjacency()[v]) {
      if (parent[u] == kNone) {
        parent[u] = v;
        order.push_back(u);
      }
    }
  }
}

}  // namespace

std::string rooted_code(const Tree& t, VertexId root) {
  if (root >= t.vertex_count()) throw InvalidInput("root vertex out of range");
  std::vector<VertexId> order, parent;
  bfs_order(t, root, order, parent);
  std::vector<std::vector<std::string>> child_codes(t.vertex_count());
  std::vector<std::string> code(t.vertex_count());
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId v = *it;
    auto& kids = child_codes[v];
    std::sort(kids.begin(), kids.end());
    std::string s = "(";
    for (auto& k : kids) s += k;
    s += ')';
    kids.clear();
    if (v != root) {
      child_codes[parent[v]].push_back(std::move(s));
    } else {
      code[v] = std::move(s);
    }
  }
  return code[root];
}

std::string tree_to_text(const Tree& t, VertexId root) {
  if (root >= t.vertex_count()) throw InvalidInput("root vertex out of range");
  std::vector<VertexId> order, parent;
  bfs_order(t, root, order, parent);
  std::vector<std::string> text(t.vertex_count());
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId v = *it;
    std::string s = "(";
    for (VertexId u : t.adjacency()[v]) {
      if (u != root && parent[u] == v) s += text[u];
    }
    s += ')';
    text[v] = std::move(s);
  }
  return text[root];
}

CanonicalCode ahu_code(const Tree& t) {
  const auto c = t.centers();
  std::string best = rooted_code(t, c.front());
  if (c.size() == 2) best = std::min(best, rooted_code(t, c.back()));
  return {best};
}

bool trees_isomorphic(const Tree& a, const Tree& b) {
  if (a.vertex_count() != b.vertex_count()) return false;
  return ahu_code(a) == ahu_code(b);
}

namespace {

using Counts = std::vector<std::vector<std::uint32_t>>;

Counts multiplicity_matrix(const Multigraph& g) {
  Counts m(g.vertex_count(), std::vector<std::uint32_t>(g.vertex_count(), 0));
  for (const auto& [u, v] : g.edges()) {
    ++m[u][v];
    if (u != v) ++m[v][u];
  }
  return m;
}

// Colour refinement run jointly on both graphs so colour ids are comparable.
// Returns false as soon as the colour histograms differ.
bool refine_jointly(const Counts& a, const Counts& b, std::vector<int>& ca, std::vector<int>& cb) {
  const std::size_t n = a.size();
  ca.assign(n, 0);
  cb.assign(n, 0);
  std::size_t classes = 1;
  while (true) {
    // (own colour, self-loops, sorted (neighbour colour, multiplicity) -> count)
    using Signature = std::tuple<int, std::uint32_t, std::map<std::pair<int, std::uint32_t>, std::uint32_t>>;
    auto signature = [&](const Counts& m, const std::vector<int>& col, std::size_t v) {
      Signature s{col[v], m[v][v], {}};
      for (std::size_t u = 0; u < n; ++u) {
        if (u != v && m[v][u] > 0) ++std::get<2>(s)[{col[u], m[v][u]}];
      }
      return s;
    };
    std::map<Signature, int> ids;
    std::vector<Signature> sa(n), sb(n);
    for (std::size_t v = 0; v < n; ++v) {
      sa[v] = signature(a, ca, v);
      sb[v] = signature(b, cb, v);
      ids.emplace(sa[v], 0);
      ids.emplace(sb[v], 0);
    }
    int next = 0;
    for (auto& kv : ids) kv.second = next++;
    std::vector<int> hist_a(ids.size(), 0), hist_b(ids.size(), 0);
    for (std::size_t v = 0; v < n; ++v) {
      ca[v] = ids[sa[v]];
      cb[v] = ids[sb[v]];
      ++hist_a[ca[v]];
      ++hist_b[cb[v]];
    }
    if (hist_a != hist_b) return false;
    if (ids.size() == classes) return true;
    classes = ids.size();
  }
}

}  // namespace

bool multigraphs_isomorphic(const Multigraph& a, const Multigraph& b) {
  const std::size_t n = a.vertex_count();
  if (n != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  if (n == 0) return true;
  auto da = a.degrees(), db = b.degrees();
  std::sort(da.begin(), da.end());
  std::sort(db.begin(), db.end());
  if (da != db) return false;

  const Counts ma = multiplicity_matrix(a), mb = multiplicity_matrix(b);
  std::vector<int> ca, cb;
  if (!refine_jointly(ma, mb, ca, cb)) return false;

  // Map vertices of `a` in order of increasing class size, then index.
  std::map<int, std::size_t> class_size;
  for (int c : ca) ++class_size[c];
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return class_size[ca[x]] < class_size[ca[y]]; });

  constexpr std::size_t kUnmapped = ~std::size_t{0};
  std::vector<std::size_t> map_ab(n, kUnmapped);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> extend = [&](std::size_t depth) -> bool {
    if (depth == n) return true;
    const std::size_t v = order[depth];
    for (std::size_t w = 0; w < n; ++w) {
      if (used[w] || cb[w] != ca[v] || mb[w][w] != ma[v][v]) continue;
      bool ok = true;
      for (std::size_t d = 0; d < depth && ok; ++d) {
        const std::size_t u = order[d];
        ok = ma[v][u] == mb[w][map_ab[u]];
      }
      if (!ok) continue;
      map_ab[v] = w;
      used[w] = true;
      if (extend(depth + 1)) return true;
      used[w] = false;
      map_ab[v] = kUnmapped;
    }
    return false;
  };
  return extend(0);
}

std::vector<CanonicalCode> enumerate_free_trees(int n) {
  if (n < 1 || n > 12) throw InvalidInput("enumerate_free_trees: n must be in 1..12");
  // Every tree on k+1 vertices is a tree on k vertices plus one leaf, so
  // growing each class by a leaf in every position and canonicalising
  // reaches every class exactly once after deduplication.
  std::set<std::string> current{"()"};
  for (int k = 1; k < n; ++k) {
    std::set<std::string> grown;
    for (const auto& code : current) {
      const Tree t = parse_tree(code);
      const auto size = static_cast<VertexId>(t.vertex_count());
      for (VertexId v = 0; v < size; ++v) {
        std::vector<Edge> edges = t.graph().edges();
        edges.emplace_back(v, size);
        grown.insert(ahu_code(Tree(Multigraph(size + 1, std::move(edges)))).code);
      }
    }
    current = std::move(grown);
  }
  std::vector<CanonicalCode> out;
  out.reserve(current.size());
  for (const auto& c : current) out.push_back({c});
  return out;
}

Rational cayley_lower_bound(int n) {
  if (n < 1) throw InvalidInput("cayley_lower_bound: n must be positive");
  using boost::multiprecision::cpp_int;
  cpp_int factorial = 1;
  for (int i = 2; i <= n; ++i) factorial *= i;
  if (n == 1) return Rational(cpp_int(1), factorial);  // 1^(-1) = 1
  cpp_int labelled = boost::multiprecision::pow(cpp_int(n), static_cast<unsigned>(n - 2));
  return Rational(labelled, factorial);
}

}  // namespace unknot
