#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace unknot {

using VertexId = std::uint32_t;
using Edge = std::pair<VertexId, VertexId>;

// Finite undirected graph; self-loops and parallel edges are allowed.
// Edge order is irrelevant to every operation.
class Multigraph {
 public:
  Multigraph() = default;
  // Throws InvalidInput if an endpoint is out of range or the label count
  // does not match vertex_count.
  Multigraph(std::size_t vertex_count, std::vector<Edge> edges,
             std::optional<std::vector<std::string>> labels = std::nullopt);

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::optional<std::vector<std::string>>& labels() const noexcept { return labels_; }

  // Degree counts a self-loop twice.
  std::vector<std::size_t> degrees() const;
  std::size_t self_loop_count() const;

  // Undirected DOT with vertices numbered 0..n-1 in index order.
  std::string to_dot(std::string_view name = "G") const;

 private:
  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::optional<std::vector<std::string>> labels_;
};

bool is_tree(const Multigraph& g);

// A Multigraph known to be connected, acyclic, loop-free and simple.
class Tree {
 public:
  // Throws InvalidInput unless is_tree(g).
  explicit Tree(Multigraph g);
  static Tree single_vertex();
  static Tree path(std::size_t n);
  static Tree star(std::size_t n);

  std::size_t vertex_count() const noexcept { return graph_.vertex_count(); }
  const Multigraph& graph() const noexcept { return graph_; }
  const std::vector<std::vector<VertexId>>& adjacency() const noexcept { return adjacency_; }

  // One centre, or two adjacent centres for a bicentral tree (ascending).
  std::vector<VertexId> centers() const;
  // Same shape with vertex i renamed to perm[i].
  Tree relabelled(const std::vector<VertexId>& perm) const;

 private:
  Multigraph graph_;
  std::vector<std::vector<VertexId>> adjacency_;
};

// Balanced-parenthesis string; equal codes iff the unrooted trees are isomorphic.
struct CanonicalCode {
  std::string code;
  friend auto operator<=>(const CanonicalCode&, const CanonicalCode&) = default;
};

// Nested-parentheses text: tree := '(' tree* ')', whitespace ignored.
// The outermost group is vertex 0; further vertices are numbered in preorder.
Tree parse_tree(std::string_view text);

// Writes the tree rooted at `root` in the same format parse_tree reads.
std::string tree_to_text(const Tree& t, VertexId root = 0);

// AHU code of the tree rooted at `root`, children sorted lexicographically.
std::string rooted_code(const Tree& t, VertexId root);
CanonicalCode ahu_code(const Tree& t);
bool trees_isomorphic(const Tree& a, const Tree& b);

// Exact test: colour refinement followed by backtracking over the classes.
// Vertex labels are ignored. Intended for graphs up to about 64 vertices.
bool multigraphs_isomorphic(const Multigraph& a, const Multigraph& b);

// All isomorphism classes of trees on n vertices (1 <= n <= 12), sorted by code.
std::vector<CanonicalCode> enumerate_free_trees(int n);

using Rational = boost::multiprecision::cpp_rational;

// n^(n-2) / n!, exactly.
Rational cayley_lower_bound(int n);

}  // namespace unknot
