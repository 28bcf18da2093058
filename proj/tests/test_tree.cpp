#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "unknot/error.hpp"
#include "unknot/tree.hpp"

using namespace unknot;

namespace {

oracle::EdgeList edge_list(const Multigraph& g) {
  oracle::EdgeList e;
  for (auto [a, b] : g.edges()) e.emplace_back(static_cast<int>(a), static_cast<int>(b));
  return e;
}

std::vector<VertexId> random_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<VertexId> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

std::vector<Tree> all_trees_up_to(int n) {
  std::vector<Tree> out;
  for (int k = 1; k <= n; ++k) {
    for (const auto& c : enumerate_free_trees(k)) out.push_back(parse_tree(c.code));
  }
  return out;
}

}  // namespace

TEST_CASE("parse_tree reads nested parentheses") {
  const Tree one = parse_tree("()");
  CHECK(one.vertex_count() == 1);
  CHECK(one.graph().edge_count() == 0);

  const Tree star = parse_tree("(()()())");
  CHECK(star.vertex_count() == 4);
  CHECK(star.graph().degrees()[0] == 3);

  const Tree path = parse_tree("((( ())))");
  CHECK(path.vertex_count() == 4);
  CHECK(trees_isomorphic(path, Tree::path(4)));
}

TEST_CASE("parse_tree reports syntax errors with a position") {
  CHECK_THROWS_AS(parse_tree(""), ParseError);
  CHECK_THROWS_AS(parse_tree("   "), ParseError);
  CHECK_THROWS_AS(parse_tree("(()"), ParseError);
  CHECK_THROWS_AS(parse_tree("()()"), ParseError);
  CHECK_THROWS_AS(parse_tree("(x)"), ParseError);
  try {
    parse_tree("(()x)");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 3);
  }
}

TEST_CASE("tree_to_text round trips through parse_tree") {
  std::mt19937_64 rng(7);
  for (const Tree& t : all_trees_up_to(7)) {
    for (VertexId r = 0; r < t.vertex_count(); ++r) {
      const Tree back = parse_tree(tree_to_text(t, r));
      CHECK(ahu_code(back) == ahu_code(t));
    }
  }
}

TEST_CASE("ahu_code basics") {
  CHECK(ahu_code(Tree::path(2)).code == "(())");
  CHECK(ahu_code(Tree::single_vertex()).code == "()");
  CHECK(ahu_code(Tree::star(4)) != ahu_code(Tree::path(4)));
  CHECK_FALSE(trees_isomorphic(Tree::star(4), Tree::path(4)));
}

TEST_CASE("ahu_code is invariant under relabelling") {
  std::mt19937_64 rng(11);
  for (const Tree& t : all_trees_up_to(7)) {
    for (int k = 0; k < 5; ++k) {
      const auto perm = random_permutation(t.vertex_count(), rng);
      const Tree u = t.relabelled(perm);
      REQUIRE(oracle::isomorphic_by_permutation(static_cast<int>(t.vertex_count()), edge_list(t.graph()),
                                                edge_list(u.graph())));
      CHECK(ahu_code(u) == ahu_code(t));
    }
  }
}

TEST_CASE("trees_isomorphic agrees with permutation search on labelled trees up to 6 vertices") {
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 6; ++n) {
    std::vector<Tree> sample;
    for (const auto& c : enumerate_free_trees(n)) {
      const Tree t = parse_tree(c.code);
      sample.push_back(t);
      sample.push_back(t.relabelled(random_permutation(t.vertex_count(), rng)));
    }
    for (const auto& a : sample) {
      for (const auto& b : sample) {
        CHECK(trees_isomorphic(a, b) ==
              oracle::isomorphic_by_permutation(n, edge_list(a.graph()), edge_list(b.graph())));
      }
    }
  }
}

TEST_CASE("trees_isomorphic is an equivalence relation") {
  std::mt19937_64 rng(5);
  std::vector<Tree> sample = all_trees_up_to(6);
  for (std::size_t i = 0, n = sample.size(); i < n; ++i) {
    sample.push_back(sample[i].relabelled(random_permutation(sample[i].vertex_count(), rng)));
  }
  for (const auto& a : sample) {
    CHECK(trees_isomorphic(a, a));
    for (const auto& b : sample) {
      CHECK(trees_isomorphic(a, b) == trees_isomorphic(b, a));
      if (!trees_isomorphic(a, b)) continue;
      for (const auto& c : sample) {
        if (trees_isomorphic(b, c)) CHECK(trees_isomorphic(a, c));
      }
    }
  }
}

TEST_CASE("is_tree") {
  CHECK(is_tree(Tree::star(4).graph()));
  CHECK_FALSE(is_tree(Multigraph(1, {{0, 0}})));
  CHECK_FALSE(is_tree(Multigraph(0, {})));
  CHECK_FALSE(is_tree(Multigraph(2, {{0, 1}, {0, 1}})));
  CHECK_FALSE(is_tree(Multigraph(3, {{0, 1}})));
  CHECK_FALSE(is_tree(Multigraph(3, {{0, 1}, {1, 2}, {2, 0}})));
  CHECK_THROWS_AS(Tree(Multigraph(1, {{0, 0}})), InvalidInput);
  CHECK_THROWS_AS(Multigraph(2, {{0, 2}}), InvalidInput);
}

TEST_CASE("multigraph isomorphism examples") {
  CHECK(multigraphs_isomorphic(Multigraph(1, {{0, 0}}), Multigraph(1, {{0, 0}})));
  CHECK_FALSE(multigraphs_isomorphic(Multigraph(2, {{0, 1}, {0, 1}}), Multigraph(2, {{0, 1}})));
  CHECK_FALSE(multigraphs_isomorphic(Multigraph(2, {{0, 1}, {1, 1}}), Multigraph(2, {{0, 1}, {0, 1}})));
}

TEST_CASE("multigraphs_isomorphic agrees with exhaustive bijection search") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 3000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const int m = static_cast<int>(rng() % 7);
    std::vector<Edge> e;
    for (int i = 0; i < m; ++i) e.emplace_back(rng() % n, rng() % n);
    const Multigraph a(n, e);
    Multigraph b;
    if (rng() % 2) {
      const auto perm = random_permutation(n, rng);
      std::vector<Edge> f;
      for (auto [u, v] : e) f.emplace_back(perm[v], perm[u]);
      std::shuffle(f.begin(), f.end(), rng);
      b = Multigraph(n, f);
    } else {
      std::vector<Edge> f;
      for (int i = 0; i < m; ++i) f.emplace_back(rng() % n, rng() % n);
      b = Multigraph(n, f);
    }
    CHECK(multigraphs_isomorphic(a, b) == oracle::multigraphs_isomorphic_brute(n, edge_list(a), edge_list(b)));
  }
}

TEST_CASE("multigraph operations ignore edge order") {
  const Multigraph a(3, {{0, 1}, {1, 2}, {2, 2}});
  const Multigraph b(3, {{2, 2}, {2, 1}, {1, 0}});
  CHECK(multigraphs_isomorphic(a, b));
  CHECK(a.degrees() == b.degrees());
  CHECK(a.self_loop_count() == 1);
  CHECK(a.degrees()[2] == 3);
}

TEST_CASE("to_dot numbers vertices in order") {
  const std::string dot = Multigraph(2, {{0, 1}}).to_dot();
  CHECK(dot.find("graph G {") != std::string::npos);
  CHECK(dot.find("0 -- 1") != std::string::npos);
}

TEST_CASE("enumerate_free_trees matches the Pruefer oracle") {
  for (int n = 1; n <= 8; ++n) {
    const auto codes = enumerate_free_trees(n);
    CHECK(static_cast<int>(codes.size()) == oracle::count_free_trees_pruefer(n));
    CHECK(std::is_sorted(codes.begin(), codes.end()));
    CHECK(std::adjacent_find(codes.begin(), codes.end()) == codes.end());
    for (const auto& c : codes) CHECK(parse_tree(c.code).vertex_count() == static_cast<std::size_t>(n));
  }
  CHECK(enumerate_free_trees(4).size() == 2);
  CHECK(enumerate_free_trees(7).size() == 11);
  CHECK_THROWS_AS(enumerate_free_trees(0), InvalidInput);
  CHECK_THROWS_AS(enumerate_free_trees(13), InvalidInput);
}

TEST_CASE("cayley_lower_bound is exact") {
  CHECK(cayley_lower_bound(3) == Rational(1, 2));
  CHECK(cayley_lower_bound(2) == Rational(1, 2));
  CHECK(cayley_lower_bound(1) == Rational(1));
  CHECK(cayley_lower_bound(7) == Rational(16807, 5040));
  for (int n = 1; n <= 8; ++n) {
    CHECK(cayley_lower_bound(n) <= Rational(static_cast<long>(enumerate_free_trees(n).size())));
  }
}

TEST_CASE("centres") {
  CHECK(Tree::path(4).centers().size() == 2);
  CHECK(Tree::path(5).centers() == std::vector<VertexId>{2});
  CHECK(Tree::star(5).centers() == std::vector<VertexId>{0});
}
