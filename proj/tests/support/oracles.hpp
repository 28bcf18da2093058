#pragma once

// Slow reference implementations used only by the tests. None of them call
// the library algorithms they are checking; they share only plain data types.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "unknot/arrangement.hpp"
#include "unknot/mesh.hpp"
#include "unknot/tree.hpp"

namespace oracle {

using EdgeList = std::vector<std::pair<int, int>>;

// Labelled tree on n vertices decoded from a Pruefer sequence of length n - 2.
EdgeList pruefer_decode(const std::vector<int>& seq, int n);

// Isomorphism by trying vertex bijections, pruned only by degree.
bool isomorphic_by_permutation(int n, const EdgeList& a, const EdgeList& b);

// Multigraph isomorphism by trying all n! bijections and comparing sorted
// edge multisets.
bool multigraphs_isomorphic_brute(int n, const EdgeList& a, const EdgeList& b);

// Number of isomorphism classes among all n^(n-2) labelled trees.
int count_free_trees_pruefer(int n);

// True when some pair of triangles that share no vertex comes within eps.
// Checks all pairs.
bool all_pairs_self_intersect(const unknot::TriMesh& m, double eps);

// A closed curve on the unit sphere: points at angular distance
// radius * (1 + wobble * sin(k * phi + phase)) from `center`.
struct WobblyLoop {
  unknot::Vec3 center;
  double radius = 0.5;
  double wobble = 0.0;
  int k = 3;
  double phase = 0.0;

  double radius_at(double phi) const;
  double max_radius() const { return radius * (1 + wobble); }
  double min_radius() const { return radius * (1 - wobble); }
  bool contains(const unknot::Vec3& p) const;
  unknot::SphericalLoop polyline(int samples) const;
};

// Up to `count` loops, pairwise disjoint with a clear gap of at least `gap`.
std::vector<WobblyLoop> random_disjoint_loops(std::mt19937_64& rng, int count, double gap);

// Region adjacency graph of the loops computed by labelling the triangles of
// a fine icosphere with the set of loops containing them and flood filling.
unknot::Multigraph flood_fill_graph(const std::vector<WobblyLoop>& loops, int subdivisions);

}  // namespace oracle
