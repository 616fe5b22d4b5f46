#pragma once

#include <string>
#include <vector>

#include "surfemb/graph.hpp"

namespace surfemb {

inline constexpr int kDefaultCanonicalBound = 10;

// Permutation perm with perm[v] = canonical position of v. Isomorphic graphs
// give identical relabeled graphs. Partition refinement with individualisation
// backtracking; twins in a target cell are explored once.
std::vector<Vertex> canonical_labeling(const Graph& g, int max_vertices = kDefaultCanonicalBound);

// graph6 string of the canonically relabeled graph.
std::string canonical_form(const Graph& g, int max_vertices = kDefaultCanonicalBound);

Graph canonical_graph(const Graph& g, int max_vertices = kDefaultCanonicalBound);

}  // namespace surfemb
