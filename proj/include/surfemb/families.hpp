#pragma once

#include <span>
#include <string>
#include <vector>

#include "surfemb/graph.hpp"

namespace surfemb {

using Walk = std::vector<Vertex>;

Graph complete_graph(int n);

enum class EdgePattern { single_edge, cycle5, matching2, star2, star4 };

std::string to_string(EdgePattern p);
EdgePattern parse_edge_pattern(const std::string& name);

// g minus the witness edges. The witness must be present in g and have the
// shape of the named pattern (K2, C5, 2K2, K_{1,2}, K_{1,4}).
Graph remove_edge_structure(const Graph& g, EdgePattern pattern, std::span<const Edge> witness);

// A planar graph given together with the oriented boundary walks of its
// plane embedding. Faces are oriented consistently: every edge is traversed
// once in each direction. outer is one of the faces.
struct Plate {
  Graph graph;
  std::vector<Walk> faces;
  Walk outer;
};

// Outer 4-cycle 0-1-2-3, hub 4, then `depth` vertices, each stacked into the
// lexicographically least interior triangle (by sorted vertex triple). Vertex
// 5+i is the i-th stacked vertex.
Graph quad_plate(int depth);
Plate quad_plate_faces(int depth);

// A 3-connected plane graph with outer 4-face 0-1-2-3 whose interior has
// exactly `gap` quadrilateral faces and otherwise triangles, so it is `gap`
// edges short of a plane triangulation (counting the outer quad as given).
// Built from a stacked plate by deleting interior edges greedily.
Plate gapped_plate(int gap);

}  // namespace surfemb
