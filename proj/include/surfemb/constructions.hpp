#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "surfemb/certify.hpp"
#include "surfemb/embedding.hpp"
#include "surfemb/families.hpp"
#include "surfemb/graph.hpp"
#include "surfemb/search.hpp"

namespace surfemb {

class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A graph with an oriented cycle C: consecutive entries (cyclically) are
/// adjacent and all entries are distinct.
struct DistinguishedGraph {
  Graph graph;
  Walk cycle;
};

DistinguishedGraph make_distinguished(Graph g, Walk cycle);
// Same cycle, opposite orientation: (c0, c_{k-1}, ..., c1).
Walk reversed(const Walk& cycle);

/// Planar graph on V1 + V2 with induced boundary cycles t1 (on V1) and t2 (on
/// V2) and minimum degree 3. `planar` is a plane embedding in which reversed(t1)
/// and t2 are face walks.
struct CylindricalGraph {
  Graph graph;
  Walk t1;
  Walk t2;
  RotationEmbedding planar;
};

// Checks the cylindrical conditions (planarity through the given embedding).
void validate_cylindrical(const CylindricalGraph& t);

// a_i = i, b_i = k + i; cross edges a_i b_i and a_i b_{i-1}.
CylindricalGraph make_Tk(int k);

struct JoinedGraph {
  Graph graph;
  int h_offset = 0;  // vertex v of H becomes h_offset + v
};

// G and H side by side (H shifted by |V(G)|) plus T's cross edges, with t1
// identified with gc.cycle and t2 with hd.cycle position by position.
JoinedGraph t_join(const DistinguishedGraph& gc, const DistinguishedGraph& hd, const CylindricalGraph& t);

// Embedding of t_join(G^C, H^D, T) from orientable embeddings with all
// signatures +1 in which C is a face walk of embG and reversed(D) is a face
// walk of embH. The Euler genus of the result is the sum of the two.
RotationEmbedding t_join_embedding(const RotationEmbedding& embG, const Walk& c, const RotationEmbedding& embH,
                                   const Walk& d, const CylindricalGraph& t);

// x_i = i and y_i = n + 1 + i for i = 0..n.
Graph ladder(int n);

/// Plane graph with its oriented face walks and a list of marked 4-faces.
struct MarkedPlane {
  Graph graph;
  std::vector<Walk> faces;
  std::vector<Walk> quads;  // quads[i-1] is X_i
};

// Ladder plus dominating vertex h = 2n + 2. X_i = (x_{i-1}, y_{i-1}, y_i, x_i).
MarkedPlane hanging_ladder(int n);

// H_n with the face X_n replaced by the interior of p, identifying
// x_{n-1}, x_n, y_n, y_{n-1} with p's outer vertices 0, 1, 2, 3. Vertex
// 4 + j of p becomes 2n + 3 + j. Marks X_1..X_{n-1}.
MarkedPlane hn_of_p(int n, const Plate& p);

RotationEmbedding plane_embedding(const MarkedPlane& m);

struct Fixture {
  DistinguishedGraph graph;
  RotationEmbedding embedding;  // reversed(graph.cycle) is a face walk
  bool from_cache = false;
};

// K8 on S2 with C4 = (0,1,2,3) facial; K7 - {0,1} on S1 with Y = (0,2,1,3)
// facial. Cached as certificates under cache_dir when given.
Fixture k8_c4_fixture(const SearchBudget& budget, const std::optional<std::filesystem::path>& cache_dir = {});
Fixture k7e_y_fixture(const SearchBudget& budget, const std::optional<std::filesystem::path>& cache_dir = {});

struct FgResult {
  Graph graph;
  RotationEmbedding embedding;
  EmbeddingCertificate certificate;
};

// F_g(P): H_{ceil(g/2)+1}(P) with K8 joined at X_1..X_{floor(g/2)} and, for
// odd g, K7 - e joined at X_{ceil(g/2)}, all through T_4.
FgResult fg_embedding(int g, const Plate& p, const Fixture& k8, const Fixture& k7e);
FgResult fg_embedding(int g, const Plate& p, const SearchBudget& budget,
                      const std::optional<std::filesystem::path>& cache_dir = {});
// The graph alone, from K8 with C4 = (0,1,2,3) and K7 - {0,1} with Y = (0,2,1,3).
Graph fg(int g, const Plate& p);

}  // namespace surfemb
