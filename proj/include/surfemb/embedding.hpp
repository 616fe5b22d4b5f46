#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "surfemb/families.hpp"
#include "surfemb/graph.hpp"

namespace surfemb {

class EmbeddingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Closed surface: the orientable S_g or the nonorientable N_k.
struct SurfaceSpec {
  bool orientable = true;
  int genus = 0;

  int euler_genus() const { return orientable ? 2 * genus : genus; }
  std::string name() const;  // "S1", "N2"
  static SurfaceSpec parse(const std::string& name);
  static SurfaceSpec sphere() { return {true, 0}; }

  bool operator==(const SurfaceSpec&) const = default;
};

/// Graph with a cyclic rotation of neighbours at each vertex and a +1/-1
/// signature on each edge (indexed by edge id).
class RotationEmbedding {
 public:
  RotationEmbedding() = default;
  RotationEmbedding(Graph graph, std::vector<std::vector<Vertex>> rotation, std::vector<int> signature);
  // All signatures +1.
  RotationEmbedding(Graph graph, std::vector<std::vector<Vertex>> rotation);

  const Graph& graph() const { return graph_; }
  const std::vector<std::vector<Vertex>>& rotation() const { return rotation_; }
  const std::vector<Vertex>& rotation(Vertex v) const { return rotation_[v]; }
  const std::vector<int>& signature() const { return signature_; }
  int sign(Vertex u, Vertex v) const { return signature_[graph_.edge_id(u, v)]; }
  std::vector<Edge> negative_edges() const;

  // Position of neighbour w in rotation(v).
  int position(Vertex v, Vertex w) const;
  // Neighbour after w at v when walking in local direction dir (+1 / -1).
  Vertex step(Vertex v, Vertex w, int dir) const;

  // Every rotation reversed: the mirror image.
  RotationEmbedding mirrored() const;
  // Vertex switching at v: reverse its rotation, negate its incident signatures.
  RotationEmbedding switched(Vertex v) const;
  // Switch vertices so that a BFS spanning tree from vertex 0 carries +1, and
  // rotate each rotation to start at its smallest neighbour.
  RotationEmbedding normalized() const;
  // Vertex v becomes perm[v].
  RotationEmbedding relabeled(std::span<const Vertex> perm) const;

  bool operator==(const RotationEmbedding& o) const {
    return graph_ == o.graph_ && rotation_ == o.rotation_ && signature_ == o.signature_;
  }

 private:
  void validate() const;
  void build_positions();

  Graph graph_;
  std::vector<std::vector<Vertex>> rotation_;
  std::vector<int> signature_;
  std::vector<int> pos_;  // n*n, position of w in rotation(v)
};

/// One step of a face walk: leave `from` towards `to` with local orientation dir.
struct FaceStep {
  Vertex from;
  Vertex to;
  int dir;

  bool operator==(const FaceStep&) const = default;
};

struct FaceWalk {
  std::vector<FaceStep> steps;

  std::size_t size() const { return steps.size(); }
  Walk vertices() const;
};

// Faces in a fixed order: edge sides are scanned by edge id, side 0 before 1.
// With all signatures +1 every walk follows the rotations (succ at each corner).
std::vector<FaceWalk> trace_faces(const RotationEmbedding& emb);

// Rejects graphs with more than one component.
int euler_genus(const RotationEmbedding& emb);
bool is_orientable(const RotationEmbedding& emb);
SurfaceSpec surface_of(const RotationEmbedding& emb);

std::map<int, int> face_size_multiset(const RotationEmbedding& emb);
int triangulation_edge_target(int n, int euler_genus);
int quad_faces_inducing_K4(const RotationEmbedding& emb);
bool induces_complete(const Graph& g, std::span<const Vertex> vertices);

bool consecutive_vertices_distinct(const RotationEmbedding& emb, const FaceWalk& face);

// True when `cycle` (cyclically rotated, same direction) is the vertex
// sequence of some face walk.
bool is_facial_walk(const RotationEmbedding& emb, std::span<const Vertex> cycle);
// Same, allowing either direction.
bool is_facial_cycle(const RotationEmbedding& emb, std::span<const Vertex> cycle);

// Orientable embedding whose faces are the given oriented walks; each edge
// must be traversed once in each direction. Face p -> v -> q places q right
// after p in the rotation at v.
RotationEmbedding embedding_from_faces(const Graph& g, const std::vector<Walk>& faces);

// Remove uv from its position and reinsert it across face `face_index` (an
// index into trace_faces(emb)) at the corners `corner_u` and `corner_v`
// (step indices whose `from` vertex is u resp. v). The target face must not
// contain uv, and the two sides of uv must lie on different faces.
RotationEmbedding flip_edge(const RotationEmbedding& emb, Edge uv, std::size_t face_index, std::size_t corner_u,
                            std::size_t corner_v);

// Returns an embedding of the same graph on the same surface with a 4-face,
// following the flip argument: in the first face of size >= 5 find four
// consecutive distinct vertices u,v,w,x and flip ux into it. When ux borders
// that face itself, ux is deleted and re-inserted in the merged face so that
// it cuts off uvwx, provided the surface is unchanged.
RotationEmbedding ensure_4face(const RotationEmbedding& emb);

}  // namespace surfemb
