#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace surfemb {

using Vertex = int;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  auto operator<=>(const Edge&) const = default;
};

// Normalised so that u < v.
Edge make_edge(Vertex a, Vertex b);

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Simple undirected graph on the dense vertex ids 0..n-1.
///
/// Edges are kept sorted; an edge's position in edges() is its edge id and is
/// used by embeddings and certificates to index per-edge data.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  Graph(int n, std::vector<Edge> edges);

  int order() const { return n_; }
  std::size_t size() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  bool adjacent(Vertex a, Vertex b) const { return edge_id(a, b) >= 0; }
  // -1 when the pair is not an edge.
  int edge_id(Vertex a, Vertex b) const;
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
  int max_degree() const;

  Graph with_edge(Edge e) const;
  Graph with_edges(std::span<const Edge> extra) const;
  Graph without_edges(std::span<const Edge> removed) const;
  // Vertex v is renamed to perm[v].
  Graph relabeled(std::span<const Vertex> perm) const;
  Graph induced(std::span<const Vertex> vertices) const;

  bool connected() const;
  bool is_complete() const { return 2 * edges_.size() == static_cast<std::size_t>(n_) * (n_ - 1); }

  bool operator==(const Graph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

 private:
  void build_index();

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<int> index_;  // n*n edge ids, -1 for non-edges
};

// Every unordered pair that is not an edge, in lexicographic order.
std::vector<Edge> non_edges(const Graph& g);

// Brute force: true when removing any set of fewer than k vertices leaves a
// connected graph with at least two vertices. Intended for small graphs.
bool is_k_connected(const Graph& g, int k);

std::vector<std::vector<Vertex>> connected_components(const Graph& g);

}  // namespace surfemb
