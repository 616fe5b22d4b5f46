#pragma once

#include <optional>
#include <string>
#include <vector>

#include "surfemb/embedding.hpp"
#include "surfemb/graph.hpp"
#include "surfemb/search.hpp"

namespace surfemb {

class MaximalityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Verdict { yes, no, unknown };
std::string to_string(Verdict v);

// Outcome of embedding g+e for one non-edge e.
struct BlockingEdge {
  Edge edge;
  SearchOutcome outcome;
};

struct MaximalityResult {
  Verdict verdict = Verdict::unknown;
  // Embedding of g itself on the surface.
  std::optional<RotationEmbedding> witness;
  // Set when verdict is no: an edge that can be added, with an embedding of g+e.
  std::optional<Edge> addable;
  std::optional<RotationEmbedding> addable_witness;
  // Every non-edge examined, in lexicographic order.
  std::vector<BlockingEdge> blocking;
  std::uint64_t nodes = 0;
};

// Throws MaximalityError when g is proven not to embed on s; an undecided
// embedding of g yields an unknown verdict.
MaximalityResult is_edge_maximal(const Graph& g, SurfaceSpec s, const SearchBudget& budget);

// 3(n - 2 + eg(s)) - |E|; negative values mean g cannot embed on s.
int triangulation_deficit(const Graph& g, SurfaceSpec s);

struct ImpurityReport {
  Graph graph;
  SurfaceSpec surface;
  bool edge_maximal = false;
  bool complete = false;
  bool triangulates = false;
  int deficit = 0;
  std::optional<int> impurity_k;
  std::optional<RotationEmbedding> witness;
  std::vector<BlockingEdge> blocking;
};

struct EulerImpurity {
  Verdict verdict = Verdict::unknown;
  std::string reason;
  ImpurityReport report;
};

// Euler impure: edge-maximal, not complete, and no embedding on s is a
// triangulation.
EulerImpurity is_euler_impure(const Graph& g, SurfaceSpec s, const SearchBudget& budget);

struct ImpurityResult {
  int k = 0;
  bool exact = false;  // false when some candidate search ran out of budget
  std::optional<RotationEmbedding> denser_witness;
};

// Largest |E(H)| - |E(g)| over graphs H on V(g) that embed on s. Only for
// graphs on at most 9 vertices.
ImpurityResult impurity(const Graph& g, SurfaceSpec s, const SearchBudget& budget);

// All connected graphs on n vertices with exactly m edges, one per
// isomorphism class, in canonical form order.
std::vector<Graph> connected_graphs(int n, int m);

struct CensusEntry {
  std::string graph6;  // canonical
  Graph graph;
  int deficit = 0;
  RotationEmbedding witness;
};

struct CensusResult {
  std::vector<CensusEntry> impure;
  bool complete = true;  // false when some search ended as unknown
  std::vector<std::string> undecided;  // canonical graph6 of graphs left unknown
  std::size_t graphs = 0;
  std::size_t searches = 0;
};

// Euler impure graphs on s with at most n_max (<= 8) vertices. The budget
// applies to each individual search.
CensusResult census_euler_impure(int n_max, SurfaceSpec s, const SearchBudget& budget);

}  // namespace surfemb
