#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "surfemb/embedding.hpp"
#include "surfemb/graph.hpp"

namespace surfemb {

class SearchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Limits for one top-level search call. Zero means unlimited.
struct SearchBudget {
  std::uint64_t max_nodes = 100'000'000;
  double time_limit_seconds = 60.0;
  int workers = 1;
  // Branching depth at which the tree is cut into subtrees for the workers.
  int split_depth = 5;

  // Overrides from SURFEMB_MAX_NODES, SURFEMB_TIME_LIMIT and SURFEMB_WORKERS.
  static SearchBudget from_env();
  static SearchBudget from_env(SearchBudget base);
  static SearchBudget unlimited();
};

enum class Decision { embeddable, not_embeddable, unknown };
std::string to_string(Decision d);

struct SearchOutcome {
  Decision decision = Decision::unknown;
  std::optional<RotationEmbedding> witness;
  std::uint64_t nodes = 0;
  // How a negative answer was obtained: "edge-count bound" or "exhausted search".
  std::string proof;
};

// Whether g has an embedding in s. For S_g this means an orientable cellular
// embedding of Euler genus <= 2g. For N_k it means a nonorientable cellular
// embedding of Euler genus <= k, or an orientable one of Euler genus <= k-1.
// Witnesses for N_k are nonorientable (an orientable one gets a twisted edge)
// unless the graph is a tree.
SearchOutcome embeds_on(const Graph& g, SurfaceSpec s, const SearchBudget& budget);

struct GenusResult {
  bool exact = false;
  int genus = 0;   // valid when exact
  int lower = 0;   // proven lower bound
  int upper = 0;   // proven upper bound
  std::optional<RotationEmbedding> witness;
  std::uint64_t nodes = 0;
};

GenusResult min_orientable_genus(const Graph& g, const SearchBudget& budget);
GenusResult min_nonorientable_genus(const Graph& g, const SearchBudget& budget);
// Minimum over both kinds, reported as Euler genus.
GenusResult min_euler_genus(const Graph& g, const SearchBudget& budget);

// Euler genus is additive over components: the sum of min_euler_genus over
// the components of g (witness left empty). Accepts disconnected graphs.
GenusResult min_euler_genus_by_components(const Graph& g, const SearchBudget& budget);

// Lower bound on Euler genus from |F| <= 2|E|/3.
int euler_genus_lower_bound(const Graph& g);

struct EnumerationResult {
  std::uint64_t visited = 0;
  bool complete = false;            // whole space explored
  bool stopped_by_visitor = false;
  std::uint64_t nodes = 0;
};

// Visits every embedding whose surface is exactly s, one per class under
// vertex switching and global reflection. Return false from the visitor to stop.
using EmbeddingVisitor = std::function<bool(const RotationEmbedding&)>;
EnumerationResult enumerate_embeddings(const Graph& g, SurfaceSpec s, const EmbeddingVisitor& visitor,
                                       const SearchBudget& budget);

enum class PredicateVerdict { holds, counterexample, unknown };
std::string to_string(PredicateVerdict v);

struct PredicateOutcome {
  PredicateVerdict verdict = PredicateVerdict::unknown;
  std::optional<RotationEmbedding> counterexample;
  std::uint64_t visited = 0;
};

PredicateOutcome all_embeddings_satisfy(const Graph& g, SurfaceSpec s,
                                        const std::function<bool(const RotationEmbedding&)>& predicate,
                                        const SearchBudget& budget);

}  // namespace surfemb
