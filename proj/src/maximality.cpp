#include "surfemb/maximality.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <thread>

#include "surfemb/canonical.hpp"
#include "surfemb/graph_io.hpp"

namespace surfemb {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::unknown: return "unknown";
  }
  return "?";
}

int triangulation_deficit(const Graph& g, SurfaceSpec s) {
  return triangulation_edge_target(g.order(), s.euler_genus()) - static_cast<int>(g.size());
}

MaximalityResult is_edge_maximal(const Graph& g, SurfaceSpec s, const SearchBudget& budget) {
  MaximalityResult r;
  SearchOutcome self = embeds_on(g, s, budget);
  r.nodes += self.nodes;
  if (self.decision == Decision::not_embeddable)
    throw MaximalityError("graph does not embed on " + s.name() + " (" + self.proof + ")");
  if (self.decision == Decision::unknown) return r;
  r.witness = self.witness;
  bool undecided = false;
  for (Edge e : non_edges(g)) {
    SearchOutcome o = embeds_on(g.with_edge(e), s, budget);
    r.nodes += o.nodes;
    if (o.decision == Decision::embeddable) {
      r.verdict = Verdict::no;
      r.addable = e;
      r.addable_witness = o.witness;
      r.blocking.push_back({e, std::move(o)});
      return r;
    }
    undecided = undecided || o.decision == Decision::unknown;
    r.blocking.push_back({e, std::move(o)});
  }
  r.verdict = undecided ? Verdict::unknown : Verdict::yes;
  return r;
}

EulerImpurity is_euler_impure(const Graph& g, SurfaceSpec s, const SearchBudget& budget) {
  EulerImpurity out;
  ImpurityReport& rep = out.report;
  rep.graph = g;
  rep.surface = s;
  rep.complete = g.is_complete();
  rep.deficit = triangulation_deficit(g, s);
  MaximalityResult m = is_edge_maximal(g, s, budget);
  rep.witness = m.witness;
  rep.blocking = m.blocking;
  rep.edge_maximal = m.verdict == Verdict::yes;
  // An embedding on s with deficit 0 has 2|E|/3 faces, so every face is a
  // triangle; a positive deficit rules triangulations out.
  rep.triangulates = m.witness && rep.deficit == 0;
  if (rep.complete) {
    out.verdict = Verdict::no;
    out.reason = "complete graph";
    return out;
  }
  if (m.verdict == Verdict::unknown) {
    out.verdict = Verdict::unknown;
    out.reason = "edge-maximality undecided within budget";
    return out;
  }
  if (m.verdict == Verdict::no) {
    out.verdict = Verdict::no;
    out.reason = "not edge-maximal: " + std::to_string(m.addable->u) + "-" + std::to_string(m.addable->v) + " can be added";
    return out;
  }
  if (rep.triangulates) {
    out.verdict = Verdict::no;
    out.reason = "triangulates " + s.name();
    return out;
  }
  out.verdict = Verdict::yes;
  out.reason = "edge-maximal, not complete, " + std::to_string(rep.deficit) + " edge(s) short of a triangulation";
  return out;
}

namespace {

struct CanonSet {
  std::map<std::string, Graph> items;
  void add(const Graph& g) {
    auto perm = canonical_labeling(g);
    Graph c = g.relabeled(perm);
    items.emplace(to_graph6(c), std::move(c));
  }
};

// All graphs (connected or not) on n vertices with m edges, up to isomorphism.
std::vector<Graph> all_graphs(int n, int m) {
  CanonSet level;
  level.add(Graph(n));
  for (int j = 0; j < m; ++j) {
    CanonSet next;
    for (const auto& [key, g] : level.items)
      for (Edge e : non_edges(g)) next.add(g.with_edge(e));
    level = std::move(next);
  }
  std::vector<Graph> out;
  for (auto& [key, g] : level.items) out.push_back(std::move(g));
  return out;
}

Graph complement(const Graph& g) {
  return Graph(g.order(), non_edges(g));
}

}  // namespace

std::vector<Graph> connected_graphs(int n, int m) {
  int total = n * (n - 1) / 2;
  if (n < 1 || m < 0 || m > total) return {};
  CanonSet set;
  for (const Graph& c : all_graphs(n, total - m)) {
    Graph g = complement(c);
    if (g.connected()) set.add(g);
  }
  std::vector<Graph> out;
  for (auto& [key, g] : set.items) out.push_back(std::move(g));
  return out;
}

ImpurityResult impurity(const Graph& g, SurfaceSpec s, const SearchBudget& budget) {
  if (g.order() > 9) throw MaximalityError("impurity is limited to graphs on at most 9 vertices");
  ImpurityResult r;
  r.exact = true;
  int n = g.order();
  int m = static_cast<int>(g.size());
  int top = std::min(n * (n - 1) / 2, triangulation_edge_target(n, s.euler_genus()));
  // A densest graph on the surface can be taken connected: two components can
  // always be joined through a face they share.
  for (int target = top; target > m; --target) {
    for (const Graph& h : connected_graphs(n, target)) {
      SearchOutcome o = embeds_on(h, s, budget);
      if (o.decision == Decision::embeddable) {
        r.k = target - m;
        r.denser_witness = o.witness;
        return r;
      }
      if (o.decision == Decision::unknown) r.exact = false;
    }
  }
  r.k = 0;
  return r;
}

namespace {

enum class Status { embeddable, not_embeddable, unknown };

struct Item {
  explicit Item(Graph g) : graph(std::move(g)) {}

  Graph graph;
  Status status = Status::unknown;
  bool needs_search = false;
  bool maximal_candidate = false;  // no supergraph known to embed
  bool supergraph_unknown = false;
  std::optional<RotationEmbedding> witness;
};

void run_searches(std::vector<Item*>& todo, SurfaceSpec s, const SearchBudget& budget) {
  SearchBudget inner = budget;
  int threads = std::max(1, budget.workers);
  if (threads > 1) inner.workers = 1;
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= todo.size()) return;
      Item& it = *todo[i];
      SearchOutcome o = embeds_on(it.graph, s, inner);
      if (o.decision == Decision::embeddable) {
        it.status = Status::embeddable;
        it.witness = o.witness;
      } else {
        it.status = o.decision == Decision::not_embeddable ? Status::not_embeddable : Status::unknown;
      }
    }
  };
  if (threads == 1) {
    work();
    return;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
}

}  // namespace

CensusResult census_euler_impure(int n_max, SurfaceSpec s, const SearchBudget& budget) {
  if (n_max > 8) throw MaximalityError("census is limited to at most 8 vertices");
  CensusResult out;
  std::map<std::string, CensusEntry> found;
  // Edge-maximal graphs are connected, and every connected graph arises from
  // K_n by deleting edges one at a time while staying connected.
  for (int n = 3; n <= n_max; ++n) {
    int limit = triangulation_edge_target(n, s.euler_genus());
    std::map<std::string, Item> upper;
    std::map<std::string, Item> level;
    {
      Graph k = complete_graph(n);
      level.emplace(to_graph6(k), Item(k));
    }
    for (int m = n * (n - 1) / 2; m >= n - 1; --m) {
      std::vector<Item*> todo;
      for (auto& [key, it] : level) {
        ++out.graphs;
        if (m > limit) {
          it.status = Status::not_embeddable;
          continue;
        }
        bool any_yes = false;
        for (Edge e : non_edges(it.graph)) {
          Graph sup = canonical_graph(it.graph.with_edge(e));
          const Item& u = upper.at(to_graph6(sup));
          any_yes = any_yes || u.status == Status::embeddable;
          it.supergraph_unknown = it.supergraph_unknown || u.status == Status::unknown;
        }
        if (any_yes) {
          it.status = Status::embeddable;
          continue;
        }
        it.maximal_candidate = true;
        todo.push_back(&it);
      }
      out.searches += todo.size();
      run_searches(todo, s, budget);
      for (auto& [key, it] : level) {
        if (!it.maximal_candidate) continue;
        if (it.status == Status::unknown) {
          out.complete = false;
          out.undecided.push_back(key);
          continue;
        }
        if (it.status != Status::embeddable) continue;
        if (it.supergraph_unknown) {
          out.complete = false;
          out.undecided.push_back(key);
          continue;
        }
        int deficit = triangulation_deficit(it.graph, s);
        if (!it.graph.is_complete() && deficit > 0) found.emplace(key, CensusEntry{key, it.graph, deficit, *it.witness});
      }
      if (m == n - 1) break;
      std::map<std::string, Item> below;
      for (const auto& [key, it] : level)
        for (Edge e : it.graph.edges()) {
          Graph h = it.graph.without_edges(std::span<const Edge>(&e, 1));
          if (!h.connected()) continue;
          Graph c = canonical_graph(h);
          std::string k = to_graph6(c);
          if (!below.count(k)) below.emplace(k, Item(std::move(c)));
        }
      upper = std::move(level);
      level = std::move(below);
    }
  }
  for (auto& [key, e] : found) out.impure.push_back(std::move(e));
  return out;
}

}  // namespace surfemb
