#include "surfemb/graph.hpp"

#include <algorithm>
#include <numeric>

namespace surfemb {

Edge make_edge(Vertex a, Vertex b) {
  return a < b ? Edge{a, b} : Edge{b, a};
}

Graph::Graph(int n) : n_(n) {
  if (n < 0) throw GraphError("negative vertex count");
  build_index();
}

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n < 0) throw GraphError("negative vertex count");
  for (auto& e : edges_) {
    if (e.u == e.v) throw GraphError("loop at vertex " + std::to_string(e.u));
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
      throw GraphError("edge endpoint out of range: " + std::to_string(e.u) + "-" + std::to_string(e.v));
    e = make_edge(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end());
  auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end())
    throw GraphError("duplicate edge " + std::to_string(dup->u) + "-" + std::to_string(dup->v));
  build_index();
}

void Graph::build_index() {
  adj_.assign(n_, {});
  index_.assign(static_cast<std::size_t>(n_) * n_, -1);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    auto [u, v] = edges_[i];
    adj_[u].push_back(v);
    adj_[v].push_back(u);
    index_[u * n_ + v] = index_[v * n_ + u] = static_cast<int>(i);
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
}

int Graph::edge_id(Vertex a, Vertex b) const {
  if (a < 0 || b < 0 || a >= n_ || b >= n_) return -1;
  return index_[a * n_ + b];
}

int Graph::max_degree() const {
  int best = 0;
  for (const auto& a : adj_) best = std::max(best, static_cast<int>(a.size()));
  return best;
}

Graph Graph::with_edge(Edge e) const {
  return with_edges(std::span<const Edge>(&e, 1));
}

Graph Graph::with_edges(std::span<const Edge> extra) const {
  auto es = edges_;
  es.insert(es.end(), extra.begin(), extra.end());
  return Graph(n_, std::move(es));
}

Graph Graph::without_edges(std::span<const Edge> removed) const {
  std::vector<Edge> drop(removed.begin(), removed.end());
  for (auto& e : drop) e = make_edge(e.u, e.v);
  std::sort(drop.begin(), drop.end());
  std::vector<Edge> es;
  for (const auto& e : edges_)
    if (!std::binary_search(drop.begin(), drop.end(), e)) es.push_back(e);
  return Graph(n_, std::move(es));
}

Graph Graph::relabeled(std::span<const Vertex> perm) const {
  if (static_cast<int>(perm.size()) != n_) throw GraphError("relabeling has wrong length");
  std::vector<Edge> es;
  es.reserve(edges_.size());
  for (auto [u, v] : edges_) es.push_back(make_edge(perm[u], perm[v]));
  return Graph(n_, std::move(es));
}

Graph Graph::induced(std::span<const Vertex> vertices) const {
  std::vector<int> pos(n_, -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) pos[vertices[i]] = static_cast<int>(i);
  std::vector<Edge> es;
  for (auto [u, v] : edges_)
    if (pos[u] >= 0 && pos[v] >= 0) es.push_back(make_edge(pos[u], pos[v]));
  return Graph(static_cast<int>(vertices.size()), std::move(es));
}

bool Graph::connected() const {
  if (n_ <= 1) return true;
  std::vector<char> seen(n_, 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : adj_[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
  }
  return count == n_;
}

std::vector<Edge> non_edges(const Graph& g) {
  std::vector<Edge> out;
  for (Vertex u = 0; u < g.order(); ++u)
    for (Vertex v = u + 1; v < g.order(); ++v)
      if (!g.adjacent(u, v)) out.push_back({u, v});
  return out;
}

std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  std::vector<int> comp(g.order(), -1);
  std::vector<std::vector<Vertex>> out;
  for (Vertex s = 0; s < g.order(); ++s) {
    if (comp[s] >= 0) continue;
    out.emplace_back();
    std::vector<Vertex> stack{s};
    comp[s] = static_cast<int>(out.size()) - 1;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      out.back().push_back(v);
      for (Vertex w : g.neighbors(v))
        if (comp[w] < 0) {
          comp[w] = comp[s];
          stack.push_back(w);
        }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

namespace {

bool connected_without(const Graph& g, const std::vector<char>& removed) {
  int n = g.order();
  Vertex start = -1;
  int alive = 0;
  for (Vertex v = 0; v < n; ++v)
    if (!removed[v]) {
      ++alive;
      if (start < 0) start = v;
    }
  if (alive < 2) return false;
  std::vector<char> seen(n, 0);
  std::vector<Vertex> stack{start};
  seen[start] = 1;
  int count = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : g.neighbors(v))
      if (!removed[w] && !seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
  }
  return count == alive;
}

bool check_subsets(const Graph& g, std::vector<char>& removed, Vertex from, int left) {
  if (!connected_without(g, removed)) return false;
  if (left == 0) return true;
  for (Vertex v = from; v < g.order(); ++v) {
    removed[v] = 1;
    bool ok = check_subsets(g, removed, v + 1, left - 1);
    removed[v] = 0;
    if (!ok) return false;
  }
  return true;
}

}  // namespace

bool is_k_connected(const Graph& g, int k) {
  if (g.order() <= k) return false;
  std::vector<char> removed(g.order(), 0);
  return check_subsets(g, removed, 0, k - 1);
}

}  // namespace surfemb
