#include "surfemb/canonical.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>

#include "surfemb/graph_io.hpp"

namespace surfemb {

namespace {

using Mask = std::uint64_t;
using Cells = std::vector<std::vector<Vertex>>;

class Canonizer {
 public:
  explicit Canonizer(const Graph& g) : n_(g.order()), adj_(g.order(), 0) {
    for (auto [u, v] : g.edges()) {
      adj_[u] |= Mask{1} << v;
      adj_[v] |= Mask{1} << u;
    }
  }

  std::vector<Vertex> run() {
    Cells start;
    if (n_ > 0) {
      start.emplace_back();
      for (Vertex v = 0; v < n_; ++v) start[0].push_back(v);
    }
    search(std::move(start));
    std::vector<Vertex> perm(n_);
    for (int i = 0; i < n_; ++i) perm[best_order_[i]] = i;
    return perm;
  }

 private:
  void refine(Cells& cells) const {
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<Mask> cell_masks;
      for (const auto& c : cells) {
        Mask m = 0;
        for (Vertex v : c) m |= Mask{1} << v;
        cell_masks.push_back(m);
      }
      Cells next;
      for (const auto& c : cells) {
        if (c.size() == 1) {
          next.push_back(c);
          continue;
        }
        std::map<std::vector<int>, std::vector<Vertex>> split;
        for (Vertex v : c) {
          std::vector<int> sig(cell_masks.size());
          for (std::size_t i = 0; i < cell_masks.size(); ++i) sig[i] = std::popcount(adj_[v] & cell_masks[i]);
          split[sig].push_back(v);
        }
        if (split.size() > 1) changed = true;
        for (auto& [sig, part] : split) next.push_back(std::move(part));
      }
      cells = std::move(next);
    }
  }

  bool twins(Vertex a, Vertex b) const {
    return (adj_[a] & ~(Mask{1} << b)) == (adj_[b] & ~(Mask{1} << a));
  }

  void search(Cells cells) {
    refine(cells);
    std::size_t target = cells.size();
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (cells[i].size() > 1 && (target == cells.size() || cells[i].size() < cells[target].size())) target = i;
    if (target == cells.size()) {
      leaf(cells);
      return;
    }
    std::vector<Vertex> tried;
    for (Vertex v : cells[target]) {
      bool redundant = std::any_of(tried.begin(), tried.end(), [&](Vertex u) { return twins(u, v); });
      if (redundant) continue;
      tried.push_back(v);
      Cells child;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i != target) {
          child.push_back(cells[i]);
          continue;
        }
        child.push_back({v});
        std::vector<Vertex> rest;
        for (Vertex w : cells[i])
          if (w != v) rest.push_back(w);
        child.push_back(std::move(rest));
      }
      search(std::move(child));
    }
  }

  void leaf(const Cells& cells) {
    std::vector<Vertex> order;
    for (const auto& c : cells) order.push_back(c[0]);
    std::string code;
    code.reserve(static_cast<std::size_t>(n_) * (n_ - 1) / 2);
    for (int j = 1; j < n_; ++j)
      for (int i = 0; i < j; ++i) code.push_back((adj_[order[i]] >> order[j]) & 1 ? '1' : '0');
    if (best_order_.empty() || code > best_code_) {
      best_code_ = std::move(code);
      best_order_ = std::move(order);
    }
  }

  int n_;
  std::vector<Mask> adj_;
  std::string best_code_;
  std::vector<Vertex> best_order_;
};

}  // namespace

std::vector<Vertex> canonical_labeling(const Graph& g, int max_vertices) {
  if (g.order() > max_vertices || g.order() > 64)
    throw GraphError("canonical form limited to " + std::to_string(std::min(max_vertices, 64)) + " vertices, got " +
                     std::to_string(g.order()));
  if (g.order() == 0) return {};
  return Canonizer(g).run();
}

Graph canonical_graph(const Graph& g, int max_vertices) {
  auto perm = canonical_labeling(g, max_vertices);
  return g.relabeled(perm);
}

std::string canonical_form(const Graph& g, int max_vertices) {
  return to_graph6(canonical_graph(g, max_vertices));
}

}  // namespace surfemb
