#include "surfemb/families.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace surfemb {

Graph complete_graph(int n) {
  if (n < 1) throw GraphError("complete graph needs n >= 1");
  std::vector<Edge> es;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) es.push_back({u, v});
  return Graph(n, std::move(es));
}

std::string to_string(EdgePattern p) {
  switch (p) {
    case EdgePattern::single_edge: return "K2";
    case EdgePattern::cycle5: return "C5";
    case EdgePattern::matching2: return "2K2";
    case EdgePattern::star2: return "K1,2";
    case EdgePattern::star4: return "K1,4";
  }
  return "?";
}

EdgePattern parse_edge_pattern(const std::string& name) {
  for (auto p : {EdgePattern::single_edge, EdgePattern::cycle5, EdgePattern::matching2, EdgePattern::star2,
                 EdgePattern::star4})
    if (to_string(p) == name) return p;
  if (name == "e" || name == "edge") return EdgePattern::single_edge;
  throw GraphError("unknown edge pattern '" + name + "'");
}

namespace {

bool has_shape(EdgePattern pattern, const std::vector<Edge>& w) {
  std::map<Vertex, int> deg;
  for (auto [u, v] : w) {
    ++deg[u];
    ++deg[v];
  }
  auto count_deg = [&](int d) {
    return std::count_if(deg.begin(), deg.end(), [d](const auto& kv) { return kv.second == d; });
  };
  switch (pattern) {
    case EdgePattern::single_edge:
      return w.size() == 1;
    case EdgePattern::matching2:
      return w.size() == 2 && deg.size() == 4;
    case EdgePattern::star2:
      return w.size() == 2 && deg.size() == 3 && count_deg(2) == 1;
    case EdgePattern::star4:
      return w.size() == 4 && deg.size() == 5 && count_deg(4) == 1;
    case EdgePattern::cycle5: {
      if (w.size() != 5 || deg.size() != 5 || count_deg(2) != 5) return false;
      // 2-regular on 5 vertices is connected unless it splits as a triangle plus
      // a digon, which a simple edge set cannot form.
      return true;
    }
  }
  return false;
}

std::array<Vertex, 3> sorted_triple(const Walk& f) {
  std::array<Vertex, 3> t{f[0], f[1], f[2]};
  std::sort(t.begin(), t.end());
  return t;
}

}  // namespace

Graph remove_edge_structure(const Graph& g, EdgePattern pattern, std::span<const Edge> witness) {
  std::vector<Edge> w;
  for (auto e : witness) {
    if (!g.adjacent(e.u, e.v))
      throw GraphError("witness edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " not in graph");
    w.push_back(make_edge(e.u, e.v));
  }
  std::sort(w.begin(), w.end());
  if (std::adjacent_find(w.begin(), w.end()) != w.end()) throw GraphError("witness repeats an edge");
  if (!has_shape(pattern, w)) throw GraphError("witness does not have the shape " + to_string(pattern));
  return g.without_edges(w);
}

Plate quad_plate_faces(int depth) {
  if (depth < 0) throw GraphError("plate depth must be non-negative");
  Plate p;
  p.outer = {0, 1, 2, 3};
  std::vector<Walk> interior = {{1, 0, 4}, {2, 1, 4}, {3, 2, 4}, {0, 3, 4}};
  std::vector<Edge> edges = {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 4}, {1, 4}, {2, 4}, {3, 4}};
  for (int i = 0; i < depth; ++i) {
    Vertex v = 5 + i;
    auto it = std::min_element(interior.begin(), interior.end(),
                               [](const Walk& a, const Walk& b) { return sorted_triple(a) < sorted_triple(b); });
    Walk t = *it;
    interior.erase(it);
    interior.push_back({t[0], t[1], v});
    interior.push_back({t[1], t[2], v});
    interior.push_back({t[2], t[0], v});
    for (Vertex x : t) edges.push_back(make_edge(x, v));
  }
  p.graph = Graph(5 + depth, std::move(edges));
  p.faces.push_back(p.outer);
  p.faces.insert(p.faces.end(), interior.begin(), interior.end());
  return p;
}

Graph quad_plate(int depth) {
  return quad_plate_faces(depth).graph;
}

Plate gapped_plate(int gap) {
  if (gap < 0) throw GraphError("gap must be non-negative");
  for (int depth = 2 * gap; depth <= 8 * gap + 8; ++depth) {
    Plate p = quad_plate_faces(depth);
    int removed = 0;
    const std::vector<Edge> original = p.graph.edges();
    for (const Edge e : original) {
      if (removed == gap) break;
      // Locate the two faces through e; both must be interior triangles.
      int fa = -1, fb = -1;
      std::size_t ia = 0, ib = 0;
      for (std::size_t f = 0; f < p.faces.size(); ++f) {
        const Walk& w = p.faces[f];
        for (std::size_t i = 0; i < w.size(); ++i) {
          Vertex a = w[i], b = w[(i + 1) % w.size()];
          if (a == e.u && b == e.v) fa = static_cast<int>(f), ia = i;
          if (a == e.v && b == e.u) fb = static_cast<int>(f), ib = i;
        }
      }
      if (fa <= 0 || fb <= 0 || fa == fb) continue;  // face 0 is the outer face
      if (p.faces[fa].size() != 3 || p.faces[fb].size() != 3) continue;
      Graph candidate = p.graph.without_edges(std::span<const Edge>(&e, 1));
      if (candidate.degree(e.u) < 3 || candidate.degree(e.v) < 3) continue;
      if (!is_k_connected(candidate, 3)) continue;
      const Walk& A = p.faces[fa];  // u -> v -> x
      const Walk& B = p.faces[fb];  // v -> u -> y
      Vertex x = A[(ia + 2) % 3];
      Vertex y = B[(ib + 2) % 3];
      Walk quad = {e.u, y, e.v, x};
      std::vector<Walk> faces;
      for (std::size_t f = 0; f < p.faces.size(); ++f)
        if (static_cast<int>(f) != fa && static_cast<int>(f) != fb) faces.push_back(p.faces[f]);
      faces.push_back(quad);
      p.faces = std::move(faces);
      p.graph = std::move(candidate);
      ++removed;
    }
    if (removed == gap) return p;
  }
  throw GraphError("could not build a plate with gap " + std::to_string(gap));
}

}  // namespace surfemb
