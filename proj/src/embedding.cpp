#include "surfemb/embedding.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <deque>
#include <optional>

namespace surfemb {

std::string SurfaceSpec::name() const {
  return (orientable ? "S" : "N") + std::to_string(genus);
}

SurfaceSpec SurfaceSpec::parse(const std::string& name) {
  if (name.size() < 2) throw EmbeddingError("bad surface name '" + name + "'");
  char kind = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
  if (kind != 'S' && kind != 'N') throw EmbeddingError("surface must start with S or N: '" + name + "'");
  int genus = 0;
  for (std::size_t i = 1; i < name.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) throw EmbeddingError("bad surface genus in '" + name + "'");
    genus = genus * 10 + (name[i] - '0');
  }
  if (kind == 'N' && genus < 1) throw EmbeddingError("nonorientable genus must be at least 1");
  return {kind == 'S', genus};
}

RotationEmbedding::RotationEmbedding(Graph graph, std::vector<std::vector<Vertex>> rotation,
                                     std::vector<int> signature)
    : graph_(std::move(graph)), rotation_(std::move(rotation)), signature_(std::move(signature)) {
  validate();
  build_positions();
}

RotationEmbedding::RotationEmbedding(Graph graph, std::vector<std::vector<Vertex>> rotation)
    : graph_(std::move(graph)), rotation_(std::move(rotation)) {
  signature_.assign(graph_.size(), 1);
  validate();
  build_positions();
}

void RotationEmbedding::validate() const {
  int n = graph_.order();
  if (static_cast<int>(rotation_.size()) != n) throw EmbeddingError("rotation has wrong number of vertices");
  for (Vertex v = 0; v < n; ++v) {
    auto sorted = rotation_[v];
    std::sort(sorted.begin(), sorted.end());
    if (sorted != graph_.neighbors(v))
      throw EmbeddingError("rotation not a permutation of the neighbours of vertex " + std::to_string(v));
  }
  if (signature_.size() != graph_.size()) throw EmbeddingError("signature not defined on exactly the edges");
  for (int s : signature_)
    if (s != 1 && s != -1) throw EmbeddingError("signature values must be +1 or -1");
}

void RotationEmbedding::build_positions() {
  int n = graph_.order();
  pos_.assign(static_cast<std::size_t>(n) * n, -1);
  for (Vertex v = 0; v < n; ++v)
    for (std::size_t i = 0; i < rotation_[v].size(); ++i) pos_[v * n + rotation_[v][i]] = static_cast<int>(i);
}

int RotationEmbedding::position(Vertex v, Vertex w) const {
  return pos_[v * graph_.order() + w];
}

Vertex RotationEmbedding::step(Vertex v, Vertex w, int dir) const {
  const auto& r = rotation_[v];
  int d = static_cast<int>(r.size());
  return r[(position(v, w) + dir + d) % d];
}

std::vector<Edge> RotationEmbedding::negative_edges() const {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < signature_.size(); ++i)
    if (signature_[i] < 0) out.push_back(graph_.edges()[i]);
  return out;
}

RotationEmbedding RotationEmbedding::mirrored() const {
  auto rot = rotation_;
  for (auto& r : rot) std::reverse(r.begin(), r.end());
  return RotationEmbedding(graph_, std::move(rot), signature_);
}

RotationEmbedding RotationEmbedding::switched(Vertex v) const {
  auto rot = rotation_;
  auto sig = signature_;
  std::reverse(rot[v].begin(), rot[v].end());
  for (Vertex w : graph_.neighbors(v)) sig[graph_.edge_id(v, w)] *= -1;
  return RotationEmbedding(graph_, std::move(rot), std::move(sig));
}

RotationEmbedding RotationEmbedding::normalized() const {
  int n = graph_.order();
  std::vector<int> flip(n, 0);
  for (Vertex root = 0; root < n; ++root) {
    if (flip[root] != 0) continue;
    flip[root] = 1;
    std::deque<Vertex> queue{root};
    while (!queue.empty()) {
      Vertex v = queue.front();
      queue.pop_front();
      for (Vertex w : graph_.neighbors(v))
        if (flip[w] == 0) {
          flip[w] = flip[v] * sign(v, w);
          queue.push_back(w);
        }
    }
  }
  auto rot = rotation_;
  auto sig = signature_;
  for (Vertex v = 0; v < n; ++v)
    if (flip[v] < 0) std::reverse(rot[v].begin(), rot[v].end());
  for (std::size_t i = 0; i < sig.size(); ++i) {
    auto [u, v] = graph_.edges()[i];
    sig[i] *= flip[u] * flip[v];
  }
  for (auto& r : rot)
    if (!r.empty()) std::rotate(r.begin(), std::min_element(r.begin(), r.end()), r.end());
  return RotationEmbedding(graph_, std::move(rot), std::move(sig));
}

RotationEmbedding RotationEmbedding::relabeled(std::span<const Vertex> perm) const {
  Graph g = graph_.relabeled(perm);
  int n = graph_.order();
  std::vector<std::vector<Vertex>> rot(n);
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w : rotation_[v]) rot[perm[v]].push_back(perm[w]);
  std::vector<int> sig(g.size(), 1);
  for (std::size_t i = 0; i < signature_.size(); ++i) {
    auto [u, v] = graph_.edges()[i];
    sig[g.edge_id(perm[u], perm[v])] = signature_[i];
  }
  return RotationEmbedding(std::move(g), std::move(rot), std::move(sig));
}

Walk FaceWalk::vertices() const {
  Walk w;
  w.reserve(steps.size());
  for (const auto& s : steps) w.push_back(s.from);
  return w;
}

namespace {

int side_of(const RotationEmbedding& emb, const FaceStep& s, int& edge) {
  edge = emb.graph().edge_id(s.from, s.to);
  if (s.from < s.to) return s.dir > 0 ? 0 : 1;
  return -s.dir * emb.signature()[edge] > 0 ? 0 : 1;
}

FaceStep next_step(const RotationEmbedding& emb, const FaceStep& s) {
  int dir = s.dir * emb.sign(s.from, s.to);
  return {s.to, emb.step(s.to, s.from, dir), dir};
}

// Face index for every edge side (2*edge + side).
std::vector<int> side_faces(const RotationEmbedding& emb, const std::vector<FaceWalk>& faces) {
  std::vector<int> owner(2 * emb.graph().size(), -1);
  for (std::size_t f = 0; f < faces.size(); ++f)
    for (const auto& s : faces[f].steps) {
      int e = 0;
      int side = side_of(emb, s, e);
      owner[2 * e + side] = static_cast<int>(f);
    }
  return owner;
}

bool same_cycle(const Walk& a, std::span<const Vertex> b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  for (std::size_t r = 0; r < a.size(); ++r) {
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i) ok = a[(r + i) % a.size()] == b[i];
    if (ok) return true;
  }
  return false;
}

}  // namespace

std::vector<FaceWalk> trace_faces(const RotationEmbedding& emb) {
  const Graph& g = emb.graph();
  std::vector<char> used(2 * g.size(), 0);
  std::vector<FaceWalk> faces;
  for (std::size_t e = 0; e < g.size(); ++e)
    for (int side = 0; side < 2; ++side) {
      if (used[2 * e + side]) continue;
      auto [a, b] = g.edges()[e];
      // Side 1 is entered from b so that faces of an untwisted embedding all
      // run with local orientation +1.
      const FaceStep start = side == 0 ? FaceStep{a, b, 1} : FaceStep{b, a, emb.signature()[e]};
      FaceWalk face;
      FaceStep cur = start;
      do {
        int id = 0;
        int sd = side_of(emb, cur, id);
        if (used[2 * id + sd]) throw EmbeddingError("face tracing revisited an edge side");
        used[2 * id + sd] = 1;
        face.steps.push_back(cur);
        cur = next_step(emb, cur);
      } while (!(cur == start));
      faces.push_back(std::move(face));
    }
  return faces;
}

int euler_genus(const RotationEmbedding& emb) {
  const Graph& g = emb.graph();
  if (!g.connected()) throw EmbeddingError("euler genus needs a connected graph");
  if (g.size() == 0) return 0;
  int faces = static_cast<int>(trace_faces(emb).size());
  return 2 - g.order() + static_cast<int>(g.size()) - faces;
}

bool is_orientable(const RotationEmbedding& emb) {
  const Graph& g = emb.graph();
  std::vector<int> flip(g.order(), 0);
  for (Vertex root = 0; root < g.order(); ++root) {
    if (flip[root] != 0) continue;
    flip[root] = 1;
    std::deque<Vertex> queue{root};
    while (!queue.empty()) {
      Vertex v = queue.front();
      queue.pop_front();
      for (Vertex w : g.neighbors(v)) {
        int want = flip[v] * emb.sign(v, w);
        if (flip[w] == 0) {
          flip[w] = want;
          queue.push_back(w);
        } else if (flip[w] != want) {
          return false;
        }
      }
    }
  }
  return true;
}

SurfaceSpec surface_of(const RotationEmbedding& emb) {
  int eg = euler_genus(emb);
  if (is_orientable(emb)) {
    if (eg % 2 != 0) throw EmbeddingError("internal: orientable embedding with odd euler genus");
    return {true, eg / 2};
  }
  return {false, eg};
}

std::map<int, int> face_size_multiset(const RotationEmbedding& emb) {
  std::map<int, int> out;
  for (const auto& f : trace_faces(emb)) ++out[static_cast<int>(f.size())];
  return out;
}

int triangulation_edge_target(int n, int euler_genus) {
  return 3 * (n - 2 + euler_genus);
}

bool induces_complete(const Graph& g, std::span<const Vertex> vertices) {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (vertices[i] == vertices[j] || !g.adjacent(vertices[i], vertices[j])) return false;
  return true;
}

int quad_faces_inducing_K4(const RotationEmbedding& emb) {
  int count = 0;
  for (const auto& f : trace_faces(emb)) {
    if (f.size() != 4) continue;
    auto vs = f.vertices();
    if (induces_complete(emb.graph(), vs)) ++count;
  }
  return count;
}

bool consecutive_vertices_distinct(const RotationEmbedding&, const FaceWalk& face) {
  auto vs = face.vertices();
  std::size_t len = vs.size();
  for (std::size_t i = 0; i < len; ++i) {
    Vertex a = vs[i], b = vs[(i + 1) % len], c = vs[(i + 2) % len];
    if (a == b || b == c || a == c) return false;
  }
  return true;
}

bool is_facial_walk(const RotationEmbedding& emb, std::span<const Vertex> cycle) {
  for (const auto& f : trace_faces(emb))
    if (same_cycle(f.vertices(), cycle)) return true;
  return false;
}

bool is_facial_cycle(const RotationEmbedding& emb, std::span<const Vertex> cycle) {
  Walk rev(cycle.rbegin(), cycle.rend());
  for (const auto& f : trace_faces(emb)) {
    auto vs = f.vertices();
    if (same_cycle(vs, cycle) || same_cycle(vs, rev)) return true;
  }
  return false;
}

RotationEmbedding embedding_from_faces(const Graph& g, const std::vector<Walk>& faces) {
  int n = g.order();
  std::vector<int> succ(static_cast<std::size_t>(n) * n, -1);
  std::vector<char> directed(static_cast<std::size_t>(n) * n, 0);
  for (const auto& f : faces) {
    std::size_t len = f.size();
    for (std::size_t i = 0; i < len; ++i) {
      Vertex p = f[(i + len - 1) % len], v = f[i], q = f[(i + 1) % len];
      if (!g.adjacent(p, v) || !g.adjacent(v, q)) throw EmbeddingError("face walk uses a non-edge");
      if (directed[v * n + q]++) throw EmbeddingError("face walks traverse an edge twice in one direction");
      if (succ[v * n + p] >= 0) throw EmbeddingError("face walks disagree on a corner");
      succ[v * n + p] = q;
    }
  }
  std::vector<std::vector<Vertex>> rot(n);
  for (Vertex v = 0; v < n; ++v) {
    if (g.degree(v) == 0) continue;
    Vertex start = g.neighbors(v).front();
    Vertex cur = start;
    do {
      rot[v].push_back(cur);
      cur = succ[v * n + cur];
      if (cur < 0) throw EmbeddingError("face walks leave a corner open at vertex " + std::to_string(v));
    } while (cur != start && rot[v].size() <= static_cast<std::size_t>(g.degree(v)));
    if (static_cast<int>(rot[v].size()) != g.degree(v))
      throw EmbeddingError("face walks do not give a single rotation at vertex " + std::to_string(v));
  }
  return RotationEmbedding(g, std::move(rot));
}

RotationEmbedding flip_edge(const RotationEmbedding& emb, Edge uv, std::size_t face_index, std::size_t corner_u,
                            std::size_t corner_v) {
  const Graph& g = emb.graph();
  uv = make_edge(uv.u, uv.v);
  int id = g.edge_id(uv.u, uv.v);
  if (id < 0) throw EmbeddingError("flip: edge not in graph");
  auto faces = trace_faces(emb);
  if (face_index >= faces.size()) throw EmbeddingError("flip: face index out of range");
  const FaceWalk& face = faces[face_index];
  if (corner_u >= face.size() || corner_v >= face.size()) throw EmbeddingError("flip: corner index out of range");
  if (face.steps[corner_u].from != uv.u) std::swap(corner_u, corner_v);
  if (face.steps[corner_u].from != uv.u || face.steps[corner_v].from != uv.v)
    throw EmbeddingError("flip: corners do not reference the edge endpoints");
  auto owner = side_faces(emb, faces);
  if (owner[2 * id] == static_cast<int>(face_index) || owner[2 * id + 1] == static_cast<int>(face_index))
    throw EmbeddingError("flip: target face is incident to the edge");
  if (owner[2 * id] == owner[2 * id + 1]) throw EmbeddingError("flip: both sides of the edge lie on one face");

  auto rot = emb.rotation();
  auto erase = [&](Vertex v, Vertex w) { rot[v].erase(std::find(rot[v].begin(), rot[v].end(), w)); };
  erase(uv.u, uv.v);
  erase(uv.v, uv.u);
  std::size_t len = face.size();
  auto insert = [&](std::size_t corner, Vertex other) {
    Vertex x = face.steps[corner].from;
    Vertex prev = face.steps[(corner + len - 1) % len].from;
    auto it = std::find(rot[x].begin(), rot[x].end(), prev);
    if (face.steps[corner].dir > 0) ++it;
    rot[x].insert(it, other);
  };
  insert(corner_u, uv.v);
  insert(corner_v, uv.u);
  auto sig = emb.signature();
  sig[id] = face.steps[corner_u].dir * face.steps[corner_v].dir;
  return RotationEmbedding(g, std::move(rot), std::move(sig));
}

namespace {

// Deletes ux, then re-inserts it inside whichever face of the smaller
// embedding runs u, v, w, x consecutively, cutting off the 4-face uvwx.
// Covers the case where ux itself borders the large face, which a plain flip
// rejects. Empty when no placement keeps the surface.
std::optional<RotationEmbedding> reinsert_across(const RotationEmbedding& emb, const std::array<Vertex, 4>& q) {
  const Graph& g = emb.graph();
  Edge ux = make_edge(q[0], q[3]);
  Graph smaller = g.without_edges(std::span<const Edge>(&ux, 1));
  auto rot = emb.rotation();
  rot[q[0]].erase(std::find(rot[q[0]].begin(), rot[q[0]].end(), q[3]));
  rot[q[3]].erase(std::find(rot[q[3]].begin(), rot[q[3]].end(), q[0]));
  std::vector<int> sig;
  for (Edge e : smaller.edges()) sig.push_back(emb.sign(e.u, e.v));
  RotationEmbedding cut(smaller, rot, sig);
  SurfaceSpec want = surface_of(emb);
  for (const auto& face : trace_faces(cut)) {
    std::size_t len = face.size();
    for (std::size_t i = 0; i < len; ++i) {
      bool match = true;
      for (std::size_t k = 0; k < 4 && match; ++k) match = face.steps[(i + k) % len].from == q[k];
      if (!match) continue;
      auto r = rot;
      auto insert = [&](std::size_t corner, Vertex other) {
        Vertex x = face.steps[corner].from;
        Vertex prev = face.steps[(corner + len - 1) % len].from;
        auto it = std::find(r[x].begin(), r[x].end(), prev);
        if (face.steps[corner].dir > 0) ++it;
        r[x].insert(it, other);
      };
      std::size_t cx = (i + 3) % len;
      insert(i, q[3]);
      insert(cx, q[0]);
      std::vector<int> full(g.size(), 1);
      for (std::size_t e = 0; e < g.size(); ++e) {
        auto [a, b] = g.edges()[e];
        full[e] = g.edges()[e] == ux ? face.steps[i].dir * face.steps[cx].dir : emb.sign(a, b);
      }
      RotationEmbedding out(g, std::move(r), std::move(full));
      if (surface_of(out) == want && face_size_multiset(out).count(4)) return out;
    }
  }
  return std::nullopt;
}

}  // namespace

RotationEmbedding ensure_4face(const RotationEmbedding& emb) {
  auto faces = trace_faces(emb);
  bool large = false;
  for (const auto& f : faces) {
    if (f.size() == 4) return emb;
    if (f.size() > 4) large = true;
  }
  if (!large) throw EmbeddingError("already a triangulation: no face of size at least 4");
  const Graph& g = emb.graph();
  auto owner = side_faces(emb, faces);
  for (std::size_t fi = 0; fi < faces.size(); ++fi) {
    const auto& f = faces[fi];
    std::size_t len = f.size();
    if (len < 5) continue;
    for (std::size_t i = 0; i < len; ++i) {
      Vertex u = f.steps[i].from, v = f.steps[(i + 1) % len].from;
      Vertex w = f.steps[(i + 2) % len].from, x = f.steps[(i + 3) % len].from;
      if (u == v || u == w || u == x || v == w || v == x || w == x) continue;
      int id = g.edge_id(u, x);
      if (id < 0) continue;
      bool on_face = owner[2 * id] == static_cast<int>(fi) || owner[2 * id + 1] == static_cast<int>(fi);
      if (!on_face && owner[2 * id] != owner[2 * id + 1]) return flip_edge(emb, make_edge(u, x), fi, i, (i + 3) % len);
      if (auto r = reinsert_across(emb, {u, v, w, x})) return *r;
    }
  }
  throw EmbeddingError(
      "precondition violated: no face has four consecutive distinct vertices joined by a movable edge "
      "(the graph is K3-like or not edge-maximal)");
}

}  // namespace surfemb
