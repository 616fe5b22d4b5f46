#include "surfemb/constructions.hpp"

#include <algorithm>
#include <set>

namespace surfemb {

DistinguishedGraph make_distinguished(Graph g, Walk cycle) {
  int k = static_cast<int>(cycle.size());
  if (k < 3) throw ConstructionError("distinguished cycle needs at least 3 vertices");
  std::set<Vertex> seen;
  for (Vertex v : cycle) {
    if (v < 0 || v >= g.order()) throw ConstructionError("cycle vertex " + std::to_string(v) + " out of range");
    if (!seen.insert(v).second) throw ConstructionError("cycle repeats vertex " + std::to_string(v));
  }
  for (int i = 0; i < k; ++i)
    if (!g.adjacent(cycle[i], cycle[(i + 1) % k]))
      throw ConstructionError("cycle pair " + std::to_string(cycle[i]) + "-" + std::to_string(cycle[(i + 1) % k]) +
                              " is not an edge");
  return {std::move(g), std::move(cycle)};
}

Walk reversed(const Walk& cycle) {
  Walk r;
  if (cycle.empty()) return r;
  r.push_back(cycle[0]);
  for (std::size_t i = cycle.size() - 1; i >= 1; --i) r.push_back(cycle[i]);
  return r;
}

void validate_cylindrical(const CylindricalGraph& t) {
  const Graph& g = t.graph;
  std::vector<int> side(g.order(), -1);
  for (Vertex v : t.t1) side.at(v) = 1;
  for (Vertex v : t.t2) {
    if (side.at(v) >= 0) throw ConstructionError("boundary cycles share vertex " + std::to_string(v));
    side[v] = 2;
  }
  for (Vertex v = 0; v < g.order(); ++v) {
    if (side[v] < 0) throw ConstructionError("vertex " + std::to_string(v) + " lies on neither boundary cycle");
    if (g.degree(v) < 3) throw ConstructionError("cylindrical graph has a vertex of degree below 3");
  }
  for (const Walk* w : {&t.t1, &t.t2}) {
    make_distinguished(g, *w);
    if (g.induced(*w).size() != w->size()) throw ConstructionError("boundary cycle is not induced");
  }
  if (!(t.planar.graph() == g)) throw ConstructionError("plane embedding is for another graph");
  if (euler_genus(t.planar) != 0 || !is_orientable(t.planar)) throw ConstructionError("embedding is not planar");
  if (!is_facial_walk(t.planar, reversed(t.t1)) || !is_facial_walk(t.planar, t.t2))
    throw ConstructionError("boundary cycles are not faces of the plane embedding");
}

CylindricalGraph make_Tk(int k) {
  if (k < 3) throw ConstructionError("T_k needs k >= 3");
  auto a = [k](int i) { return ((i % k) + k) % k; };
  auto b = [k](int i) { return k + ((i % k) + k) % k; };
  std::vector<Edge> es;
  for (int i = 0; i < k; ++i) {
    es.push_back(make_edge(a(i), a(i + 1)));
    es.push_back(make_edge(b(i), b(i + 1)));
    es.push_back(make_edge(a(i), b(i)));
    es.push_back(make_edge(a(i), b(i - 1)));
  }
  Graph g(2 * k, es);
  std::vector<Walk> faces;
  Walk top, bottom;
  for (int i = 0; i < k; ++i) {
    top.push_back(a(-i));
    bottom.push_back(b(i));
    faces.push_back({b(i), a(i), a(i + 1)});
    faces.push_back({b(i - 1), a(i), b(i)});
  }
  faces.push_back(top);
  faces.push_back(bottom);
  CylindricalGraph t;
  t.graph = g;
  for (int i = 0; i < k; ++i) {
    t.t1.push_back(a(i));
    t.t2.push_back(b(i));
  }
  t.planar = embedding_from_faces(g, faces);
  validate_cylindrical(t);
  return t;
}

namespace {

// Position of each boundary vertex on its cycle, and which cycle (1 or 2).
struct BoundaryIndex {
  std::vector<int> side, pos;
  explicit BoundaryIndex(const CylindricalGraph& t) : side(t.graph.order(), 0), pos(t.graph.order(), -1) {
    for (std::size_t i = 0; i < t.t1.size(); ++i) side[t.t1[i]] = 1, pos[t.t1[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < t.t2.size(); ++i) side[t.t2[i]] = 2, pos[t.t2[i]] = static_cast<int>(i);
  }
};

void check_join_shape(const Walk& c, const Walk& d, const CylindricalGraph& t) {
  if (c.size() != t.t1.size()) throw ConstructionError("cycle C does not match the first boundary of T in length");
  if (d.size() != t.t2.size()) throw ConstructionError("cycle D does not match the second boundary of T in length");
}

}  // namespace

JoinedGraph t_join(const DistinguishedGraph& gc, const DistinguishedGraph& hd, const CylindricalGraph& t) {
  check_join_shape(gc.cycle, hd.cycle, t);
  int ng = gc.graph.order();
  BoundaryIndex bi(t);
  auto map = [&](Vertex x) { return bi.side[x] == 1 ? gc.cycle[bi.pos[x]] : ng + hd.cycle[bi.pos[x]]; };
  std::vector<Edge> es = gc.graph.edges();
  for (Edge e : hd.graph.edges()) es.push_back({e.u + ng, e.v + ng});
  for (Edge e : t.graph.edges())
    if (bi.side[e.u] != bi.side[e.v]) es.push_back(make_edge(map(e.u), map(e.v)));
  return {Graph(ng + hd.graph.order(), es), ng};
}

RotationEmbedding t_join_embedding(const RotationEmbedding& embG, const Walk& c, const RotationEmbedding& embH,
                                   const Walk& d, const CylindricalGraph& t) {
  check_join_shape(c, d, t);
  make_distinguished(embG.graph(), c);
  make_distinguished(embH.graph(), d);
  for (const RotationEmbedding* e : {&embG, &embH})
    if (!e->negative_edges().empty()) throw ConstructionError("join needs embeddings with all signatures +1");
  if (!is_facial_walk(embG, c)) throw ConstructionError("C is not a face walk of the first embedding");
  if (!is_facial_walk(embH, reversed(d))) throw ConstructionError("reversed D is not a face walk of the second embedding");
  validate_cylindrical(t);

  int ng = embG.graph().order();
  JoinedGraph joined = t_join({embG.graph(), c}, {embH.graph(), d}, t);
  BoundaryIndex bi(t);
  auto map = [&](Vertex x) { return bi.side[x] == 1 ? c[bi.pos[x]] : ng + d[bi.pos[x]]; };
  // T's neighbours of x strictly after `from` and before `to` in its plane rotation.
  auto between = [&](Vertex x, Vertex from, Vertex to) {
    const auto& r = t.planar.rotation(x);
    std::vector<Vertex> out;
    int deg = static_cast<int>(r.size());
    int i = t.planar.position(x, from);
    for (int s = 1; s < deg; ++s) {
      Vertex y = r[(i + s) % deg];
      if (y == to) return out;
      out.push_back(map(y));
    }
    throw ConstructionError("boundary neighbours out of order in the plane embedding of T");
  };

  std::vector<std::vector<Vertex>> rot(joined.graph.order());
  for (Vertex v = 0; v < ng; ++v) rot[v] = embG.rotation(v);
  for (Vertex v = 0; v < embH.graph().order(); ++v)
    for (Vertex w : embH.rotation(v)) rot[ng + v].push_back(ng + w);
  auto splice = [&](Vertex at, Vertex after, const std::vector<Vertex>& extra) {
    auto& r = rot[at];
    auto it = std::find(r.begin(), r.end(), after);
    r.insert(it + 1, extra.begin(), extra.end());
  };
  int k1 = static_cast<int>(c.size()), k2 = static_cast<int>(d.size());
  for (int i = 0; i < k1; ++i) {
    Vertex prev = t.t1[(i + k1 - 1) % k1], next = t.t1[(i + 1) % k1];
    splice(c[i], c[(i + k1 - 1) % k1], between(t.t1[i], prev, next));
  }
  for (int j = 0; j < k2; ++j) {
    Vertex prev = t.t2[(j + k2 - 1) % k2], next = t.t2[(j + 1) % k2];
    splice(ng + d[j], ng + d[(j + 1) % k2], between(t.t2[j], next, prev));
  }
  RotationEmbedding out(joined.graph, std::move(rot));
  if (euler_genus(out) != euler_genus(embG) + euler_genus(embH))
    throw ConstructionError("internal error: Euler genus of the join is not additive");
  return out;
}

Graph ladder(int n) {
  if (n < 1) throw ConstructionError("ladder needs n >= 1");
  std::vector<Edge> es;
  for (int i = 0; i <= n; ++i) {
    es.push_back({i, n + 1 + i});
    if (i < n) {
      es.push_back({i, i + 1});
      es.push_back({n + 1 + i, n + 2 + i});
    }
  }
  return Graph(2 * n + 2, es);
}

MarkedPlane hanging_ladder(int n) {
  Graph l = ladder(n);
  Vertex h = 2 * n + 2;
  auto x = [](int i) { return i; };
  auto y = [n](int i) { return n + 1 + i; };
  std::vector<Edge> es = l.edges();
  for (Vertex v = 0; v < h; ++v) es.push_back({v, h});
  MarkedPlane m;
  m.graph = Graph(2 * n + 3, es);
  for (int i = 1; i <= n; ++i) {
    Walk q = {x(i - 1), y(i - 1), y(i), x(i)};
    m.quads.push_back(q);
    m.faces.push_back(q);
    m.faces.push_back({x(i - 1), x(i), h});
    m.faces.push_back({y(i), y(i - 1), h});
  }
  m.faces.push_back({y(0), x(0), h});
  m.faces.push_back({x(n), y(n), h});
  return m;
}

MarkedPlane hn_of_p(int n, const Plate& p) {
  if (n < 1) throw ConstructionError("H_n(P) needs n >= 1");
  if (p.outer.size() != 4) throw ConstructionError("the plate's designated face must have length 4");
  if (std::find(p.faces.begin(), p.faces.end(), p.outer) == p.faces.end())
    throw ConstructionError("the plate's designated face is not one of its faces");
  MarkedPlane h = hanging_ladder(n);
  const Walk xn = h.quads.back();  // (x_{n-1}, y_{n-1}, y_n, x_n)
  std::vector<Vertex> map(p.graph.order(), -1);
  map[p.outer[0]] = xn[0];
  map[p.outer[3]] = xn[1];
  map[p.outer[2]] = xn[2];
  map[p.outer[1]] = xn[3];
  Vertex next = h.graph.order();
  for (Vertex v = 0; v < p.graph.order(); ++v)
    if (map[v] < 0) map[v] = next++;
  std::set<Edge> es(h.graph.edges().begin(), h.graph.edges().end());
  for (Edge e : p.graph.edges()) es.insert(make_edge(map[e.u], map[e.v]));
  MarkedPlane out;
  out.graph = Graph(next, std::vector<Edge>(es.begin(), es.end()));
  for (const Walk& f : h.faces)
    if (f != xn) out.faces.push_back(f);
  for (const Walk& f : p.faces) {
    if (f == p.outer) continue;
    Walk w;
    for (Vertex v : f) w.push_back(map[v]);
    out.faces.push_back(w);
  }
  out.quads.assign(h.quads.begin(), h.quads.end() - 1);
  return out;
}

RotationEmbedding plane_embedding(const MarkedPlane& m) {
  RotationEmbedding e = embedding_from_faces(m.graph, m.faces);
  if (euler_genus(e) != 0) throw ConstructionError("face list does not describe a plane embedding");
  return e;
}

namespace {

Graph k7_minus_e() {
  Edge e{0, 1};
  return complete_graph(7).without_edges(std::span<const Edge>(&e, 1));
}

const Walk kC4 = {0, 1, 2, 3};
const Walk kY = {0, 2, 1, 3};

// Relabels so that the walk `w` becomes `target`; other vertices keep their
// relative order after the targets' labels are taken.
RotationEmbedding relabel_walk(const RotationEmbedding& emb, const Walk& w, const Walk& target) {
  int n = emb.graph().order();
  std::vector<Vertex> perm(n, -1);
  std::vector<char> taken(n, 0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    perm[w[i]] = target[i];
    taken[target[i]] = 1;
  }
  Vertex free = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (perm[v] >= 0) continue;
    while (taken[free]) ++free;
    perm[v] = free;
    taken[free] = 1;
  }
  return emb.relabeled(perm);
}

std::optional<Fixture> load_fixture(const std::filesystem::path& path, const Graph& expected, const Walk& cycle) {
  if (!std::filesystem::exists(path)) return std::nullopt;
  EmbeddingCertificate cert = read_certificate(path);
  VerifyResult v = verify_certificate(cert);
  if (!v.valid) throw ConstructionError("cached fixture " + path.string() + " does not verify: " + v.failure);
  RotationEmbedding emb = certificate_embedding(cert);
  if (!(emb.graph() == expected) || !is_facial_walk(emb, reversed(cycle)))
    throw ConstructionError("cached fixture " + path.string() + " is for a different graph or cycle");
  return Fixture{make_distinguished(expected, cycle), emb, true};
}

EmbeddingCertificate fixture_certificate(const RotationEmbedding& emb, const std::string& name, const Walk& cycle,
                                         const std::string& recipe) {
  EmbeddingCertificate cert = make_certificate(emb);
  cert.facial_cycles[name] = cycle;
  cert.provenance["construction"] = "search fixture";
  cert.provenance["recipe"] = recipe;
  return cert;
}

Fixture finish_fixture(const RotationEmbedding& emb, const Graph& g, const std::string& name, const Walk& cycle,
                       const std::string& recipe, const std::optional<std::filesystem::path>& path) {
  EmbeddingCertificate cert = fixture_certificate(emb, name, cycle, recipe);
  VerifyResult v = verify_certificate(cert);
  if (!v.valid) throw ConstructionError("internal error: fixture certificate does not verify: " + v.failure);
  if (path) {
    std::filesystem::create_directories(path->parent_path());
    write_certificate(cert, *path);
  }
  return Fixture{make_distinguished(g, cycle), certificate_embedding(cert), false};
}

}  // namespace

Fixture k8_c4_fixture(const SearchBudget& budget, const std::optional<std::filesystem::path>& cache_dir) {
  Graph k8 = complete_graph(8);
  std::optional<std::filesystem::path> path;
  if (cache_dir) {
    path = *cache_dir / "k8_c4_s2.emb.json";
    if (auto f = load_fixture(*path, k8, kC4)) return *f;
  }
  SearchOutcome o = embeds_on(k8, {true, 2}, budget);
  if (o.decision != Decision::embeddable)
    throw ConstructionError("K8 fixture: no S2 embedding found (" + to_string(o.decision) + ")");
  for (const auto& f : trace_faces(*o.witness)) {
    if (f.size() != 4) continue;
    RotationEmbedding emb = relabel_walk(*o.witness, f.vertices(), reversed(kC4));
    return finish_fixture(emb, k8, "C4", kC4,
                          "first orientable Euler genus <= 4 witness of K8 in search order; its first 4-face relabeled "
                          "to 0,3,2,1",
                          path);
  }
  throw ConstructionError("K8 fixture: the witness has no 4-face");
}

Fixture k7e_y_fixture(const SearchBudget& budget, const std::optional<std::filesystem::path>& cache_dir) {
  Graph g = k7_minus_e();
  std::optional<std::filesystem::path> path;
  if (cache_dir) {
    path = *cache_dir / "k7e_y_s1.emb.json";
    if (auto f = load_fixture(*path, g, kY)) return *f;
  }
  std::optional<RotationEmbedding> found;
  auto visit = [&](const RotationEmbedding& e) {
    for (const auto& f : trace_faces(e)) {
      if (f.size() != 4) continue;
      Walk w = f.vertices();
      for (int r = 0; r < 2; ++r) {
        if ((w[0] == 0 && w[2] == 1) || (w[0] == 1 && w[2] == 0)) {
          found = relabel_walk(e, w, reversed(kY));
          return false;
        }
        std::rotate(w.begin(), w.begin() + 1, w.end());
      }
    }
    return true;
  };
  EnumerationResult r = enumerate_embeddings(g, {true, 1}, visit, budget);
  if (!found)
    throw ConstructionError(std::string("K7-e fixture: no torus embedding with the missing edge's ends opposite on a "
                                        "4-face") +
                            (r.complete ? "" : " within budget"));
  return finish_fixture(*found, g, "Y", kY,
                        "first torus embedding of K7-{0,1} in enumeration order whose 4-face has 0 and 1 opposite; "
                        "relabeled so the face is 0,3,1,2",
                        path);
}

namespace {

int join_count(int g) {
  return g / 2;
}

}  // namespace

FgResult fg_embedding(int g, const Plate& p, const Fixture& k8, const Fixture& k7e) {
  if (g < 2) throw ConstructionError("F_g(P) needs g >= 2");
  int half_up = (g + 1) / 2;
  MarkedPlane base = hn_of_p(half_up + 1, p);
  RotationEmbedding emb = plane_embedding(base);
  CylindricalGraph t4 = make_Tk(4);
  std::map<std::string, int> offsets;
  for (int i = 1; i <= join_count(g); ++i) {
    offsets["K8 at X" + std::to_string(i)] = emb.graph().order();
    emb = t_join_embedding(emb, base.quads[i - 1], k8.embedding, k8.graph.cycle, t4);
  }
  if (g % 2 == 1) {
    offsets["K7-e at X" + std::to_string(half_up)] = emb.graph().order();
    emb = t_join_embedding(emb, base.quads[half_up - 1], k7e.embedding, k7e.graph.cycle, t4);
  }
  FgResult out;
  out.graph = emb.graph();
  out.embedding = emb;
  out.certificate = make_certificate(emb);
  out.certificate.offsets = offsets;
  out.certificate.provenance["construction"] = "F_g(P) by T_4 joins into a hanging ladder over P";
  out.certificate.provenance["g"] = std::to_string(g);
  out.certificate.provenance["plate"] = std::to_string(p.graph.order()) + " vertices, " +
                                        std::to_string(p.graph.size()) + " edges, outer face " +
                                        std::to_string(p.outer[0]) + "," + std::to_string(p.outer[1]) + "," +
                                        std::to_string(p.outer[2]) + "," + std::to_string(p.outer[3]);
  out.certificate.assumptions.push_back(
      "existence only: the embedding certifies genus at most g; minimality is not re-proved");
  return out;
}

FgResult fg_embedding(int g, const Plate& p, const SearchBudget& budget,
                      const std::optional<std::filesystem::path>& cache_dir) {
  Fixture k8 = k8_c4_fixture(budget, cache_dir);
  Fixture k7e = k7e_y_fixture(budget, cache_dir);
  return fg_embedding(g, p, k8, k7e);
}

Graph fg(int g, const Plate& p) {
  if (g < 2) throw ConstructionError("F_g(P) needs g >= 2");
  int half_up = (g + 1) / 2;
  MarkedPlane base = hn_of_p(half_up + 1, p);
  CylindricalGraph t4 = make_Tk(4);
  DistinguishedGraph k8 = make_distinguished(complete_graph(8), kC4);
  DistinguishedGraph k7e = make_distinguished(k7_minus_e(), kY);
  Graph cur = base.graph;
  for (int i = 1; i <= join_count(g); ++i) cur = t_join({cur, base.quads[i - 1]}, k8, t4).graph;
  if (g % 2 == 1) cur = t_join({cur, base.quads[half_up - 1]}, k7e, t4).graph;
  return cur;
}

}  // namespace surfemb
