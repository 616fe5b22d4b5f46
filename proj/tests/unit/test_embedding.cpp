#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "surfemb/embedding.hpp"
#include "surfemb/families.hpp"
#include "surfemb/search.hpp"

using namespace surfemb;

namespace {

RotationEmbedding random_embedding(const Graph& g, std::mt19937& rng, bool signs) {
  std::vector<std::vector<Vertex>> rot(g.order());
  for (Vertex v = 0; v < g.order(); ++v) {
    rot[v] = g.neighbors(v);
    std::shuffle(rot[v].begin(), rot[v].end(), rng);
  }
  std::vector<int> sig(g.size(), 1);
  if (signs)
    for (auto& s : sig) s = (rng() & 1) ? -1 : 1;
  return RotationEmbedding(g, rot, sig);
}

Graph random_connected(int n, double p, std::mt19937& rng) {
  std::bernoulli_distribution coin(p);
  for (;;) {
    std::vector<Edge> es;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (coin(rng)) es.push_back({u, v});
    Graph g(n, es);
    if (g.connected()) return g;
  }
}

// Plane K4: outer triangle 0-1-2 and hub 3.
RotationEmbedding planar_k4() {
  std::vector<Walk> faces = {{0, 1, 2}, {1, 0, 3}, {2, 1, 3}, {0, 2, 3}};
  return embedding_from_faces(complete_graph(4), faces);
}

}  // namespace

TEST_CASE("surface names") {
  CHECK(SurfaceSpec::parse("S1") == SurfaceSpec{true, 1});
  CHECK(SurfaceSpec::parse("N2") == SurfaceSpec{false, 2});
  CHECK(SurfaceSpec{false, 3}.name() == "N3");
  CHECK(SurfaceSpec{true, 2}.euler_genus() == 4);
  CHECK_THROWS(SurfaceSpec::parse("N0"));
  CHECK_THROWS(SurfaceSpec::parse("T1"));
}

TEST_CASE("planar K4 from faces") {
  RotationEmbedding e = planar_k4();
  CHECK(euler_genus(e) == 0);
  CHECK(is_orientable(e));
  CHECK(surface_of(e) == SurfaceSpec::sphere());
  CHECK(face_size_multiset(e) == std::map<int, int>{{3, 4}});
  CHECK(is_facial_walk(e, std::vector<Vertex>{1, 2, 0}));
  CHECK(!is_facial_walk(e, std::vector<Vertex>{2, 1, 0}));
  CHECK(is_facial_cycle(e, std::vector<Vertex>{2, 1, 0}));
  CHECK(triangulation_edge_target(4, 0) == 6);
}

TEST_CASE("rotation validation") {
  Graph k3 = complete_graph(3);
  CHECK_THROWS_AS(RotationEmbedding(k3, {{1, 2}, {0, 2}, {0, 0}}), EmbeddingError);
  CHECK_THROWS_AS(RotationEmbedding(k3, {{1, 2}, {0, 2}}), EmbeddingError);
  CHECK_THROWS_AS(RotationEmbedding(k3, {{1, 2}, {0, 2}, {0, 1}}, {1, 1, 2}), EmbeddingError);
  try {
    RotationEmbedding(k3, {{1, 2}, {0, 2}, {0, 0}});
  } catch (const EmbeddingError& e) {
    CHECK(std::string(e.what()).find("rotation not a permutation") != std::string::npos);
  }
}

TEST_CASE("face tracing agrees with the flag oracle") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 400; ++trial) {
    Graph g = random_connected(3 + trial % 6, 0.6, rng);
    RotationEmbedding e = random_embedding(g, rng, trial % 2 == 1);
    int eg = euler_genus(e);
    CHECK(eg == oracle::euler_genus(g, e.rotation(), e.signature()));
    CHECK(is_orientable(e) == oracle::orientable(g, e.signature()));
    auto faces = trace_faces(e);
    std::size_t total = 0;
    for (const auto& f : faces) total += f.size();
    CHECK(total == 2 * g.size());
    // Every face walk is traced again when started from any of its steps.
    for (const auto& f : faces) CHECK(is_facial_walk(e, f.vertices()));
  }
}

TEST_CASE("mirror, switching and normalisation keep the surface") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    Graph g = random_connected(4 + trial % 4, 0.6, rng);
    RotationEmbedding e = random_embedding(g, rng, true);
    SurfaceSpec s = surface_of(e);
    auto sizes = face_size_multiset(e);
    CHECK(surface_of(e.mirrored()) == s);
    Vertex v = static_cast<Vertex>(rng() % g.order());
    CHECK(surface_of(e.switched(v)) == s);
    CHECK(face_size_multiset(e.switched(v)) == sizes);
    RotationEmbedding nrm = e.normalized();
    CHECK(surface_of(nrm) == s);
    CHECK(face_size_multiset(nrm) == sizes);
    CHECK(nrm.normalized() == nrm);
    if (s.orientable) CHECK(nrm.negative_edges().empty());
  }
}

TEST_CASE("relabeling keeps faces") {
  RotationEmbedding e = planar_k4();
  std::vector<Vertex> perm{2, 0, 3, 1};
  RotationEmbedding r = e.relabeled(perm);
  CHECK(euler_genus(r) == 0);
  CHECK(is_facial_walk(r, std::vector<Vertex>{2, 0, 3}));
}

TEST_CASE("embedding from faces rejects inconsistent walks") {
  std::vector<Walk> bad = {{0, 1, 2}, {0, 1, 3}, {2, 1, 3}, {0, 2, 3}};
  CHECK_THROWS(embedding_from_faces(complete_graph(4), bad));
}

TEST_CASE("K4 face quads inducing K4") {
  // K4 on the projective plane has three 4-faces, each spanning all of K4.
  Graph k4 = complete_graph(4);
  int found = 0;
  oracle::for_each_rotation(k4, [&](const auto& rot) {
    oracle::for_each_signature(k4.size(), [&](const std::vector<int>& sig) {
      RotationEmbedding e(k4, rot, sig);
      if (face_size_multiset(e) == std::map<int, int>{{4, 3}}) {
        CHECK(quad_faces_inducing_K4(e) == 3);
        ++found;
      }
    });
  });
  CHECK(found > 0);
}

TEST_CASE("flips preserve the surface") {
  std::mt19937 rng(17);
  int flips = 0;
  for (int trial = 0; trial < 300 && flips < 100; ++trial) {
    Graph g = random_connected(5 + trial % 3, 0.7, rng);
    RotationEmbedding e = random_embedding(g, rng, trial % 2 == 0);
    auto faces = trace_faces(e);
    for (std::size_t fi = 0; fi < faces.size(); ++fi) {
      const auto& f = faces[fi];
      for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < f.size(); ++j) {
          Vertex u = f.steps[i].from, v = f.steps[j].from;
          if (u == v || !g.adjacent(u, v)) continue;
          try {
            RotationEmbedding r = flip_edge(e, make_edge(u, v), fi, i, j);
            CHECK(surface_of(r) == surface_of(e));
            CHECK(trace_faces(r).size() == faces.size());
            ++flips;
          } catch (const EmbeddingError&) {
          }
        }
    }
  }
  CHECK(flips >= 100);
}

TEST_CASE("ensure_4face") {
  RotationEmbedding k4 = planar_k4();
  CHECK_THROWS_AS(ensure_4face(k4), EmbeddingError);
  // A plane 5-wheel minus one spoke has a 4-face already.
  std::mt19937 rng(1);
  int made = 0;
  for (int trial = 0; trial < 300; ++trial) {
    Graph g = random_connected(6, 0.7, rng);
    RotationEmbedding e = random_embedding(g, rng, false);
    auto sizes = face_size_multiset(e);
    bool has4 = sizes.count(4) > 0;
    bool large = sizes.rbegin()->first >= 5;
    if (has4) {
      CHECK(ensure_4face(e) == e);
      continue;
    }
    if (!large) continue;
    try {
      RotationEmbedding r = ensure_4face(e);
      CHECK(face_size_multiset(r).count(4) == 1);
      CHECK(surface_of(r) == surface_of(e));
      ++made;
    } catch (const EmbeddingError& err) {
      CHECK(std::string(err.what()).find("precondition") != std::string::npos);
    }
  }
  CHECK(made > 0);
}

TEST_CASE("ensure_4face when the chord borders the large face") {
  // K5 on the torus with faces {3:4, 8:1}: in some of these every chord ux of
  // a window u,v,w,x lies on the 8-face itself.
  int made = 0;
  enumerate_embeddings(complete_graph(5), SurfaceSpec::parse("S1"),
                       [&](const RotationEmbedding& e) {
                         if (face_size_multiset(e) != std::map<int, int>{{3, 4}, {8, 1}}) return true;
                         RotationEmbedding r = ensure_4face(e);
                         CHECK(face_size_multiset(r).count(4) > 0);
                         CHECK(surface_of(r) == surface_of(e));
                         CHECK(r.graph() == e.graph());
                         ++made;
                         return true;
                       },
                       SearchBudget{});
  CHECK(made == 75);
}
