#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "surfemb/canonical.hpp"
#include "surfemb/families.hpp"
#include "surfemb/graph_io.hpp"

using namespace surfemb;

namespace {

bool brute_isomorphic(const Graph& a, const Graph& b) {
  if (a.order() != b.order() || a.size() != b.size()) return false;
  std::vector<Vertex> perm(a.order());
  std::iota(perm.begin(), perm.end(), 0);
  do
    if (a.relabeled(perm) == b) return true;
  while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

Graph random_graph(int n, double p, std::mt19937& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> es;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) es.push_back({u, v});
  return Graph(n, es);
}

Graph shuffled(const Graph& g, std::mt19937& rng) {
  std::vector<Vertex> perm(g.order());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return g.relabeled(perm);
}

}  // namespace

TEST_CASE("canonical form is invariant under relabeling") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 1 + trial % 10;
    Graph g = random_graph(n, 0.5, rng);
    CHECK(canonical_form(g) == canonical_form(shuffled(g, rng)));
    Graph c = canonical_graph(g);
    CHECK(to_graph6(c) == canonical_form(g));
  }
}

TEST_CASE("canonical form separates non-isomorphic graphs (brute force)") {
  std::mt19937 rng(5);
  std::vector<Graph> pool;
  for (int trial = 0; trial < 120; ++trial) pool.push_back(random_graph(6, 0.5, rng));
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = i + 1; j < pool.size(); j += 3) {
      bool same = canonical_form(pool[i]) == canonical_form(pool[j]);
      CHECK(same == brute_isomorphic(pool[i], pool[j]));
    }
}

TEST_CASE("canonical labeling is a permutation and respects the bound") {
  Graph p = quad_plate(2);
  auto perm = canonical_labeling(p);
  std::vector<Vertex> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < p.order(); ++i) CHECK(sorted[i] == i);
  CHECK_THROWS(canonical_form(complete_graph(12)));
  CHECK(canonical_form(complete_graph(12), 12) == to_graph6(complete_graph(12)));
}

TEST_CASE("regular graphs with many automorphisms") {
  // Petersen graph in two labelings.
  std::vector<Edge> es;
  for (int i = 0; i < 5; ++i) {
    es.push_back(make_edge(i, (i + 1) % 5));
    es.push_back(make_edge(i, i + 5));
    es.push_back(make_edge(5 + i, 5 + (i + 2) % 5));
  }
  Graph pet(10, es);
  std::mt19937 rng(3);
  for (int t = 0; t < 10; ++t) CHECK(canonical_form(pet) == canonical_form(shuffled(pet, rng)));
  // The 5-prism is 3-regular on 10 vertices too, but not isomorphic.
  std::vector<Edge> pr;
  for (int i = 0; i < 5; ++i) {
    pr.push_back(make_edge(i, (i + 1) % 5));
    pr.push_back(make_edge(i, i + 5));
    pr.push_back(make_edge(5 + i, 5 + (i + 1) % 5));
  }
  CHECK(canonical_form(pet) != canonical_form(Graph(10, pr)));
}
