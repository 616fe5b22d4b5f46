#include <doctest.h>

#include <random>

#include "surfemb/families.hpp"
#include "surfemb/graph_io.hpp"

using namespace surfemb;

namespace {

// Reference encoder written directly from the format description.
std::string reference_graph6(const Graph& g) {
  int n = g.order();
  std::string out;
  if (n <= 62) {
    out += static_cast<char>(63 + n);
  } else {
    out += static_cast<char>(126);
    for (int shift : {12, 6, 0}) out += static_cast<char>(63 + ((n >> shift) & 63));
  }
  std::vector<int> bits;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) bits.push_back(g.adjacent(i, j) ? 1 : 0);
  while (bits.size() % 6) bits.push_back(0);
  for (std::size_t k = 0; k < bits.size(); k += 6) {
    int x = 0;
    for (int b = 0; b < 6; ++b) x = (x << 1) | bits[k + b];
    out += static_cast<char>(63 + x);
  }
  return out;
}

Graph random_graph(int n, double p, std::mt19937& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> es;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) es.push_back({u, v});
  return Graph(n, es);
}

}  // namespace

TEST_CASE("graph6 known strings") {
  CHECK(to_graph6(complete_graph(4)) == "C~");
  CHECK(to_graph6(Graph(0)) == "?");
  CHECK(to_graph6(complete_graph(2)) == "A_");
  CHECK(parse_graph6("C~") == complete_graph(4));
  CHECK(parse_graph6(">>graph6<<C~") == complete_graph(4));
  CHECK(to_graph6(complete_graph(5)) == "D~{");
}

TEST_CASE("graph6 round trip against the reference encoder") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    int n = trial % 13;
    Graph g = random_graph(n, 0.4, rng);
    std::string s = to_graph6(g);
    CHECK(s == reference_graph6(g));
    CHECK(parse_graph6(s) == g);
  }
  Graph big = random_graph(70, 0.1, rng);
  CHECK(to_graph6(big) == reference_graph6(big));
  CHECK(parse_graph6(to_graph6(big)) == big);
}

TEST_CASE("graph6 rejects malformed input") {
  CHECK_THROWS_AS(parse_graph6(""), ParseError);
  CHECK_THROWS_AS(parse_graph6("C"), ParseError);
  CHECK_THROWS_AS(parse_graph6("C~~"), ParseError);
  CHECK_THROWS_AS(parse_graph6("C\x01"), ParseError);
  // Padding bits of K2 must be zero.
  CHECK_THROWS_AS(parse_graph6("A`"), ParseError);
}

TEST_CASE("edge list format") {
  Graph g = parse_edge_list("4; 0-1 1-2 2-3");
  CHECK(g.size() == 3);
  CHECK(to_edge_list(g) == "4; 0-1 1-2 2-3");
  CHECK(parse_edge_list("3;").size() == 0);
  CHECK(parse_graph("  C~ \n") == complete_graph(4));
  CHECK(parse_graph("2; 0-1") == complete_graph(2));
  try {
    parse_edge_list("3; 0-1 1-1");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() > 0);
  }
  CHECK_THROWS_AS(parse_edge_list("3; 0-5"), ParseError);
  CHECK_THROWS_AS(parse_edge_list("3; 0-1 0-1"), ParseError);
  CHECK_THROWS_AS(parse_edge_list("x; 0-1"), ParseError);
}
