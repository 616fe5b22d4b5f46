#include "surfemb/graph_io.hpp"

#include <cctype>
#include <charconv>

namespace surfemb {

ParseError::ParseError(const std::string& what, std::size_t position)
    : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}

namespace {

constexpr std::string_view kHeader = ">>graph6<<";

std::size_t skip_space(std::string_view s, std::size_t i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return i;
}

std::string_view trim(std::string_view s, std::size_t& offset) {
  offset = skip_space(s, 0);
  std::size_t end = s.size();
  while (end > offset && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(offset, end - offset);
}

int read_number(std::string_view s, std::size_t& i, std::size_t base, const char* what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data() + i, s.data() + s.size(), value);
  if (ec != std::errc() || ptr == s.data() + i) throw ParseError(std::string("expected ") + what, base + i);
  i = static_cast<std::size_t>(ptr - s.data());
  return value;
}

}  // namespace

Graph parse_graph6(std::string_view text) {
  std::size_t base = 0;
  auto s = trim(text, base);
  if (s.substr(0, kHeader.size()) == kHeader) {
    s.remove_prefix(kHeader.size());
    base += kHeader.size();
  }
  if (s.empty()) throw ParseError("empty graph6 string", base);
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] < 63 || s[i] > 126) throw ParseError("character outside graph6 range", base + i);

  std::size_t i = 0;
  long n = 0;
  if (s[0] != 126) {
    n = s[0] - 63;
    i = 1;
  } else if (s.size() >= 4 && s[1] != 126) {
    n = ((s[1] - 63) << 12) | ((s[2] - 63) << 6) | (s[3] - 63);
    i = 4;
  } else {
    throw ParseError("unsupported graph6 size prefix", base);
  }

  std::size_t bits = static_cast<std::size_t>(n) * (n - 1) / 2;
  std::size_t need = (bits + 5) / 6;
  if (s.size() - i != need)
    throw ParseError("graph6 body has " + std::to_string(s.size() - i) + " bytes, expected " + std::to_string(need),
                     base + i);

  std::vector<Edge> edges;
  std::size_t k = 0;
  for (Vertex v = 1; v < n; ++v)
    for (Vertex u = 0; u < v; ++u, ++k) {
      int byte = s[i + k / 6] - 63;
      if (byte & (1 << (5 - k % 6))) edges.push_back({u, v});
    }
  // Padding bits must be zero.
  for (; k < need * 6; ++k)
    if ((s[i + k / 6] - 63) & (1 << (5 - k % 6))) throw ParseError("nonzero graph6 padding", base + i + k / 6);
  return Graph(static_cast<int>(n), std::move(edges));
}

std::string to_graph6(const Graph& g) {
  int n = g.order();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(63 + n));
  } else {
    out.push_back(126);
    out.push_back(static_cast<char>(63 + ((n >> 12) & 63)));
    out.push_back(static_cast<char>(63 + ((n >> 6) & 63)));
    out.push_back(static_cast<char>(63 + (n & 63)));
  }
  int acc = 0;
  int filled = 0;
  for (Vertex v = 1; v < n; ++v)
    for (Vertex u = 0; u < v; ++u) {
      acc = (acc << 1) | (g.adjacent(u, v) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(63 + acc));
        acc = filled = 0;
      }
    }
  if (filled > 0) out.push_back(static_cast<char>(63 + (acc << (6 - filled))));
  return out;
}

Graph parse_edge_list(std::string_view text) {
  std::size_t i = skip_space(text, 0);
  int n = read_number(text, i, 0, "vertex count");
  i = skip_space(text, i);
  if (i >= text.size() || text[i] != ';') throw ParseError("expected ';' after vertex count", i);
  ++i;
  std::vector<Edge> edges;
  for (;;) {
    i = skip_space(text, i);
    if (i >= text.size()) break;
    std::size_t at = i;
    int u = read_number(text, i, 0, "edge endpoint");
    if (i >= text.size() || text[i] != '-') throw ParseError("expected '-' inside edge", i);
    ++i;
    int v = read_number(text, i, 0, "edge endpoint");
    if (u == v) throw ParseError("loop " + std::to_string(u) + "-" + std::to_string(v), at);
    if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError("edge endpoint out of range", at);
    edges.push_back(make_edge(u, v));
  }
  try {
    return Graph(n, std::move(edges));
  } catch (const GraphError& e) {
    throw ParseError(e.what(), 0);
  }
}

std::string to_edge_list(const Graph& g) {
  std::string out = std::to_string(g.order()) + ";";
  for (auto [u, v] : g.edges()) out += " " + std::to_string(u) + "-" + std::to_string(v);
  return out;
}

Graph parse_graph(std::string_view text) {
  if (text.find(';') != std::string_view::npos) return parse_edge_list(text);
  return parse_graph6(text);
}

}  // namespace surfemb
