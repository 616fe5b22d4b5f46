#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "surfemb/graph.hpp"

namespace surfemb {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Standard graph6 (with optional ">>graph6<<" header).
Graph parse_graph6(std::string_view text);
std::string to_graph6(const Graph& g);

// "n; u-v u-v ..." with whitespace-separated edges. "4;" is the edgeless graph.
Graph parse_edge_list(std::string_view text);
std::string to_edge_list(const Graph& g);

// Dispatches on the presence of ';'. Surrounding whitespace is ignored.
Graph parse_graph(std::string_view text);

}  // namespace surfemb
