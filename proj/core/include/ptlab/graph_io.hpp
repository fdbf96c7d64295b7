#pragma once

#include <stdexcept>
#include <string>

#include "ptlab/graph.hpp"

namespace ptlab {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Two accepted formats.
//   Edge list: first line "n m", then exactly m lines "u v" with 0 <= u < v < n.
//   Adjacency matrix: first line "n", then n lines of n characters from {0,1};
//   must be symmetric with a zero diagonal.
Graph parse_graph(const std::string& text);

// Edge-list form, edges sorted lexicographically.
std::string serialize_edge_list(const Graph& g);

Graph read_graph_file(const std::string& path);
void write_graph_file(const Graph& g, const std::string& path);

}  // namespace ptlab
