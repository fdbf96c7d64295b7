#include "ptlab/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace ptlab {

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char ch : text) {
    if (ch == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

bool parse_ints(const std::string& line, std::vector<long long>* out) {
  out->clear();
  std::istringstream in(line);
  long long v;
  while (in >> v) out->push_back(v);
  std::string rest;
  in.clear();
  in >> rest;
  return rest.empty();
}

Graph parse_edge_list(const std::vector<std::string>& lines, long long n, long long m) {
  if (n < 0) throw ParseError(1, "negative vertex count");
  if (m < 0) throw ParseError(1, "negative edge count");
  if (static_cast<long long>(lines.size()) - 1 < m)
    throw ParseError(static_cast<int>(lines.size()), "expected " + std::to_string(m) + " edge lines");
  Graph g(static_cast<int>(n));
  std::vector<long long> nums;
  long long edges_seen = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const int lineno = static_cast<int>(i) + 1;
    if (lines[i].find_first_not_of(" \t") == std::string::npos) continue;
    if (!parse_ints(lines[i], &nums) || nums.size() != 2)
      throw ParseError(lineno, "expected 'u v'");
    const long long u = nums[0];
    const long long v = nums[1];
    if (u == v) throw ParseError(lineno, "self-loop at vertex " + std::to_string(u));
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw ParseError(lineno, "vertex id out of range [0," + std::to_string(n) + ")");
    if (u > v) throw ParseError(lineno, "endpoints must satisfy u < v");
    if (g.edge(static_cast<int>(u), static_cast<int>(v)))
      throw ParseError(lineno, "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    g.set_edge(static_cast<int>(u), static_cast<int>(v));
    ++edges_seen;
  }
  if (edges_seen != m)
    throw ParseError(static_cast<int>(lines.size()),
                     "header declares " + std::to_string(m) + " edges, found " + std::to_string(edges_seen));
  return g;
}

Graph parse_matrix(const std::vector<std::string>& lines, long long n) {
  if (n < 0) throw ParseError(1, "negative vertex count");
  if (static_cast<long long>(lines.size()) - 1 < n)
    throw ParseError(static_cast<int>(lines.size()), "expected " + std::to_string(n) + " matrix rows");
  Graph g(static_cast<int>(n));
  for (long long i = 0; i < n; ++i) {
    const int lineno = static_cast<int>(i) + 2;
    const std::string& row = lines[static_cast<std::size_t>(i + 1)];
    if (static_cast<long long>(row.size()) != n)
      throw ParseError(lineno, "row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(n));
    for (long long j = 0; j < n; ++j) {
      const char c = row[static_cast<std::size_t>(j)];
      if (c != '0' && c != '1') throw ParseError(lineno, "matrix entries must be 0 or 1");
      if (c == '1' && i == j) throw ParseError(lineno, "nonzero diagonal");
      if (c == '1' && j > i) g.set_edge(static_cast<int>(i), static_cast<int>(j));
    }
  }
  // Symmetry check against the filled upper triangle.
  for (long long i = 0; i < n; ++i) {
    const std::string& row = lines[static_cast<std::size_t>(i + 1)];
    for (long long j = 0; j < i; ++j)
      if ((row[static_cast<std::size_t>(j)] == '1') != g.edge(static_cast<int>(i), static_cast<int>(j)))
        throw ParseError(static_cast<int>(i) + 2, "matrix is not symmetric");
  }
  return g;
}

}  // namespace

Graph parse_graph(const std::string& text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw ParseError(1, "empty input");
  std::vector<long long> header;
  if (!parse_ints(lines[0], &header) || header.empty() || header.size() > 2)
    throw ParseError(1, "header must be 'n m' (edge list) or 'n' (matrix)");
  if (header.size() == 2) return parse_edge_list(lines, header[0], header[1]);
  return parse_matrix(lines, header[0]);
}

std::string serialize_edge_list(const Graph& g) {
  std::ostringstream out;
  out << g.n() << ' ' << g.edge_count() << '\n';
  for (int u = 0; u < g.n(); ++u)
    for (int v = u + 1; v < g.n(); ++v)
      if (g.edge(u, v)) out << u << ' ' << v << '\n';
  return out.str();
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_graph(buf.str());
  } catch (const ParseError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void write_graph_file(const Graph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write graph file: " + path);
  out << serialize_edge_list(g);
}

}  // namespace ptlab
