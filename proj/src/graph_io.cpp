#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "fpptree/error.hpp"
#include "fpptree/graph.hpp"

namespace fpptree {

void write_graph_text(std::ostream& out, const Graph& g) {
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

namespace {

bool next_data_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

}  // namespace

Graph read_graph_text(std::istream& in) {
  std::string line;
  if (!next_data_line(in, line)) throw InvalidGraph("empty graph file");
  std::istringstream header(line);
  long long n = -1;
  long long m = -1;
  std::string extra;
  if (!(header >> n >> m) || (header >> extra) || n <= 0 || m < 0) {
    throw InvalidGraph("malformed header line: '" + line + "'");
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_data_line(in, line)) {
      throw InvalidGraph("expected " + std::to_string(m) + " edge lines, found " + std::to_string(i));
    }
    std::istringstream row(line);
    long long u = -1;
    long long v = -1;
    if (!(row >> u >> v) || (row >> extra) || u < 0 || v < 0) {
      throw InvalidGraph("malformed edge line " + std::to_string(i + 1) + ": '" + line + "'");
    }
    if (u >= n || v >= n) throw InvalidGraph("edge line " + std::to_string(i + 1) + " refers to a vertex >= n");
    if (u >= v) throw InvalidGraph("edge line " + std::to_string(i + 1) + " must satisfy u < v");
    edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v)});
  }
  if (next_data_line(in, line)) throw InvalidGraph("trailing data after the last edge line");
  return Graph::from_edges(static_cast<std::size_t>(n), std::move(edges));
}

}  // namespace fpptree
