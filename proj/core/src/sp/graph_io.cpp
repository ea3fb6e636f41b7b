#include "lpstruct/sp/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "lpstruct/error.hpp"
#include "lpstruct/lp/lp_io.hpp"

namespace lpstruct::sp {

namespace {

std::size_t parse_index(const std::string& tok, const std::string& source, std::size_t line) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(tok, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != tok.size() || tok.empty() || tok[0] == '-') throw ParseError(source, line, "not a node index: '" + tok + "'");
  return static_cast<std::size_t>(v);
}

}  // namespace

DirectedGraph read_graph(std::istream& in, const std::string& source) {
  std::string text;
  std::size_t line = 0;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> row_line;
  while (std::getline(in, text)) {
    ++line;
    std::istringstream ss(text);
    std::vector<std::string> tok;
    std::string t;
    while (ss >> t) tok.push_back(t);
    if (tok.empty() || tok.front().starts_with('#')) continue;
    rows.push_back(std::move(tok));
    row_line.push_back(line);
  }
  if (rows.empty() || rows[0].size() != 5 || rows[0][0] != "graph")
    throw ParseError(source, rows.empty() ? line : row_line[0], "expected header 'graph <nodes> <edges> <source> <sink>'");
  const auto& h = rows[0];
  const std::size_t nodes = parse_index(h[1], source, row_line[0]);
  const std::size_t edge_count = parse_index(h[2], source, row_line[0]);
  const std::size_t src = parse_index(h[3], source, row_line[0]);
  const std::size_t sink = parse_index(h[4], source, row_line[0]);
  if (rows.size() - 1 != edge_count)
    throw ParseError(source, line, "header declares " + std::to_string(edge_count) + " edges, found " +
                                       std::to_string(rows.size() - 1));
  std::vector<Edge> edges;
  Vector costs;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != 3) throw ParseError(source, row_line[i], "expected 'tail head cost'");
    edges.push_back({parse_index(rows[i][0], source, row_line[i]), parse_index(rows[i][1], source, row_line[i])});
    costs.push_back(lp::parse_double(rows[i][2], source, row_line[i]));
  }
  try {
    return DirectedGraph(nodes, std::move(edges), std::move(costs), src, sink);
  } catch (const Error& e) {
    throw ParseError(source, line, e.what());
  }
}

DirectedGraph read_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open graph file '" + path.string() + "'");
  return read_graph(in, path.string());
}

void write_graph(std::ostream& out, const DirectedGraph& g) {
  out << "graph " << g.node_count() << ' ' << g.edge_count() << ' ' << g.source() << ' ' << g.sink() << '\n';
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    out << g.edges()[e].tail << ' ' << g.edges()[e].head << ' ' << lp::format_double(g.costs()[e]) << '\n';
}

}  // namespace lpstruct::sp
