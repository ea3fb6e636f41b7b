#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "lpstruct/sp/graph.hpp"

namespace lpstruct::sp {

// "graph <nodes> <edges> <source> <sink>" followed by one "tail head cost"
// line per edge, in canonical edge order. '#' starts a comment line.
DirectedGraph read_graph(std::istream& in, const std::string& source = "<stream>");
DirectedGraph read_graph_file(const std::filesystem::path& path);
void write_graph(std::ostream& out, const DirectedGraph& g);

}  // namespace lpstruct::sp
