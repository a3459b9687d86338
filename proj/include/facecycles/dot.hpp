#pragma once

#include <fstream>
#include <map>
#include <string>

#include "facecycles/graph.hpp"

namespace fc {

/**
 * Writes a graph as DOT text. Optional per-edge classes select a style:
 * 0 = plain, 1 = bold (e.g. a target subgraph), 2 = dashed. Optional
 * vertex colors (0/1) render a bipartition.
 */
inline void write_dot(std::ostream& os, const Graph& g,
                      const std::map<int, int>* edge_class = nullptr,
                      const std::vector<int>* vertex_color = nullptr,
                      const std::string& name = "P") {
  os << "graph \"" << name << "\" {\n";
  os << "  node [shape=circle, width=.25];\n";
  for (int v = 0; v < g.vertex_count(); ++v) {
    os << "  " << v;
    if (vertex_color && (*vertex_color)[v] >= 0)
      os << " [style=filled, fillcolor=" << ((*vertex_color)[v] ? "lightblue" : "lightyellow")
         << "]";
    os << ";\n";
  }
  for (int id = 0; id < g.edge_count(); ++id) {
    auto [u, v] = g.edge(id);
    os << "  " << u << " -- " << v;
    int cls = 0;
    if (edge_class) {
      auto it = edge_class->find(id);
      if (it != edge_class->end()) cls = it->second;
    }
    if (cls == 1) os << " [style=bold, color=red]";
    if (cls == 2) os << " [style=dashed, color=blue]";
    os << ";\n";
  }
  os << "}\n";
}

inline void write_dot_file(const std::string& path, const Graph& g,
                           const std::map<int, int>* edge_class = nullptr,
                           const std::vector<int>* vertex_color = nullptr,
                           const std::string& name = "P") {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  write_dot(out, g, edge_class, vertex_color, name);
}

}  // namespace fc
