#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "facecycles/graph.hpp"
#include "facecycles/lattice.hpp"

namespace fc {

/**
 * A polytopal complex as a face-closed set of faces keyed by their sorted
 * vertex lists, each carrying a dimension label. Vertex indices live in a
 * shared universe (the parent polytope's vertex range).
 */
struct PolytopalComplex {
  int dim = 0;  // max face dimension present
  std::map<std::vector<int>, int> faces;
  int vertex_universe = 0;

  bool contains(const std::vector<int>& f) const { return faces.count(f) > 0; }

  std::vector<std::vector<int>> faces_of_dim(int k) const {
    std::vector<std::vector<int>> out;
    for (const auto& [f, d] : faces)
      if (d == k) out.push_back(f);
    return out;
  }

  /// Every face lies in some dim-dimensional face.
  bool is_pure() const {
    std::vector<std::vector<int>> tops = faces_of_dim(dim);
    for (const auto& [f, d] : faces) {
      if (d == dim) continue;
      bool inside = false;
      for (const auto& t : tops)
        if (detail::is_subset(f, t)) {
          inside = true;
          break;
        }
      if (!inside) return false;
    }
    return true;
  }

  static PolytopalComplex from_faces(std::map<std::vector<int>, int> faces,
                                     int vertex_universe) {
    PolytopalComplex c;
    c.faces = std::move(faces);
    c.vertex_universe = vertex_universe;
    for (const auto& [f, d] : c.faces) c.dim = std::max(c.dim, d);
    return c;
  }
};

/// The boundary complex of a polytope: all lattice faces.
inline PolytopalComplex boundary_complex(const FaceLattice& lat) {
  return PolytopalComplex::from_faces(lat.face_dims(), lat.vertex_count);
}

/**
 * A graph extracted from a complex, with the canonical re-indexing of its
 * 0-faces recorded: graph vertex i corresponds to universe vertex
 * to_universe[i].
 */
struct SubGraph {
  Graph graph;
  std::vector<int> to_universe;

  int from_universe(int u) const {
    auto it = std::lower_bound(to_universe.begin(), to_universe.end(), u);
    if (it == to_universe.end() || *it != u) return -1;
    return static_cast<int>(it - to_universe.begin());
  }
};

/// Vertices are the 0-faces (re-indexed in increasing order), edges the
/// 1-faces.
inline SubGraph graph_of(const PolytopalComplex& c) {
  SubGraph sg;
  for (const auto& [f, d] : c.faces)
    if (d == 0) sg.to_universe.push_back(f[0]);
  std::sort(sg.to_universe.begin(), sg.to_universe.end());
  std::vector<std::pair<int, int>> edges;
  for (const auto& [f, d] : c.faces) {
    if (d != 1) continue;
    if (f.size() != 2) throw NotALattice("1-face with " + std::to_string(f.size()) + " vertices");
    edges.emplace_back(sg.from_universe(f[0]), sg.from_universe(f[1]));
  }
  if (edges.empty()) throw NoEdges();
  sg.graph = Graph::from_edges(static_cast<int>(sg.to_universe.size()), std::move(edges));
  return sg;
}

/**
 * The boundary cycle of a 2-face: its vertices joined by the ambient
 * graph's edges among them, which must form one 2-regular connected graph.
 * Vertex ids are the ambient graph's.
 */
inline Cycle facial_cycle(const Graph& g, const std::vector<int>& two_face) {
  if (two_face.size() < 3) throw Malformed2Face("fewer than 3 vertices");
  std::map<int, std::vector<int>> incident;  // within the induced subgraph
  for (std::size_t i = 0; i < two_face.size(); ++i)
    for (std::size_t j = i + 1; j < two_face.size(); ++j)
      if (g.has_edge(two_face[i], two_face[j])) {
        incident[two_face[i]].push_back(two_face[j]);
        incident[two_face[j]].push_back(two_face[i]);
      }
  for (int v : two_face) {
    auto it = incident.find(v);
    if (it == incident.end() || it->second.size() != 2)
      throw Malformed2Face("vertex " + std::to_string(v) + " has degree " +
                           std::to_string(it == incident.end() ? 0 : it->second.size()));
  }
  // Walk the unique cycle; Cycle::from_vertices canonicalizes.
  std::vector<int> seq{two_face.front()};
  int prev = -1;
  while (true) {
    int u = seq.back();
    const std::vector<int>& nb = incident[u];
    int next = (nb[0] == prev) ? nb[1] : nb[0];
    if (next == seq.front()) break;
    prev = u;
    seq.push_back(next);
    if (seq.size() > two_face.size()) throw Malformed2Face("edges do not close a single cycle");
  }
  if (seq.size() != two_face.size())
    throw Malformed2Face("edges form more than one cycle");
  return Cycle::from_vertices(g, std::move(seq));
}

/// facial_cycle by 2-face index in the lattice's canonical 2-face list,
/// over the polytope graph.
inline Cycle facial_cycle(const FaceLattice& lat, const Graph& g, int two_face_index) {
  return facial_cycle(g, two_face_list(lat).at(two_face_index));
}

/**
 * The union of the first n facets' face complexes (closed under subfaces
 * since lattice faces contained in a facet include all their subfaces).
 */
inline PolytopalComplex prefix_complex(const FaceLattice& lat,
                                       const std::vector<int>& shelling_order, int n) {
  if (n < 1 || n > static_cast<int>(shelling_order.size()))
    throw InputError("prefix length out of range");
  std::map<std::vector<int>, int> faces;
  for (int i = 0; i < n; ++i) {
    const std::vector<int>& fv = lat.facets().at(shelling_order[i]);
    for (int k = 0; k < lat.polytope_dim; ++k)
      for (const auto& f : lat.faces_by_dim[k])
        if (detail::is_subset(f, fv)) faces.emplace(f, k);
  }
  PolytopalComplex c = PolytopalComplex::from_faces(std::move(faces), lat.vertex_count);
  internal_check(c.dim == lat.polytope_dim - 1 && c.is_pure(),
                 "prefix complex must be pure of dimension d-1");
  return c;
}

/// Graph on the common vertices with the common edges (universe indices
/// drive the matching; the result carries its own universe mapping).
inline SubGraph intersect_graphs(const SubGraph& a, const SubGraph& b) {
  SubGraph sg;
  std::set_intersection(a.to_universe.begin(), a.to_universe.end(),
                        b.to_universe.begin(), b.to_universe.end(),
                        std::back_inserter(sg.to_universe));
  std::set<std::pair<int, int>> a_edges;
  for (const auto& [u, v] : a.graph.edges())
    a_edges.emplace(std::min(a.to_universe[u], a.to_universe[v]),
                    std::max(a.to_universe[u], a.to_universe[v]));
  std::vector<std::pair<int, int>> edges;
  for (const auto& [u, v] : b.graph.edges()) {
    int gu = b.to_universe[u], gv = b.to_universe[v];
    if (gu > gv) std::swap(gu, gv);
    if (a_edges.count({gu, gv}))
      edges.emplace_back(sg.from_universe(gu), sg.from_universe(gv));
  }
  sg.graph = Graph::from_edges(static_cast<int>(sg.to_universe.size()), std::move(edges));
  return sg;
}

/**
 * One node per top-dimensional face; nodes adjacent iff the two faces share
 * a face one dimension lower. Node i is tops()[i] in lexicographic order.
 */
inline Graph ridge_adjacency_graph(const PolytopalComplex& c,
                                   std::vector<std::vector<int>>* tops_out = nullptr) {
  if (c.dim < 1) throw NotPure("ridge adjacency needs dimension >= 1");
  if (!c.is_pure()) throw NotPure("complex has a face outside every top face");
  std::vector<std::vector<int>> tops = c.faces_of_dim(c.dim);
  std::sort(tops.begin(), tops.end());
  std::vector<std::pair<int, int>> edges;
  for (const auto& [f, d] : c.faces) {
    if (d != c.dim - 1) continue;
    std::vector<int> holders;
    for (std::size_t t = 0; t < tops.size(); ++t)
      if (detail::is_subset(f, tops[t])) holders.push_back(static_cast<int>(t));
    for (std::size_t i = 0; i < holders.size(); ++i)
      for (std::size_t j = i + 1; j < holders.size(); ++j)
        edges.emplace_back(holders[i], holders[j]);
  }
  if (tops_out) *tops_out = tops;
  return Graph::from_edges(static_cast<int>(tops.size()), std::move(edges));
}

/// BFS reachability over the ridge-adjacency graph.
inline bool is_strongly_connected(const PolytopalComplex& c) {
  return is_connected(ridge_adjacency_graph(c));
}

/// Whether the complex's graph is connected. For strongly connected
/// complexes this must come out true (a fact the tests assert).
inline bool graph_connectivity_check(const PolytopalComplex& c) {
  if (c.dim < 1) throw NotPure("connectivity check needs dimension >= 1");
  if (!c.is_pure()) throw NotPure("complex has a face outside every top face");
  return is_connected(graph_of(c).graph);
}

/// The polytope's graph G(P): identity vertex ids, edges the 1-faces.
inline Graph polytope_graph(const FaceLattice& lat) {
  if (lat.polytope_dim < 2 || lat.faces_by_dim.size() < 2)
    throw NoEdges();
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : lat.faces_by_dim[1]) edges.emplace_back(e[0], e[1]);
  return Graph::from_edges(lat.vertex_count, std::move(edges));
}

}  // namespace fc
