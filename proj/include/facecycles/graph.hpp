#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "facecycles/errors.hpp"

namespace fc {

/// Word-packed bit vector; the GF(2) workhorse.
class Bits {
 public:
  Bits() = default;
  explicit Bits(int size) : size_(size), w_((size + 63) / 64, 0) {}

  int size() const { return size_; }
  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(int i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }
  void reset(int i) { w_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }
  void flip(int i) { w_[i >> 6] ^= uint64_t(1) << (i & 63); }

  Bits& operator^=(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
  }
  Bits& operator&=(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  Bits& operator|=(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  friend Bits operator^(Bits a, const Bits& b) { return a ^= b; }
  friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
  friend Bits operator|(Bits a, const Bits& b) { return a |= b; }
  friend bool operator==(const Bits& a, const Bits& b) {
    return a.size_ == b.size_ && a.w_ == b.w_;
  }
  friend bool operator!=(const Bits& a, const Bits& b) { return !(a == b); }
  friend bool operator<(const Bits& a, const Bits& b) { return a.w_ < b.w_; }

  bool none() const {
    for (uint64_t w : w_)
      if (w) return false;
    return true;
  }
  bool any() const { return !none(); }

  int count() const {
    int c = 0;
    for (uint64_t w : w_) c += __builtin_popcountll(w);
    return c;
  }

  /// Index of the lowest set bit, or -1.
  int first_set() const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i]) return static_cast<int>(i * 64 + __builtin_ctzll(w_[i]));
    return -1;
  }

  /// Lowest set bit strictly above i, or -1.
  int next_set(int i) const {
    ++i;
    if (i >= size_) return -1;
    std::size_t word = i >> 6;
    uint64_t w = w_[word] & (~uint64_t(0) << (i & 63));
    while (true) {
      if (w) return static_cast<int>(word * 64 + __builtin_ctzll(w));
      if (++word >= w_.size()) return -1;
      w = w_[word];
    }
  }

 private:
  int size_ = 0;
  std::vector<uint64_t> w_;
};

/**
 * A simple undirected graph with a canonical edge indexing fixed at
 * construction: edges are (u, v) pairs with u < v, sorted lexicographically.
 * EdgeSets reference this indexing as their GF(2) basis.
 */
class Graph {
 public:
  Graph() = default;

  static Graph from_edges(int vertex_count, std::vector<std::pair<int, int>> edges) {
    Graph g;
    g.vertex_count_ = vertex_count;
    for (auto& [u, v] : edges) {
      if (u == v) throw InputError("loop edge");
      if (u > v) std::swap(u, v);
      if (u < 0 || v >= vertex_count) throw InputError("edge endpoint out of range");
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    g.edges_ = std::move(edges);
    g.adjacency_.assign(vertex_count, {});
    for (std::size_t i = 0; i < g.edges_.size(); ++i) {
      auto [u, v] = g.edges_[i];
      g.adjacency_[u].push_back(v);
      g.adjacency_[v].push_back(u);
      g.edge_index_.emplace(g.edges_[i], static_cast<int>(i));
    }
    for (auto& adj : g.adjacency_) std::sort(adj.begin(), adj.end());
    return g;
  }

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  std::pair<int, int> edge(int id) const { return edges_[id]; }
  const std::vector<int>& neighbors(int v) const { return adjacency_[v]; }

  int edge_id(int u, int v) const {
    if (u > v) std::swap(u, v);
    auto it = edge_index_.find({u, v});
    return it == edge_index_.end() ? -1 : it->second;
  }
  bool has_edge(int u, int v) const { return edge_id(u, v) >= 0; }

 private:
  int vertex_count_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adjacency_;
  std::map<std::pair<int, int>, int> edge_index_;
};

/**
 * A dense GF(2) vector over an ambient graph's edge indexing; the
 * representation of spanning subgraphs. XOR is symmetric difference.
 */
class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(const Graph& g) : g_(&g), bits_(g.edge_count()) {}
  EdgeSet(const Graph& g, Bits bits) : g_(&g), bits_(std::move(bits)) {}

  const Graph& ambient() const { return *g_; }
  const Bits& bits() const { return bits_; }

  bool test(int edge_id) const { return bits_.test(edge_id); }
  void set(int edge_id) { bits_.set(edge_id); }
  void flip(int edge_id) { bits_.flip(edge_id); }
  void set(int u, int v) {
    int id = g_->edge_id(u, v);
    if (id < 0) throw InputError("edge not in ambient graph");
    bits_.set(id);
  }

  int count() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }

  EdgeSet& operator^=(const EdgeSet& o) {
    require_same_ambient(o);
    bits_ ^= o.bits_;
    return *this;
  }
  EdgeSet& operator&=(const EdgeSet& o) {
    require_same_ambient(o);
    bits_ &= o.bits_;
    return *this;
  }
  friend EdgeSet operator^(EdgeSet a, const EdgeSet& b) { return a ^= b; }
  friend EdgeSet operator&(EdgeSet a, const EdgeSet& b) { return a &= b; }
  friend bool operator==(const EdgeSet& a, const EdgeSet& b) {
    return a.g_ == b.g_ && a.bits_ == b.bits_;
  }
  friend bool operator!=(const EdgeSet& a, const EdgeSet& b) { return !(a == b); }

  template <typename Fn>
  void for_each_edge(Fn&& fn) const {
    for (int id = bits_.first_set(); id >= 0; id = bits_.next_set(id)) fn(id);
  }

  std::vector<int> edge_ids() const {
    std::vector<int> ids;
    for_each_edge([&](int id) { ids.push_back(id); });
    return ids;
  }

  /// Degree of each vertex in the spanning subgraph.
  std::vector<int> degrees() const {
    std::vector<int> deg(g_->vertex_count(), 0);
    for_each_edge([&](int id) {
      auto [u, v] = g_->edge(id);
      ++deg[u];
      ++deg[v];
    });
    return deg;
  }

 private:
  void require_same_ambient(const EdgeSet& o) const {
    if (g_ != o.g_) throw AmbientMismatch();
  }

  const Graph* g_ = nullptr;
  Bits bits_;
};

/**
 * A cycle as a cyclic sequence of distinct vertices plus its edge set.
 * Canonical form: starts at the smallest vertex and proceeds toward its
 * smaller-indexed neighbor, so equal cycles compare equal byte-for-byte.
 */
struct Cycle {
  std::vector<int> vertices;
  EdgeSet edge_set;

  static Cycle from_vertices(const Graph& g, std::vector<int> seq) {
    if (seq.size() < 3) throw InputError("cycle needs at least 3 vertices");
    {
      std::vector<int> sorted = seq;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InputError("cycle repeats a vertex");
    }
    // Rotate to the minimum, then orient toward the smaller neighbor.
    auto min_it = std::min_element(seq.begin(), seq.end());
    std::rotate(seq.begin(), min_it, seq.end());
    if (seq.back() < seq[1]) {
      std::reverse(seq.begin() + 1, seq.end());
    }
    Cycle c{std::move(seq), EdgeSet(g)};
    for (std::size_t i = 0; i < c.vertices.size(); ++i) {
      int u = c.vertices[i];
      int v = c.vertices[(i + 1) % c.vertices.size()];
      int id = g.edge_id(u, v);
      if (id < 0) throw InputError("consecutive cycle vertices are not adjacent");
      c.edge_set.set(id);
    }
    return c;
  }

  int length() const { return static_cast<int>(vertices.size()); }
};

// ---- traversal utilities -------------------------------------------------

/// Component label per vertex; BFS from the smallest unvisited index.
inline std::vector<int> connected_components(const Graph& g) {
  std::vector<int> comp(g.vertex_count(), -1);
  int next = 0;
  for (int s = 0; s < g.vertex_count(); ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = next;
    std::deque<int> queue{s};
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (int v : g.neighbors(u))
        if (comp[v] < 0) {
          comp[v] = next;
          queue.push_back(v);
        }
    }
    ++next;
  }
  return comp;
}

inline int component_count(const Graph& g) {
  std::vector<int> comp = connected_components(g);
  return comp.empty() ? 0 : 1 + *std::max_element(comp.begin(), comp.end());
}

inline bool is_connected(const Graph& g) {
  return g.vertex_count() <= 1 || component_count(g) == 1;
}

/**
 * Restriction of an ambient graph to a vertex mask and edge set; used for
 * BFS inside prefix/facet/intersection subgraphs without re-indexing.
 */
struct SubgraphMask {
  Bits vertices;  // over ambient vertex ids
  Bits edges;     // over ambient edge ids
};

/// Is the masked subgraph connected on its (nonempty) vertex support?
inline bool masked_connected(const Graph& g, const SubgraphMask& m) {
  int start = m.vertices.first_set();
  if (start < 0) return false;
  Bits seen(g.vertex_count());
  seen.set(start);
  std::deque<int> queue{start};
  int reached = 1;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int v : g.neighbors(u)) {
      int id = g.edge_id(u, v);
      if (!m.edges.test(id) || seen.test(v)) continue;
      seen.set(v);
      ++reached;
      queue.push_back(v);
    }
  }
  return reached == m.vertices.count();
}

/**
 * Shortest src-dst path inside the masked subgraph by BFS with
 * smallest-index tie-breaking. Returns the vertex sequence src..dst;
 * empty when unreachable.
 */
inline std::vector<int> masked_shortest_path(const Graph& g, const SubgraphMask& m,
                                             int src, int dst) {
  std::vector<int> parent(g.vertex_count(), -2);
  parent[src] = -1;
  std::deque<int> queue{src};
  while (!queue.empty() && parent[dst] == -2) {
    int u = queue.front();
    queue.pop_front();
    for (int v : g.neighbors(u)) {  // neighbors are sorted: smallest index first
      if (parent[v] != -2 || !m.vertices.test(v)) continue;
      int id = g.edge_id(u, v);
      if (!m.edges.test(id)) continue;
      parent[v] = u;
      queue.push_back(v);
    }
  }
  if (parent[dst] == -2) return {};
  std::vector<int> path;
  for (int v = dst; v != -1; v = parent[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

/// Result of the BFS 2-coloring: a coloring, or an odd cycle witness.
struct BipartiteResult {
  bool bipartite = false;
  std::vector<int> coloring;   // per vertex, 0/1 (valid iff bipartite)
  std::vector<int> odd_cycle;  // vertex sequence of an odd cycle (iff not)
};

inline BipartiteResult is_bipartite(const Graph& g) {
  BipartiteResult res;
  res.coloring.assign(g.vertex_count(), -1);
  std::vector<int> parent(g.vertex_count(), -1);
  for (int s = 0; s < g.vertex_count(); ++s) {
    if (res.coloring[s] >= 0) continue;
    res.coloring[s] = 0;
    std::deque<int> queue{s};
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (int v : g.neighbors(u)) {
        if (res.coloring[v] < 0) {
          res.coloring[v] = 1 - res.coloring[u];
          parent[v] = u;
          queue.push_back(v);
        } else if (res.coloring[v] == res.coloring[u]) {
          // Odd cycle: paths from u and v up to their lowest common
          // ancestor in the BFS forest, joined by the edge uv.
          std::vector<int> up_u{u}, up_v{v};
          auto depth = [&](int x) {
            int d = 0;
            for (; parent[x] != -1; x = parent[x]) ++d;
            return d;
          };
          int du = depth(u), dv = depth(v);
          int a = u, b = v;
          while (du > dv) { a = parent[a]; up_u.push_back(a); --du; }
          while (dv > du) { b = parent[b]; up_v.push_back(b); --dv; }
          while (a != b) {
            a = parent[a]; up_u.push_back(a);
            b = parent[b]; up_v.push_back(b);
          }
          res.odd_cycle = up_u;  // u .. lca
          for (auto it = up_v.rbegin() + 1; it != up_v.rend(); ++it)
            res.odd_cycle.push_back(*it);  // lca(excluded) .. v
          res.bipartite = false;
          return res;
        }
      }
    }
  }
  res.bipartite = true;
  return res;
}

}  // namespace fc
