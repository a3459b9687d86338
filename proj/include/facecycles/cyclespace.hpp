#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "facecycles/complex.hpp"
#include "facecycles/graph.hpp"

namespace fc {

/// Vertices of odd degree, empty iff the edge set is an even subgraph.
inline std::vector<int> odd_degree_vertices(const EdgeSet& e) {
  std::vector<int> odd;
  std::vector<int> deg = e.degrees();
  for (int v = 0; v < static_cast<int>(deg.size()); ++v)
    if (deg[v] % 2) odd.push_back(v);
  return odd;
}

inline bool is_even(const EdgeSet& e) { return odd_degree_vertices(e).empty(); }

/**
 * Splits an even subgraph into edge-disjoint cycles whose union is the
 * input. Greedy peeling: walk from the smallest-index vertex of nonzero
 * degree, always over the smallest-index unused incident edge, and emit the
 * simple cycle closed off at the first repeated vertex.
 */
inline std::vector<Cycle> split_into_cycles(const EdgeSet& e) {
  std::vector<int> odd = odd_degree_vertices(e);
  if (!odd.empty()) throw NotEven(std::move(odd));
  const Graph& g = e.ambient();
  Bits remaining = e.bits();
  std::vector<Cycle> cycles;
  while (remaining.any()) {
    int first_edge = remaining.first_set();
    int start = g.edge(first_edge).first;
    // Walk until a vertex repeats.
    std::vector<int> walk{start};
    std::vector<int> pos_in_walk(g.vertex_count(), -1);
    pos_in_walk[start] = 0;
    int at = start;
    int repeat_from;
    while (true) {
      int next = -1, via = -1;
      for (int nb : g.neighbors(at)) {
        int id = g.edge_id(at, nb);
        if (remaining.test(id)) {
          next = nb;
          via = id;
          break;
        }
      }
      internal_check(next >= 0, "even subgraph walk stuck before closing a cycle");
      remaining.reset(via);
      if (pos_in_walk[next] >= 0) {
        repeat_from = pos_in_walk[next];
        break;
      }
      pos_in_walk[next] = static_cast<int>(walk.size());
      walk.push_back(next);
      at = next;
    }
    // Edges on the discarded prefix go back into the pool.
    for (int i = 0; i < repeat_from; ++i)
      remaining.set(g.edge_id(walk[i], walk[i + 1]));
    cycles.push_back(Cycle::from_vertices(
        g, std::vector<int>(walk.begin() + repeat_from, walk.end())));
  }
  return cycles;
}

/// dim Z(G) = |E| - |V| + number of connected components.
inline int cycle_space_dimension(const Graph& g) {
  return g.edge_count() - g.vertex_count() + component_count(g);
}

/**
 * The facial-cycle generating set of Z(G(P)): one row per 2-face in
 * canonical order (the spanning set of the cycle space, per the rank
 * identity the tests check).
 */
struct FacialBasis {
  std::vector<std::vector<int>> two_faces;  // canonical order
  std::vector<EdgeSet> rows;                // facial cycle edge sets

  int rank() const;
};

inline FacialBasis facial_basis(const FaceLattice& lat, const Graph& g) {
  FacialBasis b;
  b.two_faces = two_face_list(lat);
  b.rows.reserve(b.two_faces.size());
  for (const auto& f : b.two_faces) b.rows.push_back(facial_cycle(g, f).edge_set);
  return b;
}

/// 2-face identifiers (indices into the canonical 2-face list) with GF(2)
/// coefficient one; XOR of their facial cycles reproduces the target.
struct Decomposition {
  std::vector<int> two_face_ids;

  EdgeSet reconstruct(const FacialBasis& basis) const {
    EdgeSet acc(basis.rows.front().ambient());
    for (int id : two_face_ids) acc ^= basis.rows[id];
    return acc;
  }
};

namespace detail {

// Row echelon over GF(2) with the combination of original rows tracked.
// Pivots: first nonzero column, lowest row index first.
struct Gf2Eliminator {
  std::vector<Bits> row_bits;    // reduced rows, indexed by insertion
  std::vector<Bits> row_coeffs;  // combination over original row indices
  std::map<int, int> pivot_row;  // pivot column -> reduced row index

  Gf2Eliminator(const std::vector<EdgeSet>& rows) {
    int n = static_cast<int>(rows.size());
    for (int i = 0; i < n; ++i) {
      Bits r = rows[i].bits();
      Bits coeff(n);
      coeff.set(i);
      reduce(r, coeff);
      int p = r.first_set();
      if (p < 0) continue;  // dependent row
      pivot_row.emplace(p, static_cast<int>(row_bits.size()));
      row_bits.push_back(std::move(r));
      row_coeffs.push_back(std::move(coeff));
    }
  }

  void reduce(Bits& r, Bits& coeff) const {
    for (int p = r.first_set(); p >= 0; p = r.next_set(p)) {
      auto it = pivot_row.find(p);
      if (it == pivot_row.end()) break;  // rows are echelon-ordered by pivot
      r ^= row_bits[it->second];
      coeff ^= row_coeffs[it->second];
      p = -1;  // restart from the new lowest set bit
    }
  }

  int rank() const { return static_cast<int>(row_bits.size()); }

  /// Expresses the target over the row space, or nullopt if outside it.
  std::optional<Bits> solve(const Bits& target) const {
    Bits r = target;
    Bits coeff(row_coeffs.empty() ? 0 : row_coeffs.front().size());
    if (row_coeffs.empty()) coeff = Bits(0);
    while (true) {
      int p = r.first_set();
      if (p < 0) return coeff;
      auto it = pivot_row.find(p);
      if (it == pivot_row.end()) return std::nullopt;
      r ^= row_bits[it->second];
      coeff ^= row_coeffs[it->second];
    }
  }
};

}  // namespace detail

inline int FacialBasis::rank() const {
  return detail::Gf2Eliminator(rows).rank();
}

/**
 * Gaussian elimination over GF(2) with the target as right-hand side:
 * a coefficient set whose facial cycles XOR to the target, or nullopt when
 * the target lies outside the row space.
 */
inline std::optional<Decomposition> oracle_decompose(const FacialBasis& basis,
                                                     const EdgeSet& target) {
  if (&target.ambient() != &basis.rows.front().ambient()) throw AmbientMismatch();
  detail::Gf2Eliminator elim(basis.rows);
  std::optional<Bits> coeff = elim.solve(target.bits());
  if (!coeff) return std::nullopt;
  Decomposition d;
  for (int i = coeff->first_set(); i >= 0; i = coeff->next_set(i))
    d.two_face_ids.push_back(i);
  return d;
}

/// Corollary-3 side check: all facial cycles of even length.
inline bool bipartite_via_2faces(const FaceLattice& lat, const Graph& g) {
  for (const auto& f : two_face_list(lat))
    if (facial_cycle(g, f).length() % 2) return false;
  return true;
}

// ---- seeded even-subgraph generation --------------------------------------

/**
 * Fundamental cycles of a BFS spanning forest: one per chord, each the
 * tree path between the chord's endpoints plus the chord.
 */
struct FundamentalCycles {
  std::vector<int> chords;        // edge ids
  std::vector<EdgeSet> cycles;    // parallel to chords

  static FundamentalCycles of(const Graph& g) {
    std::vector<int> parent(g.vertex_count(), -2);
    Bits tree_edge(g.edge_count());
    for (int s = 0; s < g.vertex_count(); ++s) {
      if (parent[s] != -2) continue;
      parent[s] = -1;
      std::deque<int> queue{s};
      while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int v : g.neighbors(u))
          if (parent[v] == -2) {
            parent[v] = u;
            tree_edge.set(g.edge_id(u, v));
            queue.push_back(v);
          }
      }
    }
    auto tree_path = [&](int u, int v) {
      auto depth = [&](int x) {
        int d = 0;
        for (; parent[x] >= 0; x = parent[x]) ++d;
        return d;
      };
      EdgeSet path(g);
      int du = depth(u), dv = depth(v);
      while (du > dv) { path.flip(g.edge_id(u, parent[u])); u = parent[u]; --du; }
      while (dv > du) { path.flip(g.edge_id(v, parent[v])); v = parent[v]; --dv; }
      while (u != v) {
        path.flip(g.edge_id(u, parent[u])); u = parent[u];
        path.flip(g.edge_id(v, parent[v])); v = parent[v];
      }
      return path;
    };
    FundamentalCycles fc;
    for (int id = 0; id < g.edge_count(); ++id) {
      if (tree_edge.test(id)) continue;
      auto [u, v] = g.edge(id);
      EdgeSet cyc = tree_path(u, v);
      cyc.flip(id);
      fc.chords.push_back(id);
      fc.cycles.push_back(std::move(cyc));
    }
    return fc;
  }
};

/**
 * Seeded random element of Z(G): a coin per fundamental cycle. Even by
 * construction; deterministic for a fixed seed (raw engine bits only, no
 * library distributions).
 */
inline EdgeSet random_even_subgraph(const Graph& g, uint64_t seed) {
  FundamentalCycles fund = FundamentalCycles::of(g);
  std::mt19937_64 rng(seed);
  EdgeSet acc(g);
  for (const EdgeSet& cyc : fund.cycles)
    if (rng() & 1) acc ^= cyc;
  return acc;
}

/// XOR of k seeded draws from the fundamental cycle list (duplicates cancel).
inline EdgeSet random_even_subgraph_sparse(const Graph& g, int k, uint64_t seed) {
  FundamentalCycles fund = FundamentalCycles::of(g);
  std::mt19937_64 rng(seed);
  EdgeSet acc(g);
  if (fund.cycles.empty()) return acc;
  for (int i = 0; i < k; ++i)
    acc ^= fund.cycles[rng() % fund.cycles.size()];
  return acc;
}

}  // namespace fc
