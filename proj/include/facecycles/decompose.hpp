#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "facecycles/shelling.hpp"

namespace fc {

/// One node of the recursion, for debugging and regression traces.
struct TraceNode {
  int depth = 0;
  int dim = 0;
  std::string kind;  // "even", "base", "facet", "crossing"
  int prefix = -1;   // shelling position n (1-based), crossing/facet nodes
  int measure = -1;  // edges outside G(F_n), crossing nodes
  int j = -1;        // crossing vertices, crossing nodes
  int size = -1;     // edge count of the node's target

  std::string str() const {
    std::ostringstream os;
    os << "depth=" << depth << " d=" << dim << " kind=" << kind;
    if (prefix >= 0) os << " n=" << prefix;
    if (measure >= 0) os << " measure=" << measure;
    if (j >= 0) os << " j=" << j;
    if (size >= 0) os << " edges=" << size;
    return os.str();
  }
};

struct DecomposeTrace {
  std::vector<TraceNode> nodes;
  long assertions_checked = 0;

  std::string str() const {
    std::string s;
    for (const TraceNode& n : nodes) {
      s += n.str();
      s += '\n';
    }
    return s;
  }
};

/**
 * The cached shelling-prefix structures of one polytope: prefix graphs G_n,
 * facet graphs G(F_n) and intersections I_n = G_{n-1} ∩ G(F_n), all as
 * vertex/edge masks over the polytope graph so cycles move between them
 * without re-indexing. Positions are 1-based along the shelling order.
 */
struct PrefixContext {
  const FaceLattice* lattice = nullptr;
  const std::vector<Point>* points = nullptr;
  const Graph* graph = nullptr;
  uint64_t seed = 0;
  int dim = 0;

  std::vector<std::vector<int>> two_faces;
  std::map<std::vector<int>, int> two_face_index;
  std::vector<EdgeSet> facial;

  // dim >= 3 only.
  Shelling shelling;
  std::vector<Bits> facet_vmask;   // by shelling position
  std::vector<Bits> facet_emask;
  std::vector<Bits> prefix_vmask;  // cumulative
  std::vector<Bits> prefix_emask;
  std::vector<int> edge_min_prefix;  // per edge id, 1-based position

  // Owned storage for facet sub-polytopes (children of the recursion).
  std::unique_ptr<FaceLattice> owned_lattice;
  std::unique_ptr<std::vector<Point>> owned_points;
  std::unique_ptr<Graph> owned_graph;
  std::map<int, std::unique_ptr<PrefixContext>> children;       // by facet index
  std::map<int, std::vector<int>> facet_vertex_order;           // facet index -> sorted parent ids

  int facet_count() const { return static_cast<int>(shelling.order.size()); }

  /// Facet lattice-index at 1-based shelling position n.
  int facet_at(int n) const { return shelling.order.at(n - 1); }

  SubgraphMask intersection_mask(int n) const {
    SubgraphMask m;
    m.vertices = prefix_vmask[n - 2] & facet_vmask[n - 1];
    m.edges = prefix_emask[n - 2] & facet_emask[n - 1];
    return m;
  }
};

/// The paths and surgery products of one crossing step of the recursion.
struct CrossingSurgery {
  std::vector<int> x_vertices;        // x_1..x_j in traversal order
  std::vector<int> path_L;            // x_j .. x_1, internally outside G(F_n)
  std::vector<int> path_L_prime;      // x_1 .. x_j, the rest of C
  std::vector<int> path_M;            // x_1 .. x_j inside I_n
  Cycle cycle_C1;                     // L joined with M, a cycle in G_{n-1}
  EdgeSet even_W;                     // L' xor M
  int measure_before = 0;             // edges of C outside G(F_n)
  int measure_after = 0;              // edges of W outside G(F_n)
};

namespace detail {

inline bool bits_subset(const Bits& a, const Bits& b) { return (a & b) == a; }

inline EdgeSet path_edge_set(const Graph& g, const std::vector<int>& path) {
  EdgeSet e(g);
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    int id = g.edge_id(path[i], path[i + 1]);
    internal_check(id >= 0, "path step is not a graph edge");
    e.flip(id);
  }
  return e;
}

}  // namespace detail

/**
 * Builds the prefix context: polytope graph data, the line shelling, and
 * per-position facet/prefix/intersection masks. The graph must be the
 * polytope graph of the lattice (identity vertex indexing).
 */
inline PrefixContext build_prefix_context(const FaceLattice& lat,
                                          const std::vector<Point>& points,
                                          const Graph& g, uint64_t seed,
                                          DecomposeTrace* trace = nullptr) {
  PrefixContext ctx;
  ctx.lattice = &lat;
  ctx.points = &points;
  ctx.graph = &g;
  ctx.seed = seed;
  ctx.dim = lat.polytope_dim;
  if (ctx.dim < 2) throw DimensionTooLow(ctx.dim);
  if (g.vertex_count() != lat.vertex_count ||
      g.edge_count() != static_cast<int>(lat.faces_by_dim[1].size()))
    throw InputError("graph is not the polytope graph of the lattice");

  ctx.two_faces = two_face_list(lat);
  for (std::size_t i = 0; i < ctx.two_faces.size(); ++i)
    ctx.two_face_index.emplace(ctx.two_faces[i], static_cast<int>(i));
  ctx.facial.reserve(ctx.two_faces.size());
  for (const auto& f : ctx.two_faces) ctx.facial.push_back(facial_cycle(g, f).edge_set);
  if (ctx.dim == 2) return ctx;

  ctx.shelling = line_shelling(lat, points, seed);
  const int s = ctx.facet_count();
  auto check = [&](bool ok, const char* what) {
    if (trace) ++trace->assertions_checked;
    internal_check(ok, what);
  };

  for (int p = 1; p <= s; ++p) {
    const std::vector<int>& fv = lat.facets()[ctx.facet_at(p)];
    Bits vmask(g.vertex_count());
    for (int v : fv) vmask.set(v);
    Bits emask(g.edge_count());
    for (int id = 0; id < g.edge_count(); ++id) {
      auto [u, v] = g.edge(id);
      // G(F) is induced in G: an edge with both endpoints in the facet is a
      // face of the facet.
      if (vmask.test(u) && vmask.test(v)) emask.set(id);
    }
    ctx.facet_vmask.push_back(vmask);
    ctx.facet_emask.push_back(emask);
    if (p == 1) {
      ctx.prefix_vmask.push_back(vmask);
      ctx.prefix_emask.push_back(emask);
    } else {
      ctx.prefix_vmask.push_back(ctx.prefix_vmask.back() | vmask);
      ctx.prefix_emask.push_back(ctx.prefix_emask.back() | emask);
    }
  }
  ctx.edge_min_prefix.assign(g.edge_count(), -1);
  for (int id = 0; id < g.edge_count(); ++id) {
    for (int p = 1; p <= s; ++p)
      if (ctx.facet_emask[p - 1].test(id)) {
        ctx.edge_min_prefix[id] = p;
        break;
      }
    check(ctx.edge_min_prefix[id] >= 1 && ctx.edge_min_prefix[id] <= s - 1,
          "every edge lies in a proper shelling prefix");
  }
  check(ctx.prefix_vmask[s - 1].count() == g.vertex_count() &&
            ctx.prefix_emask[s - 1].count() == g.edge_count(),
        "facets cover the polytope graph");
  return ctx;
}

/**
 * The Theorem-1 crossing step on a cycle C that lies in G_n but in neither
 * G_{n-1} nor G(F_n): traverse C from the smallest vertex outside the
 * facet toward its smaller neighbor, record the intersection vertices
 * x_1..x_j, split C into L (x_j..x_1) and L' (x_1..x_j), bridge x_1 to x_j
 * by a shortest path M inside I_n, and return C_1 = L∪M together with
 * W = L' xor M. Every fact the proof states becomes a hard check.
 */
inline CrossingSurgery crossing_surgery(const Cycle& C, const PrefixContext& ctx, int n,
                                        DecomposeTrace* trace = nullptr) {
  const Graph& g = *ctx.graph;
  auto check = [&](bool ok, const char* what) {
    if (trace) ++trace->assertions_checked;
    internal_check(ok, what);
  };
  if (ctx.dim < 3) throw InputError("crossing surgery needs polytope dimension >= 3");
  if (n < 2 || n > ctx.facet_count()) throw InputError("prefix position out of range");
  const Bits& fv = ctx.facet_vmask[n - 1];
  const Bits& fe = ctx.facet_emask[n - 1];
  if (!detail::bits_subset(C.edge_set.bits(), ctx.prefix_emask[n - 1]))
    throw InputError("cycle is not contained in the prefix graph G_n");
  if (detail::bits_subset(C.edge_set.bits(), ctx.prefix_emask[n - 2]))
    throw InputError("cycle already lies in G_{n-1}");
  if (detail::bits_subset(C.edge_set.bits(), fe))
    throw InputError("cycle lies inside the facet graph G(F_n)");

  SubgraphMask inter = ctx.intersection_mask(n);
  check(inter.vertices.any(), "intersection graph I_n is nonempty");
  check(masked_connected(g, inter), "intersection graph I_n is connected");

  // Traversal start: smallest-index cycle vertex outside G(F_n); it exists
  // because G(F_n) is induced in G_n and C has an edge outside G(F_n).
  int start = -1;
  for (int v : C.vertices)
    if (!fv.test(v) && (start < 0 || v < start)) start = v;
  check(start >= 0, "cycle has a vertex outside the facet");

  std::vector<int> seq = C.vertices;
  std::rotate(seq.begin(), std::find(seq.begin(), seq.end(), start), seq.end());
  if (seq.back() < seq[1]) std::reverse(seq.begin() + 1, seq.end());

  const int len = static_cast<int>(seq.size());
  std::vector<int> touch_pos;
  for (int i = 0; i < len; ++i)
    if (inter.vertices.test(seq[i])) touch_pos.push_back(i);
  CrossingSurgery sur;
  for (int i : touch_pos) sur.x_vertices.push_back(seq[i]);
  check(sur.x_vertices.size() >= 2, "cycle meets I_n in at least two vertices");

  const int p1 = touch_pos.front(), pj = touch_pos.back();
  for (int i = pj; i < len; ++i) sur.path_L.push_back(seq[i]);
  for (int i = 0; i <= p1; ++i) sur.path_L.push_back(seq[i]);
  for (int i = p1; i <= pj; ++i) sur.path_L_prime.push_back(seq[i]);
  for (std::size_t i = 1; i + 1 < sur.path_L.size(); ++i)
    check(!fv.test(sur.path_L[i]), "interior of L stays outside G(F_n)");

  sur.path_M = masked_shortest_path(g, inter, sur.x_vertices.front(), sur.x_vertices.back());
  check(!sur.path_M.empty(), "I_n connects x_1 to x_j");
  {
    std::set<int> on_L(sur.path_L.begin(), sur.path_L.end());
    for (std::size_t i = 1; i + 1 < sur.path_M.size(); ++i)
      check(!on_L.count(sur.path_M[i]), "M avoids the interior of L");
  }

  // C_1 = L then M's interior: x_j..x_1 followed by x_1's successor up to
  // x_j's predecessor closes the cycle back at x_j.
  std::vector<int> c1 = sur.path_L;
  for (std::size_t i = 1; i + 1 < sur.path_M.size(); ++i) c1.push_back(sur.path_M[i]);
  sur.cycle_C1 = Cycle::from_vertices(g, std::move(c1));
  check(detail::bits_subset(sur.cycle_C1.edge_set.bits(), ctx.prefix_emask[n - 2]),
        "C_1 lies in G_{n-1}");

  sur.even_W = detail::path_edge_set(g, sur.path_L_prime) ^ detail::path_edge_set(g, sur.path_M);
  check(is_even(sur.even_W), "W = L' xor M is an even subgraph");

  auto measure = [&](const Bits& edge_bits) {
    int m = 0;
    for (int id = edge_bits.first_set(); id >= 0; id = edge_bits.next_set(id))
      if (!fe.test(id)) ++m;
    return m;
  };
  sur.measure_before = measure(C.edge_set.bits());
  sur.measure_after = measure(sur.even_W.bits());
  check(sur.measure_after < sur.measure_before,
        "W has strictly fewer edges outside G(F_n) than C");
  return sur;
}

namespace detail {

class Decomposer {
 public:
  explicit Decomposer(DecomposeTrace* trace) : trace_(trace) {}

  std::set<int> decompose_even(PrefixContext& ctx, const EdgeSet& target, int depth) {
    auto check = [&](bool ok, const char* what) {
      if (trace_) ++trace_->assertions_checked;
      internal_check(ok, what);
    };
    note(depth, ctx.dim, "even", -1, -1, -1, target.count());
    if (target.empty()) return {};
    if (ctx.dim == 2) {
      note(depth, 2, "base", -1, -1, -1, target.count());
      check(target == ctx.facial[0],
            "even subgraph of a polygon is empty or its boundary");
      return {0};
    }
    std::set<int> ids;
    for (const Cycle& c : split_into_cycles(target)) {
      std::set<int> part = decompose_cycle(ctx, c, depth + 1, std::nullopt);
      ids = xor_sets(ids, part);
    }
    // The Theorem-1 identity, checked before returning.
    EdgeSet acc(*ctx.graph);
    for (int id : ids) acc ^= ctx.facial[id];
    check(acc == target, "decomposition reconstructs its target");
    return ids;
  }

 private:
  static std::set<int> xor_sets(std::set<int> a, const std::set<int>& b) {
    for (int x : b) {
      auto [it, inserted] = a.insert(x);
      if (!inserted) a.erase(it);
    }
    return a;
  }

  void note(int depth, int dim, const char* kind, int prefix, int measure, int j, int size) {
    if (!trace_) return;
    TraceNode n;
    n.depth = depth;
    n.dim = dim;
    n.kind = kind;
    n.prefix = prefix;
    n.measure = measure;
    n.j = j;
    n.size = size;
    trace_->nodes.push_back(std::move(n));
  }

  PrefixContext& child_context(PrefixContext& ctx, int facet_index) {
    auto it = ctx.children.find(facet_index);
    if (it != ctx.children.end()) return *it->second;
    auto [sub_lat, sub_points] =
        facet_as_polytope(*ctx.lattice, *ctx.points, facet_index);
    auto child = std::make_unique<PrefixContext>();
    auto owned_lat = std::make_unique<FaceLattice>(std::move(sub_lat));
    auto owned_pts = std::make_unique<std::vector<Point>>(std::move(sub_points));
    auto owned_graph = std::make_unique<Graph>(polytope_graph(*owned_lat));
    *child = build_prefix_context(*owned_lat, *owned_pts, *owned_graph,
                                  mix_seed(ctx.seed, facet_index), trace_);
    child->owned_lattice = std::move(owned_lat);
    child->owned_points = std::move(owned_pts);
    child->owned_graph = std::move(owned_graph);
    ctx.facet_vertex_order.emplace(facet_index,
                                   ctx.lattice->facets()[facet_index]);
    auto [pos, inserted] = ctx.children.emplace(facet_index, std::move(child));
    return *pos->second;
  }

  // Maps a cycle lying inside facet F (lattice index) into the facet's own
  // polytope, decomposes there, and maps the resulting 2-faces back.
  std::set<int> recurse_into_facet(PrefixContext& ctx, int facet_index,
                                   const Cycle& C, int depth) {
    auto check = [&](bool ok, const char* what) {
      if (trace_) ++trace_->assertions_checked;
      internal_check(ok, what);
    };
    const std::vector<int>& fverts = ctx.lattice->facets()[facet_index];
    if (ctx.dim == 3) {
      // The facet is itself a 2-face; the only cycle inside a polygon's
      // graph is its boundary.
      auto it = ctx.two_face_index.find(fverts);
      check(it != ctx.two_face_index.end(), "facet of a 3-polytope is a 2-face");
      check(C.edge_set == ctx.facial[it->second],
            "cycle inside a polygon facet is its boundary");
      return {it->second};
    }
    PrefixContext& child = child_context(ctx, facet_index);
    std::map<int, int> to_child;
    for (std::size_t i = 0; i < fverts.size(); ++i)
      to_child.emplace(fverts[i], static_cast<int>(i));
    EdgeSet child_target(*child.graph);
    C.edge_set.for_each_edge([&](int id) {
      auto [u, v] = ctx.graph->edge(id);
      int cu = to_child.at(u), cv = to_child.at(v);
      int cid = child.graph->edge_id(cu, cv);
      check(cid >= 0, "facet cycle edge exists in the facet polytope");
      child_target.set(cid);
    });
    std::set<int> child_ids = decompose_even(child, child_target, depth + 1);
    // 2-faces of a facet are 2-faces of P.
    std::set<int> ids;
    for (int cid : child_ids) {
      std::vector<int> parent_face;
      parent_face.reserve(child.two_faces[cid].size());
      for (int cv : child.two_faces[cid]) parent_face.push_back(fverts[cv]);
      std::sort(parent_face.begin(), parent_face.end());
      auto it = ctx.two_face_index.find(parent_face);
      check(it != ctx.two_face_index.end(), "2-face of a facet is a 2-face of P");
      ids.insert(it->second);
    }
    return ids;
  }

  std::set<int> decompose_cycle(PrefixContext& ctx, const Cycle& C, int depth,
                                std::optional<std::pair<int, int>> parent_lex) {
    auto check = [&](bool ok, const char* what) {
      if (trace_) ++trace_->assertions_checked;
      internal_check(ok, what);
    };
    // Minimal prefix containing the cycle.
    int n = 0;
    C.edge_set.for_each_edge([&](int id) { n = std::max(n, ctx.edge_min_prefix[id]); });
    check(n >= 1, "cycle lies in some shelling prefix");
    int measure = 0;
    C.edge_set.for_each_edge([&](int id) {
      if (!ctx.facet_emask[n - 1].test(id)) ++measure;
    });
    if (parent_lex)
      check(std::make_pair(n, measure) < *parent_lex,
            "recursion measure (n, out-of-facet edges) strictly decreases");

    if (detail::bits_subset(C.edge_set.bits(), ctx.facet_emask[n - 1])) {
      note(depth, ctx.dim, "facet", n, measure, -1, C.edge_set.count());
      return recurse_into_facet(ctx, ctx.facet_at(n), C, depth);
    }
    // By minimality of n no earlier facet can contain C either.
    CrossingSurgery sur = crossing_surgery(C, ctx, n, trace_);
    note(depth, ctx.dim, "crossing", n, sur.measure_before,
         static_cast<int>(sur.x_vertices.size()), C.edge_set.count());
    std::set<int> ids =
        decompose_cycle(ctx, sur.cycle_C1, depth + 1, std::make_pair(n, measure));
    for (const Cycle& w : split_into_cycles(sur.even_W))
      ids = xor_sets(ids, decompose_cycle(ctx, w, depth + 1, std::make_pair(n, measure)));
    return ids;
  }

  DecomposeTrace* trace_;
};

}  // namespace detail

/**
 * Theorem 1, constructively: a set of 2-face ids of P whose facial cycles
 * XOR to the target even subgraph. The recursion follows the proof: split
 * the target into cycles, locate each in its minimal shelling prefix,
 * descend into a facet when the cycle lies in one, and otherwise apply the
 * crossing surgery and recurse on C_1 and W. The result is verified by
 * reconstruction before returning.
 */
inline Decomposition decompose(const FaceLattice& lat, const std::vector<Point>& points,
                               const Graph& g, const EdgeSet& target, uint64_t seed,
                               DecomposeTrace* trace = nullptr) {
  if (lat.polytope_dim < 2) throw DimensionTooLow(lat.polytope_dim);
  if (&target.ambient() != &g) throw AmbientMismatch();
  {
    std::vector<int> odd = odd_degree_vertices(target);
    if (!odd.empty()) throw NotEven(std::move(odd));
  }
  PrefixContext ctx = build_prefix_context(lat, points, g, seed, trace);
  detail::Decomposer dec(trace);
  std::set<int> ids = dec.decompose_even(ctx, target, 0);
  Decomposition result;
  result.two_face_ids.assign(ids.begin(), ids.end());
  return result;
}

/// decompose plus the full recursion trace (golden-file regression aid).
inline std::pair<Decomposition, DecomposeTrace> decompose_with_trace(
    const FaceLattice& lat, const std::vector<Point>& points, const Graph& g,
    const EdgeSet& target, uint64_t seed) {
  DecomposeTrace trace;
  Decomposition d = decompose(lat, points, g, target, seed, &trace);
  return {std::move(d), std::move(trace)};
}

}  // namespace fc
