#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "facecycles/hull.hpp"

namespace fc {

/**
 * All faces of a polytope grouped by dimension. A face is a sorted list of
 * vertex indices; this list is the face's canonical identity everywhere.
 * faces_by_dim[k] holds the k-faces for k = 0..polytope_dim-1, each list in
 * lexicographic order.
 */
struct FaceLattice {
  int ambient_dim = 0;
  int polytope_dim = 0;
  int vertex_count = 0;
  std::vector<std::vector<std::vector<int>>> faces_by_dim;

  const std::vector<std::vector<int>>& facets() const {
    return faces_by_dim.at(polytope_dim - 1);
  }

  std::vector<int> f_vector() const {
    std::vector<int> f;
    f.reserve(faces_by_dim.size());
    for (const auto& level : faces_by_dim) f.push_back(static_cast<int>(level.size()));
    return f;
  }

  /// face set -> dimension, over all faces.
  std::map<std::vector<int>, int> face_dims() const {
    std::map<std::vector<int>, int> m;
    for (int k = 0; k < static_cast<int>(faces_by_dim.size()); ++k)
      for (const auto& f : faces_by_dim[k]) m.emplace(f, k);
    return m;
  }
};

/**
 * The canonical list of 2-faces used for decompositions: faces_by_dim[2]
 * for d >= 3; for a polygon the single 2-face is the polytope itself.
 */
inline std::vector<std::vector<int>> two_face_list(const FaceLattice& lat) {
  if (lat.polytope_dim == 2) {
    std::vector<int> all(lat.vertex_count);
    for (int i = 0; i < lat.vertex_count; ++i) all[i] = i;
    return {all};
  }
  if (lat.polytope_dim < 2 || lat.faces_by_dim.size() <= 2)
    throw InputError("lattice has no 2-faces");
  return lat.faces_by_dim[2];
}

namespace detail {

inline bool is_subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline std::vector<int> set_meet(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace detail

/**
 * Builds the full face lattice from a facet list by iterated intersection
 * closure. Dimensions come from coordinates when given, otherwise from
 * chain length above the vertices; with coordinates both must agree.
 */
inline FaceLattice build_face_lattice(std::vector<std::vector<int>> facets,
                                      int vertex_count,
                                      const std::vector<Point>* points = nullptr) {
  if (facets.empty()) throw NotALattice("no facets");
  std::vector<bool> covered(vertex_count, false);
  for (auto& f : facets) {
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    if (f.empty()) throw NotALattice("empty facet");
    for (int v : f) {
      if (v < 0 || v >= vertex_count) throw NotALattice("vertex index out of range");
      covered[v] = true;
    }
  }
  for (int v = 0; v < vertex_count; ++v)
    if (!covered[v]) throw NotALattice("vertex " + std::to_string(v) + " lies in no facet");
  std::sort(facets.begin(), facets.end());
  facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
  for (const auto& a : facets)
    for (const auto& b : facets)
      if (a != b && detail::is_subset(a, b)) throw NotALattice("facet contained in facet");

  if (points) {
    if (static_cast<int>(points->size()) != vertex_count)
      throw NotALattice("vertex count does not match coordinate count");
    require_same_length(*points);
  }

  // Intersection closure: pairwise meets until fixpoint. Closing under
  // pairwise meets closes under arbitrary finite meets.
  std::set<std::vector<int>> faces(facets.begin(), facets.end());
  std::vector<std::vector<int>> work(facets.begin(), facets.end());
  while (!work.empty()) {
    std::vector<std::vector<int>> fresh;
    for (const auto& w : work) {
      for (const auto& f : faces) {
        std::vector<int> meet = detail::set_meet(w, f);
        if (!meet.empty() && !faces.count(meet)) {
          faces.insert(meet);
          fresh.push_back(std::move(meet));
        }
      }
    }
    work = std::move(fresh);
  }

  // Dimension by chain length above the vertex level, in size order.
  std::vector<std::vector<int>> ordered(faces.begin(), faces.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  std::map<std::vector<int>, int> height;
  for (const auto& f : ordered) {
    int h = 0;
    for (const auto& [g, hg] : height)
      if (g != f && detail::is_subset(g, f)) h = std::max(h, hg + 1);
    height[f] = h;
  }

  int top = 0;
  for (const auto& [f, h] : height) top = std::max(top, h);
  int polytope_dim = top + 1;

  std::map<std::vector<int>, int> dim;
  if (points) {
    int ambient = static_cast<int>(points->front().size());
    int adim = affine_dimension(*points);
    if (adim != ambient) throw NotFullDimensional(adim, ambient);
    polytope_dim = ambient;
    for (const auto& f : faces) {
      int k = affine_dimension_of(*points, f);
      dim[f] = k;
      if (k != height[f])
        throw NotALattice("face height " + std::to_string(height[f]) +
                          " disagrees with affine dimension " + std::to_string(k));
    }
  } else {
    dim = height;
  }

  FaceLattice lat;
  lat.polytope_dim = polytope_dim;
  lat.ambient_dim = points ? static_cast<int>(points->front().size()) : polytope_dim;
  lat.vertex_count = vertex_count;
  lat.faces_by_dim.assign(polytope_dim, {});
  for (const auto& [f, k] : dim) {
    if (k < 0 || k >= polytope_dim) throw NotALattice("face of dimension " + std::to_string(k));
    lat.faces_by_dim[k].push_back(f);
  }
  for (auto& level : lat.faces_by_dim) std::sort(level.begin(), level.end());

  // Invariant: 0-faces are exactly the singletons.
  if (static_cast<int>(lat.faces_by_dim[0].size()) != vertex_count)
    throw NotALattice("0-faces are not exactly the vertices");
  for (int v = 0; v < vertex_count; ++v)
    if (lat.faces_by_dim[0][v] != std::vector<int>{v})
      throw NotALattice("0-faces are not exactly the vertices");

  // Invariant: the facet level is exactly the input facet list.
  if (lat.faces_by_dim[polytope_dim - 1] != facets)
    throw NotALattice("closure yields top faces other than the given facets");

  // Invariant: every k-face (k>=1) is the union of its (k-1)-subfaces, and
  // every face below the top lies in a face one dimension up.
  for (int k = 1; k < polytope_dim; ++k) {
    for (const auto& f : lat.faces_by_dim[k]) {
      std::set<int> uni;
      for (const auto& g : lat.faces_by_dim[k - 1])
        if (detail::is_subset(g, f)) uni.insert(g.begin(), g.end());
      if (std::vector<int>(uni.begin(), uni.end()) != f)
        throw NotALattice("face is not the union of its subfaces");
    }
  }
  for (int k = 0; k + 1 < polytope_dim; ++k) {
    for (const auto& f : lat.faces_by_dim[k]) {
      bool in_upper = false;
      for (const auto& g : lat.faces_by_dim[k + 1])
        if (detail::is_subset(f, g)) {
          in_upper = true;
          break;
        }
      if (!in_upper) throw NotALattice("face not contained in any higher face");
    }
  }

  // Euler's relation pins down 3-dimensional lattices.
  if (polytope_dim == 3) {
    std::vector<int> f = lat.f_vector();
    if (f[0] - f[1] + f[2] != 2)
      throw NotALattice("Euler relation f0-f1+f2=2 fails");
  }
  return lat;
}

/// Convenience: hull + lattice from coordinates.
inline FaceLattice lattice_from_points(const std::vector<Point>& points) {
  return build_face_lattice(facet_vertex_sets(points),
                            static_cast<int>(points.size()), &points);
}

/**
 * The facet as a polytope in its own right: the sub-lattice of faces
 * contained in it, vertices re-indexed 0..m-1 in sorted order, and
 * coordinates mapped by an exact affine bijection of the facet's hull onto
 * Q^(d-1), so the result is full-dimensional.
 */
inline std::pair<FaceLattice, std::vector<Point>> facet_as_polytope(
    const FaceLattice& lat, const std::vector<Point>& points, int facet_index) {
  const int d = lat.polytope_dim;
  if (d < 2) throw InputError("facet_as_polytope needs polytope dimension >= 2");
  if (facet_index < 0 || facet_index >= static_cast<int>(lat.facets().size()))
    throw InputError("facet index out of range");
  const std::vector<int>& fverts = lat.facets()[facet_index];
  const int m = static_cast<int>(fverts.size());

  std::map<int, int> to_sub;
  for (int i = 0; i < m; ++i) to_sub[fverts[i]] = i;

  FaceLattice sub;
  sub.polytope_dim = d - 1;
  sub.ambient_dim = d - 1;
  sub.vertex_count = m;
  sub.faces_by_dim.assign(d - 1, {});
  for (int k = 0; k <= d - 2; ++k) {
    for (const auto& f : lat.faces_by_dim[k]) {
      if (!detail::is_subset(f, fverts)) continue;
      std::vector<int> mapped;
      mapped.reserve(f.size());
      for (int v : f) mapped.push_back(to_sub.at(v));
      sub.faces_by_dim[k].push_back(std::move(mapped));
    }
    std::sort(sub.faces_by_dim[k].begin(), sub.faces_by_dim[k].end());
  }

  // Exact basis of the facet's affine hull, then coordinates of each vertex
  // in that basis.
  const Point& origin = points[fverts[0]];
  Matrix basis;  // rows b_1..b_{d-1}, each length d
  for (int i = 1; i < m && static_cast<int>(basis.size()) < d - 1; ++i) {
    RowVector cand(d);
    for (int c = 0; c < d; ++c) cand[c] = points[fverts[i]][c] - origin[c];
    Matrix trial = basis;
    trial.push_back(cand);
    if (matrix_rank(trial) == static_cast<int>(basis.size()) + 1)
      basis.push_back(std::move(cand));
  }
  if (static_cast<int>(basis.size()) != d - 1)
    throw NotRealized("facet vertices do not span a hyperplane");

  // Solve B^T w = v - origin for each vertex (columns are basis vectors).
  std::vector<Point> sub_points;
  sub_points.reserve(m);
  for (int i = 0; i < m; ++i) {
    RowVector rhs(d);
    for (int c = 0; c < d; ++c) rhs[c] = points[fverts[i]][c] - origin[c];
    Matrix system(d, RowVector(d - 1));
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d - 1; ++c) system[r][c] = basis[c][r];
    std::optional<RowVector> w = solve(std::move(system), std::move(rhs), d - 1);
    if (!w) throw NotRealized("facet vertex outside the facet's affine hull");
    sub_points.push_back(std::move(*w));
  }
  if (affine_dimension(sub_points) != d - 1)
    throw InternalAssertion("projected facet is not full-dimensional");
  return {std::move(sub), std::move(sub_points)};
}

}  // namespace fc
