#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "facecycles/complex.hpp"
#include "facecycles/cyclespace.hpp"

namespace fc {

/// Deterministic 64-bit mixer for deriving sub-seeds.
inline uint64_t mix_seed(uint64_t a, uint64_t b) {
  uint64_t x = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  x ^= x >> 30; x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27; x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

/**
 * Certificate of a line shelling: the interior base point, the generic
 * direction, and the parameter at which the line pierces each facet's
 * hyperplane. Bounded polytopes with a generic direction always pierce
 * every hyperplane at a finite parameter; a parallel hyperplane is a
 * genericity failure, so the unbounded-side marker (nullopt) never
 * survives construction.
 */
struct LineCertificate {
  Point base_point;
  Point direction;
  std::vector<std::optional<Rational>> pierce_params;  // per facet index
};

/// Necessary-condition record for one shelling step j >= 2.
struct StepReport {
  int step_index = 0;  // 1-based position in the order
  bool intersection_nonempty = false;
  bool intersection_pure_codim2 = false;
  bool intersection_strongly_connected = false;
  bool prefix_strongly_connected = false;

  bool all_ok() const {
    return intersection_nonempty && intersection_pure_codim2 &&
           intersection_strongly_connected && prefix_strongly_connected;
  }
};

struct Shelling {
  std::vector<int> order;  // permutation of facet indices
  std::optional<LineCertificate> certificate;
  std::vector<StepReport> per_step_reports;

  bool verified() const {
    return std::all_of(per_step_reports.begin(), per_step_reports.end(),
                       [](const StepReport& r) { return r.all_ok(); });
  }
};

namespace detail {

// Supporting hyperplane of one facet, recomputed from coordinates and
// validated: the facet's vertices span it, all points lie on the <= side,
// and the contact set is exactly the facet.
inline Hyperplane facet_hyperplane(const FaceLattice& lat,
                                   const std::vector<Point>& points, int facet_index) {
  const std::vector<int>& fv = lat.facets()[facet_index];
  const int d = lat.ambient_dim;
  std::vector<ScaledPoint> scaled;
  scaled.reserve(points.size());
  for (const Point& p : points) scaled.push_back(ScaledPoint::from(p));

  // An affinely independent d-subset of the facet's vertices.
  std::vector<int> span;
  Matrix diffs;
  for (int v : fv) {
    if (span.empty()) {
      span.push_back(v);
      continue;
    }
    RowVector diff(d);
    for (int c = 0; c < d; ++c) diff[c] = points[v][c] - points[span[0]][c];
    Matrix trial = diffs;
    trial.push_back(diff);
    if (matrix_rank(trial) == static_cast<int>(diffs.size()) + 1) {
      diffs.push_back(std::move(diff));
      span.push_back(v);
    }
    if (static_cast<int>(span.size()) == d) break;
  }
  if (static_cast<int>(span.size()) != d)
    throw NotRealized("facet " + std::to_string(facet_index) +
                      " does not span a hyperplane");
  std::optional<detail::IntHyperplane> h = detail::hyperplane_through(scaled, span, d);
  if (!h) throw NotRealized("degenerate facet hyperplane");

  int inside = 0;
  for (int i = 0; i < static_cast<int>(points.size()); ++i) {
    int s = detail::side_of(*h, scaled[i]);
    bool on_facet = std::binary_search(fv.begin(), fv.end(), i);
    if (on_facet) {
      if (s != 0)
        throw NotRealized("facet vertex off its hyperplane");
    } else {
      if (s == 0)
        throw NotRealized("non-facet vertex on a facet hyperplane");
      if (inside == 0) inside = s;
      if (s != inside)
        throw NotRealized("points on both sides of a facet hyperplane");
    }
  }
  if (inside == 0) throw NotRealized("all points on a facet hyperplane");
  if (inside > 0) {
    for (Integer& x : h->a) x = -x;
    h->c = -h->c;
  }
  Hyperplane plane;
  plane.normal.reserve(d);
  for (const Integer& x : h->a) plane.normal.push_back(Rational(x));
  plane.offset = Rational(h->c);
  return plane;
}

// All lattice faces contained in each facet, as indices into a shared face
// table; the combinatorial substrate for the shelling checks.
struct FaceTable {
  std::vector<std::vector<int>> face_of_id;  // id -> vertex set
  std::vector<int> dim_of_id;
  std::vector<std::vector<int>> ids_in_facet;  // facet -> sorted face ids

  static FaceTable of(const FaceLattice& lat) {
    FaceTable t;
    std::map<std::vector<int>, int> index;
    for (int k = 0; k < lat.polytope_dim; ++k)
      for (const auto& f : lat.faces_by_dim[k]) {
        index.emplace(f, static_cast<int>(t.face_of_id.size()));
        t.face_of_id.push_back(f);
        t.dim_of_id.push_back(k);
      }
    t.ids_in_facet.resize(lat.facets().size());
    for (std::size_t fi = 0; fi < lat.facets().size(); ++fi) {
      const auto& fv = lat.facets()[fi];
      for (const auto& [face, id] : index)
        if (is_subset(face, fv)) t.ids_in_facet[fi].push_back(id);
      std::sort(t.ids_in_facet[fi].begin(), t.ids_in_facet[fi].end());
    }
    return t;
  }

  PolytopalComplex complex_of(const std::vector<int>& ids, int universe) const {
    std::map<std::vector<int>, int> faces;
    for (int id : ids) faces.emplace(face_of_id[id], dim_of_id[id]);
    return PolytopalComplex::from_faces(std::move(faces), universe);
  }
};

}  // namespace detail

/**
 * Checks the decidable necessary conditions on a claimed facet ordering:
 * for each j >= 2 the intersection of F_j with the union of its
 * predecessors must be nonempty, pure of dimension d-2, and strongly
 * connected (the last for d-2 >= 1; a 0-dimensional intersection passes by
 * convention since any vertex order shells a 0-complex). Each prefix
 * complex must itself be strongly connected. These are consequences of the
 * shelling definition, not the full recursive criterion.
 */
inline std::vector<StepReport> verify_shelling_necessary(const FaceLattice& lat,
                                                         const std::vector<int>& order) {
  const int s = static_cast<int>(lat.facets().size());
  const int d = lat.polytope_dim;
  {
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < s; ++i)
      if (i >= static_cast<int>(sorted.size()) || sorted[i] != i)
        throw InputError("order is not a permutation of the facets");
  }
  detail::FaceTable table = detail::FaceTable::of(lat);
  std::vector<StepReport> reports;
  if (d == 1) return reports;  // boundary is a 0-complex; any order shells it

  std::set<int> prefix_ids(table.ids_in_facet[order[0]].begin(),
                           table.ids_in_facet[order[0]].end());
  for (int j = 2; j <= s; ++j) {
    const std::vector<int>& fj = table.ids_in_facet[order[j - 1]];
    std::vector<int> shared;
    for (int id : fj)
      if (prefix_ids.count(id)) shared.push_back(id);

    StepReport rep;
    rep.step_index = j;
    rep.intersection_nonempty = !shared.empty();
    if (!shared.empty()) {
      PolytopalComplex inter = table.complex_of(shared, lat.vertex_count);
      rep.intersection_pure_codim2 = inter.dim == d - 2 && inter.is_pure();
      if (!rep.intersection_pure_codim2)
        rep.intersection_strongly_connected = false;
      else if (d - 2 >= 1)
        rep.intersection_strongly_connected = is_strongly_connected(inter);
      else
        rep.intersection_strongly_connected = true;
    }
    prefix_ids.insert(fj.begin(), fj.end());
    PolytopalComplex prefix = table.complex_of(
        std::vector<int>(prefix_ids.begin(), prefix_ids.end()), lat.vertex_count);
    rep.prefix_strongly_connected =
        prefix.dim == d - 1 && prefix.is_pure() && is_strongly_connected(prefix);
    reports.push_back(rep);
  }
  return reports;
}

/**
 * Bruggesser-Mani line shelling. The line runs through the vertex centroid
 * (interior) in a seeded small-rational direction; facets are ordered by
 * pierce parameter, positive t ascending then negative t ascending. The
 * direction is re-drawn (bounded retries) until every hyperplane is pierced
 * at a finite parameter and all parameters are pairwise distinct; ties are
 * never broken arbitrarily. The result is verified before it is returned.
 */
inline Shelling line_shelling(const FaceLattice& lat, const std::vector<Point>& points,
                              uint64_t seed, int max_attempts = 64) {
  const int s = static_cast<int>(lat.facets().size());
  const int d = lat.ambient_dim;
  if (static_cast<int>(points.size()) != lat.vertex_count)
    throw NotRealized("coordinate count differs from lattice vertex count");
  require_same_length(points);
  if (!points.empty() && static_cast<int>(points.front().size()) != lat.polytope_dim)
    throw NotRealized("lattice dimension differs from ambient dimension");

  std::vector<Hyperplane> planes;
  planes.reserve(s);
  for (int i = 0; i < s; ++i) planes.push_back(detail::facet_hyperplane(lat, points, i));

  Point base(d, Rational(0));
  for (const Point& p : points)
    for (int c = 0; c < d; ++c) base[c] += p[c];
  for (int c = 0; c < d; ++c) base[c] /= Rational(static_cast<long>(points.size()));

  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::mt19937_64 rng(mix_seed(seed, attempt));
    Point dir(d);
    bool zero = true;
    for (int c = 0; c < d; ++c) {
      long num = static_cast<long>(rng() % 33) - 16;
      long den = 1 + static_cast<long>(rng() % 16);
      dir[c] = Rational(num, den);
      if (!dir[c].is_zero()) zero = false;
    }
    if (zero) continue;

    // Pierce parameter per facet: normal·(base + t·dir) = offset.
    std::vector<Rational> t(s);
    bool generic = true;
    for (int i = 0; i < s && generic; ++i) {
      Rational denom = dot(planes[i].normal, dir);
      if (denom.is_zero()) {
        generic = false;  // line parallel to a facet hyperplane
        break;
      }
      Rational num = planes[i].offset - dot(planes[i].normal, base);
      internal_check(num.sign() > 0, "base point not strictly inside a facet");
      t[i] = num / denom;
    }
    if (generic) {
      std::vector<Rational> sorted = t;
      std::sort(sorted.begin(), sorted.end());
      for (int i = 0; i + 1 < s; ++i)
        if (sorted[i] == sorted[i + 1]) {
          generic = false;  // pierce-parameter tie
          break;
        }
    }
    if (!generic) continue;

    std::vector<int> order(s);
    for (int i = 0; i < s; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      bool pa = t[a].sign() > 0, pb = t[b].sign() > 0;
      if (pa != pb) return pa;  // positive phase first
      return t[a] < t[b];
    });

    Shelling sh;
    sh.order = std::move(order);
    LineCertificate cert;
    cert.base_point = base;
    cert.direction = std::move(dir);
    cert.pierce_params.assign(t.begin(), t.end());
    sh.certificate = std::move(cert);
    sh.per_step_reports = verify_shelling_necessary(lat, sh.order);
    internal_check(sh.verified(), "line shelling failed its necessary conditions");
    return sh;
  }
  throw GenericityExhausted(max_attempts);
}

/// Line shelling of a facet in its own (d-1)-dimensional coordinates.
inline Shelling shelling_for_facet(const FaceLattice& lat, const std::vector<Point>& points,
                                   int facet_index, uint64_t seed) {
  auto [sub, sub_points] = facet_as_polytope(lat, points, facet_index);
  return line_shelling(sub, sub_points, seed);
}

}  // namespace fc
