#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "facecycles/linalg.hpp"

namespace fc {

/// Supporting hyperplane {x : normal·x = offset}. Oriented so the polytope
/// lies in {normal·x <= offset}.
struct Hyperplane {
  RowVector normal;
  Rational offset;

  Rational eval(const Point& p) const { return dot(normal, p) - offset; }
};

/// A facet as its supporting hyperplane plus the sorted indices of the
/// input points lying on it.
struct Facet {
  Hyperplane plane;
  std::vector<int> vertices;
};

namespace detail {

// Integer hyperplane a·x = c, primitive, sign-normalized so the first
// nonzero entry of (a, c) is positive.
struct IntHyperplane {
  std::vector<Integer> a;
  Integer c;

  bool operator<(const IntHyperplane& o) const {
    if (a != o.a) return a < o.a;
    return c < o.c;
  }

  void make_canonical() {
    Integer g = 0;
    for (const Integer& x : a) g = gcd(g, x);
    g = gcd(g, c);
    if (g > 1) {
      for (Integer& x : a) x /= g;
      c /= g;
    }
    int s = 0;
    for (const Integer& x : a)
      if (sgn(x) != 0) {
        s = sgn(x);
        break;
      }
    if (s == 0) s = sgn(c);
    if (s < 0) {
      for (Integer& x : a) x = -x;
      c = -c;
    }
  }
};

// Hyperplane through the given d points, if they affinely span one.
// Unknowns (a, c) solve a·p_i - c = 0; with scaled points this becomes the
// integer system a·num_i - c·den_i = 0.
inline std::optional<IntHyperplane> hyperplane_through(
    const std::vector<ScaledPoint>& pts, const std::vector<int>& subset, int dim) {
  Matrix rows;
  rows.reserve(subset.size());
  for (int i : subset) {
    RowVector r(dim + 1);
    for (int ccol = 0; ccol < dim; ++ccol) r[ccol] = Rational(pts[i].num[ccol]);
    r[dim] = -Rational(pts[i].den);
    rows.push_back(std::move(r));
  }
  std::vector<RowVector> ns = nullspace(std::move(rows), dim + 1);
  if (ns.size() != 1) return std::nullopt;  // affinely dependent subset
  // Clear denominators of the rational nullspace vector.
  Integer den = 1;
  for (const Rational& x : ns[0]) den = lcm(den, x.denominator());
  IntHyperplane h;
  h.a.reserve(dim);
  for (int i = 0; i < dim; ++i)
    h.a.push_back(ns[0][i].numerator() * (den / ns[0][i].denominator()));
  h.c = ns[0][dim].numerator() * (den / ns[0][dim].denominator());
  h.make_canonical();
  return h;
}

inline int side_of(const IntHyperplane& h, const ScaledPoint& p) {
  Integer v = -h.c * p.den;
  for (std::size_t i = 0; i < h.a.size(); ++i) v += h.a[i] * p.num[i];
  return sgn(v);
}

struct HullResult {
  std::vector<Facet> facets;
  std::vector<bool> is_vertex;  // per input point
};

// Brute force over d-subsets: spanning hyperplane, sidedness of all points,
// contact set, dedupe. Intended scale n <= ~40, d <= 6.
inline HullResult hull_brute_force(const std::vector<Point>& points) {
  const int n = static_cast<int>(points.size());
  const int d = static_cast<int>(points[0].size());
  require_same_length(points);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (points[i] == points[j])
        throw InputError("points " + std::to_string(i) + " and " + std::to_string(j) +
                         " coincide");
  int adim = affine_dimension(points);
  if (adim != d) throw NotFullDimensional(adim, d);

  std::vector<ScaledPoint> scaled;
  scaled.reserve(n);
  for (const Point& p : points) scaled.push_back(ScaledPoint::from(p));

  std::set<IntHyperplane> seen;
  std::map<std::vector<int>, IntHyperplane> contact_to_plane;
  std::vector<std::vector<bool>> facet_masks;  // parallel to contact_to_plane inserts

  std::vector<int> subset(d);
  for (int i = 0; i < d; ++i) subset[i] = i;
  auto advance = [&]() -> bool {
    int i = d - 1;
    while (i >= 0 && subset[i] == n - d + i) --i;
    if (i < 0) return false;
    ++subset[i];
    for (int j = i + 1; j < d; ++j) subset[j] = subset[j - 1] + 1;
    return true;
  };

  do {
    // Skip subsets lying inside an already accepted facet.
    bool inside_known = false;
    for (const auto& mask : facet_masks) {
      bool all = true;
      for (int i : subset)
        if (!mask[i]) {
          all = false;
          break;
        }
      if (all) {
        inside_known = true;
        break;
      }
    }
    if (inside_known) continue;

    std::optional<IntHyperplane> h = hyperplane_through(scaled, subset, d);
    if (!h) continue;
    if (!seen.insert(*h).second) continue;

    bool pos = false, neg = false;
    std::vector<int> contact;
    for (int i = 0; i < n; ++i) {
      int s = side_of(*h, scaled[i]);
      if (s > 0) pos = true;
      else if (s < 0) neg = true;
      else contact.push_back(i);
      if (pos && neg) break;
    }
    if (pos && neg) continue;  // not supporting
    if (pos) {
      // Flip so the polytope sits on the a·x <= c side.
      for (Integer& x : h->a) x = -x;
      h->c = -h->c;
    }
    if (affine_dimension_of(points, contact) != d - 1) continue;  // touches a lower face
    if (contact_to_plane.emplace(contact, *h).second) {
      std::vector<bool> mask(n, false);
      for (int i : contact) mask[i] = true;
      facet_masks.push_back(std::move(mask));
    }
  } while (advance());

  // A point is extreme iff the facets through it pin it down to itself.
  HullResult result;
  result.is_vertex.assign(n, false);
  for (int i = 0; i < n; ++i) {
    std::vector<int> meet;
    bool first = true;
    for (const auto& [contact, plane] : contact_to_plane) {
      if (!std::binary_search(contact.begin(), contact.end(), i)) continue;
      if (first) {
        meet = contact;
        first = false;
      } else {
        std::vector<int> tmp;
        std::set_intersection(meet.begin(), meet.end(), contact.begin(), contact.end(),
                              std::back_inserter(tmp));
        meet = std::move(tmp);
      }
    }
    result.is_vertex[i] = !first && meet == std::vector<int>{i};
  }

  for (const auto& [contact, plane] : contact_to_plane) {
    Facet f;
    f.vertices = contact;
    f.plane.normal.reserve(d);
    for (const Integer& x : plane.a) f.plane.normal.push_back(Rational(x));
    f.plane.offset = Rational(plane.c);
    result.facets.push_back(std::move(f));
  }
  return result;
}

}  // namespace detail

/**
 * Every facet of conv(points) as (supporting hyperplane, contact set),
 * deduplicated and ordered by contact set. Requires full-dimensional input
 * whose points are all hull vertices.
 */
inline std::vector<Facet> facet_enumeration(const std::vector<Point>& points) {
  detail::HullResult hull = detail::hull_brute_force(points);
  for (std::size_t i = 0; i < hull.is_vertex.size(); ++i)
    if (!hull.is_vertex[i]) throw NonVertexPoint(static_cast<int>(i));
  return std::move(hull.facets);
}

/// Contact sets only, for callers that feed build_face_lattice.
inline std::vector<std::vector<int>> facet_vertex_sets(const std::vector<Point>& points) {
  std::vector<std::vector<int>> sets;
  for (Facet& f : facet_enumeration(points)) sets.push_back(std::move(f.vertices));
  return sets;
}

}  // namespace fc
