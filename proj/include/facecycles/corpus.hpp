#pragma once

#include <random>
#include <set>
#include <string>
#include <vector>

#include "facecycles/hull.hpp"

namespace fc {

/// Standard d-simplex: the origin and the d unit vectors.
inline std::vector<Point> simplex_vertices(int d) {
  if (d < 1) throw InputError("simplex dimension must be >= 1");
  std::vector<Point> pts(d + 1, Point(d, Rational(0)));
  for (int i = 0; i < d; ++i) pts[i + 1][i] = 1;
  return pts;
}

/// Unit cube {0,1}^d.
inline std::vector<Point> cube_vertices(int d) {
  if (d < 1 || d > 20) throw InputError("cube dimension out of range");
  std::vector<Point> pts;
  pts.reserve(1 << d);
  for (int mask = 0; mask < (1 << d); ++mask) {
    Point p(d);
    for (int i = 0; i < d; ++i) p[i] = Rational((mask >> i) & 1);
    pts.push_back(std::move(p));
  }
  return pts;
}

/// Cross-polytope: the 2d points ±e_i.
inline std::vector<Point> crosspolytope_vertices(int d) {
  if (d < 1) throw InputError("cross-polytope dimension must be >= 1");
  std::vector<Point> pts;
  pts.reserve(2 * d);
  for (int i = 0; i < d; ++i) {
    Point plus(d, Rational(0)), minus(d, Rational(0));
    plus[i] = 1;
    minus[i] = -1;
    pts.push_back(std::move(plus));
    pts.push_back(std::move(minus));
  }
  return pts;
}

/// Cyclic polytope C(n, d): the moment curve t -> (t, t^2, ..., t^d) at
/// t = 1..n.
inline std::vector<Point> cyclic_vertices(int n, int d) {
  if (d < 2 || n < d + 1) throw InputError("cyclic polytope needs n >= d+1, d >= 2");
  std::vector<Point> pts;
  pts.reserve(n);
  for (int t = 1; t <= n; ++t) {
    Point p(d);
    Rational v = 1;
    for (int i = 0; i < d; ++i) {
      v *= Rational(t);
      p[i] = v;
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

/**
 * Seeded random d-polytope with exactly n vertices: points drawn with
 * small-denominator rational coordinates in [-2, 2], deduplicated, then
 * non-vertices dropped via facet_enumeration feedback and replacements
 * drawn until the hull has n vertices.
 */
inline std::vector<Point> random_polytope_vertices(int d, int n, uint64_t seed) {
  if (d < 2 || d > 6) throw InputError("random polytope dimension out of range 2..6");
  if (n < d + 1 || n > 40) throw InputError("random polytope needs d+1 <= n <= 40 vertices");
  std::mt19937_64 rng(seed);
  auto draw_coord = [&]() {
    long den = 1 + static_cast<long>(rng() % 12);
    long num = static_cast<long>(rng() % (4 * den + 1)) - 2 * den;
    return Rational(num, den);
  };
  std::set<Point> pool;
  std::vector<Point> pts;
  auto top_up = [&]() {
    while (static_cast<int>(pts.size()) < n) {
      Point p(d);
      for (int c = 0; c < d; ++c) p[c] = draw_coord();
      if (pool.insert(p).second) pts.push_back(std::move(p));
    }
  };
  for (int round = 0; round < 200; ++round) {
    top_up();
    if (affine_dimension(pts) < d) {
      // Degenerate sample; draw fresh points on top (dedup keeps them new).
      pts.pop_back();
      continue;
    }
    try {
      facet_enumeration(pts);
      return pts;
    } catch (const NonVertexPoint& nv) {
      pts.erase(pts.begin() + nv.index);
    }
  }
  throw InputError("random polytope generation did not converge");
}

}  // namespace fc
