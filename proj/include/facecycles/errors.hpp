#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fc {

/// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Input or precondition violations (bad files, bad geometry, bad arguments).
struct InputError : Error {
  using Error::Error;
};

struct MixedDimensions : InputError {
  MixedDimensions() : InputError("points have mixed coordinate lengths") {}
};

struct NotFullDimensional : InputError {
  explicit NotFullDimensional(int affine_dim, int ambient_dim)
      : InputError("point set has affine dimension " + std::to_string(affine_dim) +
                   " but must span the ambient dimension " + std::to_string(ambient_dim)) {}
};

struct NonVertexPoint : InputError {
  int index;
  explicit NonVertexPoint(int index)
      : InputError("input point " + std::to_string(index) +
                   " is not a vertex of the convex hull"),
        index(index) {}
};

struct NotALattice : InputError {
  explicit NotALattice(const std::string& detail)
      : InputError("facet list does not define a polytope face lattice: " + detail) {}
};

struct NoEdges : InputError {
  NoEdges() : InputError("complex has no 1-faces") {}
};

struct NotPure : InputError {
  explicit NotPure(const std::string& detail)
      : InputError("complex is not pure: " + detail) {}
};

struct Malformed2Face : InputError {
  explicit Malformed2Face(const std::string& detail)
      : InputError("2-face boundary is not a single cycle: " + detail) {}
};

struct AmbientMismatch : InputError {
  AmbientMismatch() : InputError("edge sets belong to different ambient graphs") {}
};

struct NotEven : InputError {
  std::vector<int> odd_vertices;
  explicit NotEven(std::vector<int> odd)
      : InputError("edge set is not an even subgraph"), odd_vertices(std::move(odd)) {}
};

struct DimensionTooLow : InputError {
  explicit DimensionTooLow(int dim)
      : InputError("polytope dimension " + std::to_string(dim) + " is below 2") {}
};

struct GenericityExhausted : Error {
  explicit GenericityExhausted(int attempts)
      : Error("no generic shelling direction found after " + std::to_string(attempts) +
              " attempts") {}
};

struct NotRealized : InputError {
  explicit NotRealized(const std::string& detail)
      : InputError("coordinates do not realize the face lattice: " + detail) {}
};

struct NoCoordinates : InputError {
  NoCoordinates() : InputError("operation requires vertex coordinates") {}
};

/// A proof-derived invariant failed at runtime. Indicates a bug, never
/// expected on valid input.
struct InternalAssertion : Error {
  explicit InternalAssertion(const std::string& what)
      : Error("internal assertion failed: " + what) {}
};

inline void internal_check(bool ok, const std::string& what) {
  if (!ok) throw InternalAssertion(what);
}

}  // namespace fc
