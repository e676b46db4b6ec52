#ifndef PBAN_POLYBALL_HPP
#define PBAN_POLYBALL_HPP

#include <cstddef>
#include <vector>

#include "pban/linalg.hpp"
#include "pban/lp.hpp"

namespace pban {

/// Hard cap on vertex enumeration; double description blows up above this.
inline constexpr std::size_t kDimCap = 6;

/// A centrally symmetric full-dimensional polytope, the unit ball of a
/// norm. Facet form: { v : f.v <= 1 for every facet functional f }.
/// Vertex form: conv of the vertex list. Either representation may be
/// absent until complete_reps is called.
struct PolyBall {
  std::size_t dim = 0;
  std::vector<Vec> facets;
  std::vector<Vec> vertices;
  bool has_facets = false;
  bool has_vertices = false;

  static PolyBall from_facets(std::size_t dim, std::vector<Vec> facets);
  static PolyBall from_vertices(std::size_t dim, std::vector<Vec> vertices);

  /// The cube [-1,1]^n: ball of the sup norm.
  static PolyBall cube(std::size_t dim);
  /// The cross-polytope conv{±e_i}: ball of the sum norm.
  static PolyBall cross(std::size_t dim);

  bool operator==(const PolyBall& other) const = default;
};

/// Gauge of the ball at v (requires facets): max over facet functionals.
Scalar gauge(const PolyBall& ball, const Vec& v);

/// Exact membership (requires facets).
bool contains(const PolyBall& ball, const Vec& v);

/// Fills in the missing representation, prunes redundancy from both, and
/// canonicalizes order. Validates symmetry, boundedness and that 0 is
/// interior. Throws DegenerateBall / UnboundedBall / DimensionTooLarge.
PolyBall complete_reps(const PolyBall& ball);

/// Polar ball: vertices and facets swap roles. Input must be completed.
PolyBall polar(const PolyBall& ball);

/// Vertices of the bounded polyhedron { x : cons }. Throws UnboundedBall
/// when the region is unbounded, InfeasibleInput when empty.
std::vector<Vec> enumerate_vertices(const std::vector<LinCon>& cons, std::size_t dim);

/// Sort lexicographically and remove duplicates.
std::vector<Vec> canonical_vector_set(std::vector<Vec> vecs);

/// Keep only points that are vertices of the convex hull of the set.
std::vector<Vec> conv_hull_vertices(const std::vector<Vec>& points);

}  // namespace pban

#endif
