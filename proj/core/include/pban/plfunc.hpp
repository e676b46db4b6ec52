#ifndef PBAN_PLFUNC_HPP
#define PBAN_PLFUNC_HPP

#include <optional>
#include <vector>

#include "pban/polyball.hpp"

namespace pban {

/// One affine piece v -> slope.v + intercept.
struct AffPiece {
  Vec slope;
  Scalar intercept;
  bool operator==(const AffPiece& other) const = default;
};

/// Convex piecewise-linear function in max-of-affine form.
using PLMax = std::vector<AffPiece>;

/// max over pieces; throws on an empty piece list.
Scalar pl_eval(const PLMax& f, const Vec& v);

/// Removes pieces that never attain the max and sorts canonically, so
/// equal functions get equal piece lists.
PLMax pl_prune(PLMax f);

/// Conjugate value f*(lambda) = sup_v lambda.v - f(v); nullopt when the
/// sup is +infinity (lambda outside dom f*).
std::optional<Scalar> pl_conj_eval(const PLMax& f, const Vec& lambda);

/// sup_v (f(v) - g(v)); nullopt when +infinity.
std::optional<Scalar> pl_sup_diff(const PLMax& f, const PLMax& g);

/// Vertices of the subdivision of the bounded polytope {domain} into the
/// linearity cells of f.
std::vector<Vec> pl_cell_vertices(const PLMax& f, const std::vector<LinCon>& domain,
                                  std::size_t dim);

/// Conjugate of f restricted to a bounded polyhedral domain, in
/// max-of-affine form (valid for every argument): the sup over the domain
/// is attained at a subdivision vertex.
PLMax pl_restricted_conjugate(const PLMax& f, const std::vector<LinCon>& domain,
                              std::size_t dim);

}  // namespace pban

#endif
