#ifndef PBAN_SPACE_HPP
#define PBAN_SPACE_HPP

#include <optional>
#include <string>
#include <vector>

#include "pban/polyball.hpp"

namespace pban {

/// A finite-dimensional polyhedral normed space. The ball is always kept
/// completed (both representations, canonical order).
struct Space {
  std::size_t dim = 0;
  PolyBall ball;
  std::string label;

  /// Completes and validates the ball.
  static Space make(PolyBall ball, std::string label = "");
  /// The zero space.
  static Space trivial();
  /// R^n with the sup norm.
  static Space sup_space(std::size_t n, std::string label = "");
  /// R^n with the sum norm.
  static Space sum_space(std::size_t n, std::string label = "");

  /// Labels are metadata; equality is dimension and ball.
  bool operator==(const Space& other) const {
    return dim == other.dim && ball == other.ball;
  }
};

enum class IsoState { Unchecked, Isometric, NotIsometric };

/// A linear map between spaces, matrix of shape target.dim x source.dim.
struct LinMap {
  Space source;
  Space target;
  Mat matrix;
  IsoState isometry_checked = IsoState::Unchecked;
  /// Set when NotIsometric: a source vector whose norm the map changes.
  std::optional<Vec> witness;

  Vec apply(const Vec& v) const { return matrix.apply(v); }

  static LinMap identity(const Space& s);
  static LinMap between(Space source, Space target, Mat matrix);
};

/// g o f.
LinMap compose(const LinMap& g, const LinMap& f);

/// A face of the dual ball: the norming functionals of some vector.
struct Face {
  std::vector<Vec> generators;  // vertices of the face
  std::size_t affine_dim = 0;
};

Scalar norm(const Space& s, const Vec& v);

Space dual_space(const Space& s);

/// The face { dual-norm(l) <= 1, l.v = norm(v) } of the dual ball.
Face norming_functionals(const Space& s, const Vec& v);

/// True iff the norming functional at v is unique.
bool is_smooth(const Space& s, const Vec& v);

/// Resolves isometry_checked exactly; fills witness when not isometric.
LinMap check_isometry(LinMap m);

/// The subspace spanned by the given independent vectors, returned as an
/// isometric inclusion map whose source carries the induced ball in the
/// coordinates of the basis.
LinMap subspace_from_basis(const Space& ambient, const std::vector<Vec>& basis,
                           std::string label = "");

}  // namespace pban

#endif
