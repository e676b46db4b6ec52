#ifndef PBAN_FENCHEL_HPP
#define PBAN_FENCHEL_HPP

#include <optional>

#include "pban/plfunc.hpp"
#include "pban/typespace.hpp"

namespace pban {

enum class TriState { Unchecked, Yes, No };

/// A convex piecewise-linear function on a space, candidate Katetov
/// function. f(v) = max over pieces of slope.v + intercept.
struct KFn {
  Space space;
  PLMax pieces;
  TriState katetov_checked = TriState::Unchecked;

  /// Canonicalizes the piece list (prunes inactive pieces, sorts).
  static KFn make(Space space, PLMax pieces);

  bool operator==(const KFn& other) const {
    return space == other.space && pieces == other.pieces;
  }
};

Scalar kfn_eval(const KFn& f, const Vec& v);

/// The Legendre-Fenchel conjugate, kept in lower-envelope form: each
/// generator (point, value) is (slope_i, -intercept_i) of the source, and
/// f*(lambda) = min { sum mu_i value_i : sum mu_i point_i = lambda, mu in
/// the simplex }. Finite exactly on conv of the source slopes.
struct ConjFn {
  Space dual;  // carries the dual ball
  std::vector<AffPiece> generators;  // slope = point, intercept = value
};

ConjFn conjugate(const KFn& f);

/// f*(lambda); nullopt outside dom f*.
std::optional<Scalar> conj_eval(const ConjFn& c, const Vec& lambda);

/// The function v -> sup over the dual ball of (lambda.v - c(lambda));
/// inverse of conjugate on Katetov functions.
KFn biconjugate(const ConjFn& c);

struct KatetovReport {
  bool ok = true;
  std::string reason;
  /// max over the dual ball of f*(l) + f*(-l); must be <= 0.
  Scalar antipode_max = 0;
  std::optional<Vec> bad_direction;
};

/// The conjugate criterion: slopes in the dual ball, dom f* = the whole
/// dual ball, and antipode sums nonpositive. Exact.
KatetovReport is_katetov(const KFn& f);

/// Same, but caches the result in katetov_checked.
void ensure_katetov(KFn& f);

/// Exact sup-norm distance of two Katetov functions (nullopt if infinite,
/// which cannot happen when both are Katetov over the same space).
std::optional<Scalar> kfn_distance(const KFn& f, const KFn& g);

/// Smallest Katetov extension of f restricted to the nonempty bounded
/// region {x : region}: y -> inf over x in the region of f(x) + norm(y-x).
KFn katetov_extend(const KFn& f, const std::vector<LinCon>& region);

/// sup |katetov_extend(f|X) - f|: how well the restriction to X already
/// determines f. Zero when X contains all breakpoints.
Scalar locality_gap(const KFn& f, const std::vector<LinCon>& region);

struct MaxTestReport {
  enum class Verdict { Violated, NoViolationFound };
  Verdict verdict = Verdict::NoViolationFound;
  /// Best g*(lambda) - f*(lambda) found over Katetov g <= f and sphere lambda.
  Scalar gap = 0;
  /// Exact upper bound on that quantity over all Katetov g <= f; the
  /// verdict carries a two-sided certificate when dstar <= r.
  Scalar dstar = 0;
  bool certified = false;
  std::optional<KFn> witness_g;
  std::optional<Vec> witness_lambda;
  int level = 1;
};

/// Does some Katetov g <= f satisfy g* > f* + r somewhere on the dual
/// sphere? Violated verdicts are exact (witness re-verified); clean
/// verdicts are certified when the concave bound dstar is <= r.
MaxTestReport boundary_max_test(const KFn& f, const Scalar& r, int level);

/// Bijection between 1-types over E and Katetov functions on E:
/// f(a) = seminorm of x - a.
KFn to_katetov(const TypePres& xi);
TypePres from_katetov(const KFn& f);

enum class IsolationVerdict { Isolated, NotIsolated, Inconclusive };

struct IsolationReport {
  IsolationVerdict verdict = IsolationVerdict::Inconclusive;
  Scalar gap = 0;  // lower bound on the non-isolation radius when NotIsolated
  int level = 1;
};

/// A 1-type is isolated iff its Katetov function is boundary-maximal
/// (finite presentations are always local).
IsolationReport is_isolated(const TypePres& xi, int level = 2);

struct CrosscheckReport {
  bool smooth = false;
  IsolationReport isolation;
  /// Agreement of smoothness of v with isolation of tp(u / span v).
  bool agree = false;
};

/// Compares is_smooth(E2, v) against isolation of the type of u over
/// span(v) in a two-dimensional space.
CrosscheckReport smooth_isolation_crosscheck(const Space& E2, const Vec& v, const Vec& u,
                                             int level = 2);

}  // namespace pban

#endif
