#ifndef PBAN_AMALGAM_HPP
#define PBAN_AMALGAM_HPP

#include <optional>
#include <vector>

#include "pban/space.hpp"

namespace pban {

/// Result of an (approximate) amalgamation: the joined space, the two
/// isometric embeddings into it, and the dimension quotiented away.
struct AmalgamOut {
  Space result;
  LinMap g0;  // F0 (resp. E) -> result
  LinMap g1;  // F1 (resp. F) -> result
  std::size_t kernel_dim = 0;
  /// approx_join only: some tolerance was raised to the 2^-20 floor.
  bool tolerance_capped = false;
};

/// Raised when the approximate-join compatibility condition fails; the
/// witness coefficients r satisfy |norm(sum r a) - norm(sum r b)| > sum |r| eps.
struct ConditionViolated : Error {
  Vec witness;
  explicit ConditionViolated(Vec w)
      : Error("join condition violated"), witness(std::move(w)) {}
};

struct ConditionReport {
  bool ok = true;
  std::optional<Vec> witness;
};

/// Smallest positive tolerance accepted verbatim by approx_join.
Scalar min_join_tolerance();

/// Pushout of isometric embeddings f0: E -> F0, f1: E -> F1. The result
/// ball is conv of the embedded balls on (F0 + F1) / span{(f0 w, -f1 w)}.
AmalgamOut amalgamate(const Space& E, const Space& F0, const Space& F1,
                      LinMap f0, LinMap f1);

/// Joins E and F so that the i-th marked points end up within eps_i of
/// each other; eps_i = 0 identifies them exactly. Requires the
/// compatibility condition (see condition_check).
AmalgamOut approx_join(const Space& E, const Space& F, const std::vector<Vec>& abar,
                       const std::vector<Vec>& bbar, const std::vector<Scalar>& eps);

/// Decides |norm_E(sum r_i a_i) - norm_F(sum r_i b_i)| <= sum |r_i| eps_i
/// for all real coefficients r, exactly.
ConditionReport condition_check(const Space& E, const Space& F, const std::vector<Vec>& abar,
                                const std::vector<Vec>& bbar, const std::vector<Scalar>& eps);

}  // namespace pban

#endif
