#ifndef PBAN_CENSUS_HPP
#define PBAN_CENSUS_HPP

#include <vector>

#include "pban/fenchel.hpp"
#include "pban/typespace.hpp"

namespace pban {

/// A 2^m family of pairwise separated 1-types over a polyhedral base,
/// built from m anchor vectors with the ball-intersection construction.
struct SeparatedFamily {
  Space base;
  std::vector<Vec> anchors;
  std::vector<std::vector<int>> sign_patterns;  // entries +1 / -1
  std::vector<TypePres> types;                  // one per sign pattern
  /// Certified lower bounds on the pairwise type distances (exact
  /// rationals; zero diagonal, symmetric).
  std::vector<std::vector<Scalar>> pairwise_lo;
};

/// Builds the separated family over E. Anchors must satisfy
/// |v_n +- v_m| <= |v_n| + |v_m| - 1 exactly and |v_n| >= 1; when the
/// anchor list is empty they are searched on the integer-combination grid
/// of the given radius and step (NoAnchorsFound on failure). The types
/// realize a common point of the balls B(eps_n v_n, |v_n| - 1/2) inside
/// the sup-norm embedding of E by its dual-ball vertex functionals.
/// Pairwise bounds are evaluated at the probe points {+-v_n} (set
/// exact_pairs to use the exact type distance instead; much slower).
SeparatedFamily lindenstrauss_family(const Space& E, std::size_t m,
                                     std::vector<Vec> anchors = {},
                                     const Scalar& grid_radius = Scalar(10),
                                     const Scalar& grid_step = Scalar(1),
                                     bool exact_pairs = false);

struct NetReport {
  std::vector<KFn> net;
  /// Per sample: sup over the R-ball of |sample - nearest net function|.
  std::vector<Scalar> min_distances;
  bool covered = true;  // all distances <= eps
};

/// The finite net of convex Katetov functions with breakpoints on the
/// (R, eps)-grid and values on the eps-grid (capped at value_cap), plus a
/// coverage report for the samples on the R-truncation. 1-dim bases only;
/// GridTooLarge otherwise.
NetReport polyhedral_net(const Space& E, const Scalar& R, const Scalar& eps,
                         const std::vector<KFn>& samples,
                         const Scalar& value_cap = Scalar(3));

struct DensityProbe {
  std::vector<IsolationReport> verdicts;
  std::size_t isolated = 0;
  std::size_t not_isolated = 0;
  std::size_t inconclusive = 0;
  std::vector<Scalar> gaps;  // one per NotIsolated verdict
};

/// Runs the isolation test on each sample and tallies the verdicts.
DensityProbe isolated_density_probe(const Space& E, const std::vector<TypePres>& samples,
                                    int level = 2);

}  // namespace pban

#endif
