#ifndef PBAN_FORGE_HPP
#define PBAN_FORGE_HPP

#include <optional>
#include <vector>

#include "pban/amalgam.hpp"
#include "pban/typespace.hpp"

namespace pban {

/// One realized type: the recorded subspace inclusion into stage `stage`,
/// the type presentation over that subspace, and the generator images.
struct LedgerEntry {
  std::size_t stage = 0;
  LinMap sub;                 // F -> spaces[stage], isometric
  TypePres xi;                // type over sub.source
  std::vector<Vec> witness;   // images of the generators in spaces[stage]
};

/// A forbidden ball in type space: realizations must keep distance > radius.
struct AvoidBall {
  TypePres xi;     // over the chain base
  Scalar radius;
};

/// Raised by step when a realization would land inside an avoid ball.
struct AvoidanceViolation : Error {
  TypePres avoided;
  Scalar radius;
  Scalar lo;  // certified lower bound on the distance that failed to clear radius
  AvoidanceViolation(TypePres a, Scalar r, Scalar l)
      : Error("realization lands inside an avoided type ball"),
        avoided(std::move(a)), radius(std::move(r)), lo(std::move(l)) {}
};

/// An increasing chain of spaces built by iterated type realization.
/// links[k] embeds spaces[k] into spaces[k+1] isometrically.
struct ChainState {
  std::vector<Space> spaces;
  std::vector<LinMap> links;
  std::vector<LedgerEntry> ledger;
  std::vector<Scalar> defect_history;
  std::vector<AvoidBall> avoid_list;

  static ChainState start(Space base);
  const Space& top() const { return spaces.back(); }
  /// Composition of links from stage k into the top space.
  LinMap lift(std::size_t k) const;
};

/// Net / search parameters shared by the scheduler and the certifier.
struct NetParams {
  Scalar grid_step = Scalar(1);   // base-space grid step for net points
  Scalar grid_radius = Scalar(2); // base-space grid radius
  std::vector<Scalar> scales = {Scalar(1), Scalar(1, 2), Scalar(2)};
  std::size_t dim_cap = kDimCap;
  std::size_t pool_cap = 4000;    // cap on candidate image tuples per problem
};

/// Realizes xi (a type over sub.source, sub: F -> spaces[k]) by the pushout
/// of the top space with the generated space F[xi] over F. Appends the new
/// stage, its link, and a ledger entry whose witness realizes xi exactly.
/// Throws AvoidanceViolation (no mutation) when any witness type over the
/// base gets within radius of an avoid ball, and DimensionTooLarge when the
/// new stage would exceed net.dim_cap.
ChainState step(ChainState cs, const LinMap& sub, std::size_t stage, const TypePres& xi,
                const NetParams& net = {});

/// Greedy scheduler: up to `budget` rounds, realize the candidate type
/// (over the chain base) that most reduces the density defect of `samples`,
/// skipping candidates that violate avoidance or the dimension cap.
/// Stops early when no candidate strictly reduces the defect. Appends one
/// defect value per executed round.
ChainState schedule(ChainState cs, std::size_t budget, const NetParams& net,
                    const std::vector<TypePres>& candidates,
                    const std::vector<TypePres>& samples);

/// Defect of the sample types (1-types over the chain base) against the
/// structural net of the top space: lifted base grid points, lifted ledger
/// witness vectors, and their scaled copies. Nonincreasing along a chain.
Scalar defect_report(const ChainState& cs, const std::vector<TypePres>& samples,
                     const NetParams& net);

/// One extension problem: certify that top contains a copy of F extending
/// an isometric embedding of E. When phi is absent, E must equal the chain
/// base and the chain inclusion is used.
struct ExtensionProblem {
  LinMap incl;  // E -> F, isometric
  std::optional<LinMap> phi;  // E -> top
};

struct Catalog {
  std::vector<ExtensionProblem> problems;
};

struct CertifyOutcome {
  bool certified = false;
  /// Smallest eps achieved: (1-eps)|x| <= |psi x| <= (1+eps)|x| exactly.
  std::optional<Scalar> best_distortion;
  std::optional<LinMap> psi;  // F -> top extending phi, when a candidate was found
};

struct CertifyReport {
  std::vector<CertifyOutcome> outcomes;
  bool all_certified = true;
};

/// For each problem, searches image tuples for the complement basis of F
/// over a net of top-space vectors and verifies the two-sided distortion
/// bound exactly (ball vertices for the upper bound, preimage-ball
/// vertices for the lower). UNRESOLVED problems get certified = false with
/// the best distortion found, if any.
CertifyReport certify_eps_gurarij(const ChainState& cs, const Catalog& cat,
                                  const Scalar& eps, const NetParams& net = {});

/// The rational convex piecewise-linear 1-type presentations over a base
/// with breakpoints and values on the (radius, step) grid; dim-1 bases
/// only (throws GridTooLarge otherwise).
std::vector<TypePres> enumerate_candidate_types(const Space& base, const Scalar& radius,
                                                const Scalar& step,
                                                const Scalar& value_cap);

}  // namespace pban

#endif
