#ifndef PBAN_TYPESPACE_HPP
#define PBAN_TYPESPACE_HPP

#include <optional>
#include <vector>

#include "pban/space.hpp"

namespace pban {

/// A finite presentation of a quantifier-free n-type over a base space E:
/// a seminorm on E + n formal generators extending the norm of E. The
/// seminorm is stored by a finite symmetric set of support functionals on
/// R^(dim E + n) (base block first): value(z) = max over funcs of f.z.
struct TypePres {
  Space base;
  std::size_t nvars = 0;
  std::vector<Vec> funcs;
  std::size_t kernel_dims = 0;

  /// Validates the extension property, canonicalizes the functional set.
  static TypePres make(Space base, std::size_t nvars, std::vector<Vec> funcs);

  bool operator==(const TypePres& other) const = default;
};

/// The seminorm of the presentation at z in R^(dim base + nvars).
Scalar seminorm(const TypePres& t, const Vec& z);

/// The type of the tuple abar over E = incl.source inside F = incl.target.
TypePres tp(const LinMap& incl, const std::vector<Vec>& abar);

/// Realized type of abar in F over F itself.
TypePres tp(const Space& F, const std::vector<Vec>& abar);

/// The space generated by a type: the quotient of E + n generators by the
/// seminorm kernel, with the induced norm.
struct GeneratedSpace {
  Space space;                 // E[xi]
  LinMap base_incl;            // E -> E[xi], isometric
  std::vector<Vec> generator_images;  // images of x_1..x_n
  Mat quotient;                // R^(dim E + n) -> E[xi]
};
GeneratedSpace generated_space(const TypePres& t);

/// Variable change: phi maps E(m) -> E(nvars) and must restrict to the
/// identity on the E block. Result is the m-variable type z -> value(phi z).
TypePres pullback(const TypePres& t, const Mat& phi);

/// Parameter restriction along an isometric inclusion incl: E -> base(t).
TypePres restrict_params(const TypePres& t, const LinMap& incl);

struct DistanceBracket {
  Scalar lo = 0;
  Scalar hi = 0;
  Scalar radius_used = 0;
  bool exact = true;
  /// A point (a, lambda) with sum |lambda_i| = 1 attaining lo.
  std::optional<Vec> witness;
};

/// Distance between two n-types over the same base: the exact sup of the
/// seminorm difference over sum |lambda_i| = 1. Always exact here; the
/// radius/tolerance knobs are accepted for interface stability.
DistanceBracket type_distance(const TypePres& xi, const TypePres& zeta,
                              const Scalar& R = Scalar(0), const Scalar& tol = Scalar(0));

/// Max over the sample types of the distance from the nearest realized
/// type tp(c/E) over a rational net of G with the given step; an upper
/// bound on how far the samples are from being realized in G.
Scalar realized_density_defect(const LinMap& incl_E_in_G,
                               const std::vector<TypePres>& samples,
                               const Scalar& net_step);

}  // namespace pban

#endif
