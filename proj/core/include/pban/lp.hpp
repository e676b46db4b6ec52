#ifndef PBAN_LP_HPP
#define PBAN_LP_HPP

#include <cstddef>
#include <vector>

#include "pban/linalg.hpp"

namespace pban {

/// One linear constraint: a.x <= rhs, or a.x == rhs when eq is set.
struct LinCon {
  Vec a;
  Scalar rhs;
  bool eq = false;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Scalar value = 0;
  Vec x;
  /// Indices of constraints tight at x.
  std::vector<std::size_t> active;
  /// One multiplier per constraint: dual feasible, nonnegative on
  /// inequalities, with dual^T A = objective and dual^T rhs = value.
  Vec dual;
};

/// Exact rational simplex over free variables. Maximizes objective.x
/// subject to the constraints. Bland's rule, so it always terminates.
LpResult lp_max(const Vec& objective, const std::vector<LinCon>& cons);

inline LpResult lp_min(const Vec& objective, const std::vector<LinCon>& cons) {
  LpResult r = lp_max(neg(objective), cons);
  r.value = -r.value;
  for (auto& d : r.dual) d = -d;
  return r;
}

/// True iff the system has a solution; fills point with one if so.
bool lp_feasible(const std::vector<LinCon>& cons, std::size_t dim, Vec* point = nullptr);

/// Exact membership of p in conv(points).
bool in_conv_hull(const Vec& p, const std::vector<Vec>& points);

}  // namespace pban

#endif
