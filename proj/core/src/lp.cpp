#include "pban/lp.hpp"

#include <cassert>
#include <limits>

#include "pban/errors.hpp"

namespace pban {

namespace {

constexpr std::size_t kNoVar = std::numeric_limits<std::size_t>::max();

// Full-tableau simplex over exact rationals.
//
// Columns: 2n split variables (x = u - w), one slack per inequality,
// one artificial per row. Rows are pre-negated so rhs >= 0. Artificials
// never re-enter in phase 2; their reduced costs give the duals.
struct Tableau {
  std::size_t nrows, ncols;       // constraint rows, variable columns
  std::vector<Vec> rows;          // each of size ncols + 1 (rhs last)
  Vec obj;                        // reduced-cost row, size ncols + 1 (last = -objective value)
  std::vector<std::size_t> basis; // basis[i] = variable in row i
  std::size_t art_begin;          // first artificial column

  void pivot(std::size_t r, std::size_t c) {
    Scalar inv = 1 / rows[r][c];
    for (auto& v : rows[r]) v *= inv;
    for (std::size_t i = 0; i < nrows; ++i) {
      if (i == r || sgn(rows[i][c]) == 0) continue;
      Scalar f = rows[i][c];
      for (std::size_t j = 0; j <= ncols; ++j) rows[i][j] -= f * rows[r][j];
    }
    if (sgn(obj[c]) != 0) {
      Scalar f = obj[c];
      for (std::size_t j = 0; j <= ncols; ++j) obj[j] -= f * rows[r][j];
    }
    basis[r] = c;
  }

  // Runs simplex to optimality on the current objective row.
  // allow_artificials permits artificial columns to enter (phase 1 only).
  // Returns false on unboundedness.
  bool optimize(bool allow_artificials) {
    for (;;) {
      std::size_t enter = kNoVar;
      std::size_t limit = allow_artificials ? ncols : art_begin;
      for (std::size_t j = 0; j < limit; ++j) {
        if (sgn(obj[j]) > 0) { enter = j; break; }  // Bland: first improving column
      }
      if (enter == kNoVar) return true;
      std::size_t leave = kNoVar;
      Scalar best_ratio;
      for (std::size_t i = 0; i < nrows; ++i) {
        if (sgn(rows[i][enter]) <= 0) continue;
        Scalar ratio = rows[i][ncols] / rows[i][enter];
        if (leave == kNoVar || ratio < best_ratio ||
            (ratio == best_ratio && basis[i] < basis[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == kNoVar) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult lp_max(const Vec& objective, const std::vector<LinCon>& cons) {
  const std::size_t n = objective.size();
  const std::size_t m = cons.size();
  LpResult res;

  if (m == 0) {
    if (!is_zero(objective)) {
      res.status = LpStatus::Unbounded;
      return res;
    }
    res.status = LpStatus::Optimal;
    res.value = 0;
    res.x = Vec(n, Scalar(0));
    return res;
  }

  std::size_t n_ineq = 0;
  for (const auto& c : cons) {
    if (c.a.size() != n) throw DimensionMismatch("lp_max constraint width");
    if (!c.eq) ++n_ineq;
  }

  Tableau t;
  t.nrows = m;
  t.art_begin = 2 * n + n_ineq;
  t.ncols = t.art_begin + m;
  t.rows.assign(m, Vec(t.ncols + 1, Scalar(0)));
  t.basis.assign(m, 0);

  std::vector<bool> negated(m, false);
  std::size_t slack = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = cons[i];
    Scalar s = c.rhs < 0 ? Scalar(-1) : Scalar(1);
    negated[i] = c.rhs < 0;
    for (std::size_t j = 0; j < n; ++j) {
      t.rows[i][j] = s * c.a[j];
      t.rows[i][n + j] = -s * c.a[j];
    }
    if (!c.eq) t.rows[i][2 * n + slack++] = s;
    t.rows[i][t.art_begin + i] = 1;
    t.rows[i][t.ncols] = s * c.rhs;
    t.basis[i] = t.art_begin + i;
  }

  // Phase 1: drive out the artificials.
  t.obj.assign(t.ncols + 1, Scalar(0));
  for (std::size_t i = 0; i < m; ++i) t.obj[t.art_begin + i] = -1;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= t.ncols; ++j) t.obj[j] += t.rows[i][j];
  bool ok = t.optimize(true);
  assert(ok);
  (void)ok;
  if (sgn(t.obj[t.ncols]) != 0) {
    res.status = LpStatus::Infeasible;
    return res;
  }
  // Pivot basic artificials out where possible; rows that cannot be
  // cleared are redundant and stay harmlessly at zero.
  for (std::size_t i = 0; i < m; ++i) {
    if (t.basis[i] < t.art_begin) continue;
    for (std::size_t j = 0; j < t.art_begin; ++j) {
      if (sgn(t.rows[i][j]) != 0) {
        t.pivot(i, j);
        break;
      }
    }
  }

  // Phase 2.
  t.obj.assign(t.ncols + 1, Scalar(0));
  for (std::size_t j = 0; j < n; ++j) {
    t.obj[j] = objective[j];
    t.obj[n + j] = -objective[j];
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (t.basis[i] >= t.art_begin || sgn(t.obj[t.basis[i]]) == 0) continue;
    Scalar f = t.obj[t.basis[i]];
    for (std::size_t j = 0; j <= t.ncols; ++j) t.obj[j] -= f * t.rows[i][j];
  }
  if (!t.optimize(false)) {
    res.status = LpStatus::Unbounded;
    return res;
  }

  res.status = LpStatus::Optimal;
  res.x.assign(n, Scalar(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (t.basis[i] < n)
      res.x[t.basis[i]] += t.rows[i][t.ncols];
    else if (t.basis[i] < 2 * n)
      res.x[t.basis[i] - n] -= t.rows[i][t.ncols];
  }
  res.value = dot(objective, res.x);
  for (std::size_t i = 0; i < m; ++i)
    if (dot(cons[i].a, res.x) == cons[i].rhs) res.active.push_back(i);

  // Duals from the reduced costs of the artificial columns:
  // obj[art_i] = -y_i in the row orientation actually stored.
  res.dual.assign(m, Scalar(0));
  for (std::size_t i = 0; i < m; ++i) {
    Scalar y = -t.obj[t.art_begin + i];
    res.dual[i] = negated[i] ? Scalar(-y) : y;
  }
  return res;
}

bool lp_feasible(const std::vector<LinCon>& cons, std::size_t dim, Vec* point) {
  LpResult r = lp_max(Vec(dim, Scalar(0)), cons);
  if (r.status != LpStatus::Optimal) return false;
  if (point) *point = r.x;
  return true;
}

bool in_conv_hull(const Vec& p, const std::vector<Vec>& points) {
  if (points.empty()) return false;
  const std::size_t d = p.size();
  const std::size_t k = points.size();
  // Variables: convex weights. Equalities: sum to one, combination hits p.
  std::vector<LinCon> cons;
  for (std::size_t i = 0; i < k; ++i) {
    Vec row(k, Scalar(0));
    row[i] = -1;
    cons.push_back({row, Scalar(0), false});  // -w_i <= 0
  }
  cons.push_back({Vec(k, Scalar(1)), Scalar(1), true});
  for (std::size_t j = 0; j < d; ++j) {
    Vec row(k);
    for (std::size_t i = 0; i < k; ++i) {
      if (points[i].size() != d) throw DimensionMismatch("in_conv_hull");
      row[i] = points[i][j];
    }
    cons.push_back({row, p[j], true});
  }
  return lp_feasible(cons, k);
}

}  // namespace pban
