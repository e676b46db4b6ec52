#include "pban/plfunc.hpp"

#include <algorithm>

#include "pban/errors.hpp"

namespace pban {

Scalar pl_eval(const PLMax& f, const Vec& v) {
  if (f.empty()) throw ValidationError("pl_eval on empty piece list");
  Scalar best = dot(f[0].slope, v) + f[0].intercept;
  for (std::size_t i = 1; i < f.size(); ++i) {
    Scalar val = dot(f[i].slope, v) + f[i].intercept;
    if (val > best) best = val;
  }
  return best;
}

namespace {

bool piece_less(const AffPiece& a, const AffPiece& b) {
  if (a.slope != b.slope) return lex_less(a.slope, b.slope);
  return a.intercept < b.intercept;
}

// Is piece p ever >= the max of the others? Empty "others" counts as yes.
bool piece_needed(const AffPiece& p, const PLMax& others) {
  if (others.empty()) return true;
  const std::size_t e = p.slope.size();
  std::vector<LinCon> cons;
  for (const auto& o : others) {
    Vec row(o.slope);
    row.push_back(Scalar(-1));
    cons.push_back({row, -o.intercept, false});  // o.slope v - t <= -o.intercept
  }
  Vec obj(p.slope);
  obj.push_back(Scalar(-1));
  LpResult r = lp_max(obj, cons);
  if (r.status == LpStatus::Unbounded) return true;
  (void)e;
  return r.value + p.intercept > 0;
}

}  // namespace

PLMax pl_prune(PLMax f) {
  std::sort(f.begin(), f.end(), piece_less);
  f.erase(std::unique(f.begin(), f.end()), f.end());
  for (std::size_t i = 0; i < f.size();) {
    PLMax others;
    for (std::size_t j = 0; j < f.size(); ++j)
      if (j != i) others.push_back(f[j]);
    if (!piece_needed(f[i], others))
      f.erase(f.begin() + i);
    else
      ++i;
  }
  return f;
}

std::optional<Scalar> pl_conj_eval(const PLMax& f, const Vec& lambda) {
  if (f.empty()) throw ValidationError("pl_conj_eval on empty piece list");
  std::vector<LinCon> cons;
  for (const auto& p : f) {
    Vec row(p.slope);
    row.push_back(Scalar(-1));
    cons.push_back({row, -p.intercept, false});  // slope.v - t <= -intercept
  }
  Vec obj(lambda);
  obj.push_back(Scalar(-1));
  LpResult r = lp_max(obj, cons);
  if (r.status == LpStatus::Unbounded) return std::nullopt;
  if (r.status != LpStatus::Optimal) throw ValidationError("pl_conj_eval infeasible");
  return r.value;
}

std::optional<Scalar> pl_sup_diff(const PLMax& f, const PLMax& g) {
  // sup (f - g) = max over pieces p of f of (p.intercept + g*(p.slope)).
  std::optional<Scalar> best;
  for (const auto& p : f) {
    auto c = pl_conj_eval(g, p.slope);
    if (!c) return std::nullopt;
    Scalar v = p.intercept + *c;
    if (!best || v > *best) best = v;
  }
  return best;
}

std::vector<Vec> pl_cell_vertices(const PLMax& f, const std::vector<LinCon>& domain,
                                  std::size_t dim) {
  if (f.empty()) throw ValidationError("pl_cell_vertices on empty piece list");
  std::vector<Vec> verts;
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::vector<LinCon> cons = domain;
    for (std::size_t j = 0; j < f.size(); ++j) {
      if (j == i) continue;
      // piece i active: (slope_j - slope_i).v <= intercept_i - intercept_j
      cons.push_back({sub(f[j].slope, f[i].slope), f[i].intercept - f[j].intercept, false});
    }
    try {
      auto cell = enumerate_vertices(cons, dim);
      verts.insert(verts.end(), cell.begin(), cell.end());
    } catch (const InfeasibleInput&) {
      // piece i inactive on the domain
    }
  }
  if (verts.empty()) throw EmptyRegion("pl_cell_vertices: empty domain");
  return canonical_vector_set(std::move(verts));
}

PLMax pl_restricted_conjugate(const PLMax& f, const std::vector<LinCon>& domain,
                              std::size_t dim) {
  PLMax out;
  for (const auto& v : pl_cell_vertices(f, domain, dim))
    out.push_back({v, -pl_eval(f, v)});
  return pl_prune(std::move(out));
}

}  // namespace pban
