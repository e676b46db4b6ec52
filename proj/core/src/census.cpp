#include "pban/census.hpp"

#include <algorithm>
#include <functional>

#include "pban/errors.hpp"
#include "pban/forge.hpp"

namespace pban {

namespace {

Scalar abs_scalar(const Scalar& x) { return x < 0 ? Scalar(-x) : x; }

// |v +- w| <= |v| + |w| - 1 for both signs, exactly.
bool anchor_pair_ok(const Space& E, const Vec& v, const Vec& w) {
  Scalar bound = norm(E, v) + norm(E, w) - 1;
  Vec plus = add(v, w);
  Vec minus = sub(v, w);
  return norm(E, plus) <= bound && norm(E, minus) <= bound;
}

std::vector<Vec> search_anchors(const Space& E, std::size_t m, const Scalar& radius,
                                const Scalar& step) {
  if (step <= 0) throw ValidationError("anchor grid step must be positive");
  Scalar ratio = radius / step;
  mpz_class nz = ratio.get_num() / ratio.get_den();
  long n = nz.get_si();

  std::vector<Vec> grid;
  std::vector<long> idx(E.dim, -n);
  for (;;) {
    Vec p(E.dim);
    for (std::size_t i = 0; i < E.dim; ++i) p[i] = Scalar(idx[i]) * step;
    if (norm(E, p) >= 1) grid.push_back(std::move(p));
    std::size_t i = 0;
    while (i < E.dim && idx[i] == n) idx[i++] = -n;
    if (i == E.dim) break;
    ++idx[i];
  }

  // Backtracking clique search in the pairwise-compatibility graph,
  // deterministic by grid order.
  std::vector<std::size_t> picked;
  std::vector<Vec> out;
  std::function<bool(std::size_t)> extend = [&](std::size_t from) -> bool {
    if (picked.size() == m) return true;
    for (std::size_t i = from; i < grid.size(); ++i) {
      bool ok = true;
      for (auto j : picked)
        if (!anchor_pair_ok(E, grid[j], grid[i])) {
          ok = false;
          break;
        }
      if (!ok) continue;
      picked.push_back(i);
      if (extend(i + 1)) return true;
      picked.pop_back();
    }
    return false;
  };
  if (!extend(0)) throw NoAnchorsFound();
  for (auto i : picked) out.push_back(grid[i]);
  return out;
}

}  // namespace

SeparatedFamily lindenstrauss_family(const Space& E, std::size_t m, std::vector<Vec> anchors,
                                     const Scalar& grid_radius, const Scalar& grid_step,
                                     bool exact_pairs) {
  if (E.dim < 2) throw DimensionMismatch("lindenstrauss_family needs dim >= 2");
  SeparatedFamily fam;
  fam.base = E;

  if (anchors.empty()) {
    fam.anchors = search_anchors(E, m, grid_radius, grid_step);
  } else {
    if (anchors.size() != m) throw DimensionMismatch("anchor count differs from m");
    for (const auto& v : anchors) {
      if (v.size() != E.dim) throw DimensionMismatch("anchor dimension");
      if (norm(E, v) < 1) throw ValidationError("anchors must have norm >= 1");
    }
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        if (!anchor_pair_ok(E, anchors[i], anchors[j]))
          throw ValidationError("anchor pair violates the separation inequality");
    fam.anchors = std::move(anchors);
  }

  // Sup-norm embedding of E: coordinates are the dual-ball vertices, i.e.
  // the facet functionals of the ball.
  const std::vector<Vec>& lambdas = E.ball.facets;
  std::vector<Scalar> radii;
  for (const auto& v : fam.anchors) radii.push_back(norm(E, v) - Scalar(1, 2));

  for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
    std::vector<int> pattern(m);
    for (std::size_t nbit = 0; nbit < m; ++nbit)
      pattern[nbit] = (mask >> nbit) & 1 ? 1 : -1;

    // Per coordinate, intersect the intervals of the balls around the
    // signed anchors; pairwise intersection guarantees a common point.
    Vec point(lambdas.size());
    for (std::size_t j = 0; j < lambdas.size(); ++j) {
      std::optional<Scalar> lo, hi;
      for (std::size_t nidx = 0; nidx < m; ++nidx) {
        Scalar c = Scalar(pattern[nidx]) * dot(lambdas[j], fam.anchors[nidx]);
        Scalar a = c - radii[nidx];
        Scalar b = c + radii[nidx];
        if (!lo || a > *lo) lo = a;
        if (!hi || b < *hi) hi = b;
      }
      if (*lo > *hi) throw ValidationError("anchor balls fail to intersect");
      point[j] = (*lo + *hi) / 2;
    }

    // tp(point / E) inside the sup-norm embedding, written down directly:
    // the dual-ball vertices of the big space are the signed coordinate
    // functionals, which pull back to (+-lambda_j, +-point_j). The
    // extension property holds structurally (the projections are exactly
    // the dual-ball vertices), so the expensive re-validation of
    // TypePres::make is skipped; the ball memberships below are still
    // checked exactly.
    std::vector<Vec> funcs;
    for (std::size_t j = 0; j < lambdas.size(); ++j) {
      Vec f(lambdas[j]);
      f.push_back(point[j]);
      funcs.push_back(f);
      funcs.push_back(neg(f));
    }
    TypePres t;
    t.base = E;
    t.nvars = 1;
    t.funcs = canonical_vector_set(std::move(funcs));
    t.kernel_dims = E.dim + 1 - rank_of_rows(t.funcs);

    // Re-verify the defining ball memberships exactly.
    for (std::size_t nidx = 0; nidx < m; ++nidx) {
      Vec z = scale(Scalar(-pattern[nidx]), fam.anchors[nidx]);
      z.push_back(Scalar(1));
      if (seminorm(t, z) > radii[nidx])
        throw ValidationError("type escapes its defining anchor ball");
    }

    fam.sign_patterns.push_back(std::move(pattern));
    fam.types.push_back(std::move(t));
  }

  // Probe points where the separation argument concentrates: the signed
  // anchors themselves. |f(a) - g(a)| is a certified lower bound on the
  // type distance for any a.
  std::vector<Vec> probes;
  for (const auto& v : fam.anchors) {
    probes.push_back(v);
    probes.push_back(neg(v));
  }
  const std::size_t count = fam.types.size();
  fam.pairwise_lo.assign(count, std::vector<Scalar>(count, Scalar(0)));
  // Katetov value f_xi(a) = seminorm(xi, -a (+) 1), evaluated directly.
  auto value_at = [&](const TypePres& t, const Vec& a) {
    Vec z = neg(a);
    z.push_back(Scalar(1));
    return seminorm(t, z);
  };
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i + 1; j < count; ++j) {
      Scalar lo(0);
      if (exact_pairs) {
        lo = type_distance(fam.types[i], fam.types[j]).lo;
      } else {
        for (const auto& p : probes) {
          Scalar d = abs_scalar(value_at(fam.types[i], p) - value_at(fam.types[j], p));
          if (d > lo) lo = d;
        }
      }
      fam.pairwise_lo[i][j] = lo;
      fam.pairwise_lo[j][i] = lo;
    }
  return fam;
}

namespace {

// sup over the R-scaled unit ball of |f - g|, exact: the difference is
// piecewise linear on the joint subdivision, so the sup sits at a vertex.
Scalar box_sup_diff(const Space& E, const Scalar& R, const PLMax& f, const PLMax& g) {
  std::vector<LinCon> domain;
  for (const auto& fac : E.ball.facets) domain.push_back({fac, R, false});
  PLMax joint(f);
  joint.insert(joint.end(), g.begin(), g.end());
  Scalar best(0);
  for (const auto& v : pl_cell_vertices(joint, domain, E.dim)) {
    Scalar d = pl_eval(f, v) - pl_eval(g, v);
    if (d < 0) d = -d;
    if (d > best) best = d;
  }
  return best;
}

}  // namespace

NetReport polyhedral_net(const Space& E, const Scalar& R, const Scalar& eps,
                         const std::vector<KFn>& samples, const Scalar& value_cap) {
  if (eps <= 0 || R <= 0) throw ValidationError("polyhedral_net needs positive R and eps");
  NetReport report;
  for (const auto& t : enumerate_candidate_types(E, R, eps, value_cap))
    report.net.push_back(to_katetov(t));
  if (report.net.empty()) throw GridTooLarge("empty net");
  for (const auto& s : samples) {
    if (!(s.space == E)) throw BaseMismatch("sample over a different space");
    std::optional<Scalar> best;
    for (const auto& g : report.net) {
      Scalar d = box_sup_diff(E, R, s.pieces, g.pieces);
      if (!best || d < *best) best = d;
      if (*best == 0) break;
    }
    report.min_distances.push_back(*best);
    if (*best > eps) report.covered = false;
  }
  return report;
}

DensityProbe isolated_density_probe(const Space& E, const std::vector<TypePres>& samples,
                                    int level) {
  DensityProbe probe;
  for (const auto& s : samples) {
    if (!(s.base == E)) throw BaseMismatch("probe sample over a different base");
    IsolationReport r = is_isolated(s, level);
    switch (r.verdict) {
      case IsolationVerdict::Isolated: ++probe.isolated; break;
      case IsolationVerdict::NotIsolated:
        ++probe.not_isolated;
        probe.gaps.push_back(r.gap);
        break;
      case IsolationVerdict::Inconclusive: ++probe.inconclusive; break;
    }
    probe.verdicts.push_back(std::move(r));
  }
  return probe;
}

}  // namespace pban
