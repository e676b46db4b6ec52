#include "pban/fenchel.hpp"

#include <algorithm>

#include "pban/errors.hpp"

namespace pban {

KFn KFn::make(Space space, PLMax pieces) {
  for (const auto& p : pieces)
    if (p.slope.size() != space.dim) throw DimensionMismatch("KFn piece width");
  KFn f;
  f.space = std::move(space);
  f.pieces = pl_prune(std::move(pieces));
  return f;
}

Scalar kfn_eval(const KFn& f, const Vec& v) {
  if (v.size() != f.space.dim) throw DimensionMismatch("kfn_eval");
  return pl_eval(f.pieces, v);
}

ConjFn conjugate(const KFn& f) {
  ConjFn c;
  c.dual = dual_space(f.space);
  for (const auto& p : f.pieces) c.generators.push_back({p.slope, -p.intercept});
  return c;
}

std::optional<Scalar> conj_eval(const ConjFn& c, const Vec& lambda) {
  const std::size_t k = c.generators.size();
  if (k == 0) throw ValidationError("conj_eval on empty generator list");
  if (lambda.size() != c.dual.dim) throw DimensionMismatch("conj_eval");
  // min sum mu_i value_i over the weights writing lambda as a convex
  // combination of the generator points.
  std::vector<LinCon> cons;
  for (std::size_t i = 0; i < k; ++i) {
    Vec row(k, Scalar(0));
    row[i] = -1;
    cons.push_back({row, Scalar(0), false});
  }
  cons.push_back({Vec(k, Scalar(1)), Scalar(1), true});
  for (std::size_t j = 0; j < c.dual.dim; ++j) {
    Vec row(k);
    for (std::size_t i = 0; i < k; ++i) row[i] = c.generators[i].slope[j];
    cons.push_back({row, lambda[j], true});
  }
  Vec obj(k);
  for (std::size_t i = 0; i < k; ++i) obj[i] = c.generators[i].intercept;
  LpResult r = lp_min(obj, cons);
  if (r.status != LpStatus::Optimal) return std::nullopt;
  return r.value;
}

KFn biconjugate(const ConjFn& c) {
  PLMax pieces;
  for (const auto& g : c.generators) pieces.push_back({g.slope, -g.intercept});
  return KFn::make(dual_space(c.dual), std::move(pieces));
}

KatetovReport is_katetov(const KFn& f) {
  KatetovReport rep;
  if (f.pieces.empty()) {
    rep.ok = false;
    rep.reason = "no pieces";
    return rep;
  }
  // 1-Lipschitz: every slope in the dual ball.
  for (const auto& p : f.pieces) {
    for (const auto& v : f.space.ball.vertices) {
      if (dot(p.slope, v) > 1) {
        rep.ok = false;
        rep.reason = "slope outside the dual ball";
        rep.bad_direction = p.slope;
        return rep;
      }
    }
  }
  // dom f* is the whole dual ball.
  std::vector<Vec> slopes;
  for (const auto& p : f.pieces) slopes.push_back(p.slope);
  for (const auto& mu : f.space.ball.facets) {
    if (!in_conv_hull(mu, slopes)) {
      rep.ok = false;
      rep.reason = "dom f* misses part of the dual ball";
      rep.bad_direction = mu;
      return rep;
    }
  }
  // Antipode sums: f*(l) + f*(-l) <= 0. The sum is convex, so the max
  // over the dual ball sits at a vertex (the zero space has one point).
  std::vector<Vec> cands = f.space.ball.facets;
  if (f.space.dim == 0) cands.push_back(Vec{});
  bool first = true;
  for (const auto& lam : cands) {
    auto a = pl_conj_eval(f.pieces, lam);
    auto b = pl_conj_eval(f.pieces, neg(lam));
    if (!a || !b) throw ValidationError("is_katetov: conjugate infinite inside its domain");
    Scalar s = *a + *b;
    if (first || s > rep.antipode_max) {
      rep.antipode_max = s;
      first = false;
      if (sgn(s) > 0) rep.bad_direction = lam;
    }
  }
  if (sgn(rep.antipode_max) > 0) {
    rep.ok = false;
    rep.reason = "antipode sum positive";
  }
  return rep;
}

void ensure_katetov(KFn& f) {
  if (f.katetov_checked != TriState::Unchecked) return;
  f.katetov_checked = is_katetov(f).ok ? TriState::Yes : TriState::No;
}

std::optional<Scalar> kfn_distance(const KFn& f, const KFn& g) {
  if (f.space.ball != g.space.ball) throw BaseMismatch("kfn_distance");
  auto a = pl_sup_diff(f.pieces, g.pieces);
  auto b = pl_sup_diff(g.pieces, f.pieces);
  if (!a || !b) return std::nullopt;
  return std::max(*a, *b);
}

KFn katetov_extend(const KFn& f, const std::vector<LinCon>& region) {
  const std::size_t e = f.space.dim;
  if (!lp_feasible(region, e)) throw EmptyRegion("katetov_extend");
  if (e == 0) return f;
  // tilde f = (h* restricted to the dual ball)* with h = f + indicator of
  // the region; both conjugations reduce to cell-vertex enumeration.
  PLMax h_star = pl_restricted_conjugate(f.pieces, region, e);
  std::vector<LinCon> dual_ball;
  for (const auto& v : f.space.ball.vertices) dual_ball.push_back({v, Scalar(1), false});
  return KFn::make(f.space, pl_restricted_conjugate(h_star, dual_ball, e));
}

Scalar locality_gap(const KFn& f, const std::vector<LinCon>& region) {
  KFn ext = katetov_extend(f, region);
  auto d = kfn_distance(ext, f);
  if (!d) throw ValidationError("locality_gap: infinite distance (slopes escape the dual ball)");
  return std::max(*d, Scalar(0));
}

namespace {

// All convex-combination weights m/level over the given points.
void compositions(const std::vector<Vec>& pts, std::size_t idx, long remaining, long level,
                  Vec acc, std::vector<Vec>& out) {
  if (idx + 1 == pts.size()) {
    Vec lam = add(acc, scale(Scalar(remaining) / Scalar(level), pts[idx]));
    out.push_back(std::move(lam));
    return;
  }
  for (long m = 0; m <= remaining; ++m)
    compositions(pts, idx + 1, remaining - m, level,
                 add(acc, scale(Scalar(m) / Scalar(level), pts[idx])), out);
}

}  // namespace

MaxTestReport boundary_max_test(const KFn& f_in, const Scalar& r, int level) {
  if (sgn(r) < 0) throw ValidationError("boundary_max_test: r must be >= 0");
  if (level < 1) level = 1;
  KFn f = f_in;
  ensure_katetov(f);
  if (f.katetov_checked != TriState::Yes) throw NotKatetov("boundary_max_test");

  MaxTestReport rep;
  rep.level = level;
  const std::size_t e = f.space.dim;
  if (e == 0) {
    // The dual sphere of the zero space is empty; nothing to violate.
    rep.certified = true;
    return rep;
  }
  const auto& W = f.space.ball.vertices;   // primal vertices = dual-ball facets
  const auto& L = f.space.ball.facets;     // dual-ball vertices
  const std::size_t k = f.pieces.size();

  // Exact concave bound: dstar = max over the dual sphere of
  // -f*(lambda) - f*(-lambda), one LP per dual-ball facet.
  bool first = true;
  for (const auto& w : W) {
    // variables: lambda(e), t1, t2, mu(k), nu(k)
    const std::size_t t1 = e, t2 = e + 1, mu0 = e + 2, nu0 = e + 2 + k;
    const std::size_t nv = e + 2 + 2 * k;
    std::vector<LinCon> cons;
    auto simplex_block = [&](std::size_t base, const Scalar& lam_sign, std::size_t t_var) {
      for (std::size_t j = 0; j < e; ++j) {
        Vec row(nv, Scalar(0));
        for (std::size_t i = 0; i < k; ++i) row[base + i] = f.pieces[i].slope[j];
        row[j] = lam_sign;
        cons.push_back({row, Scalar(0), true});  // sum mu slope -+ lambda = 0
      }
      Vec ones(nv, Scalar(0));
      for (std::size_t i = 0; i < k; ++i) ones[base + i] = 1;
      cons.push_back({ones, Scalar(1), true});
      for (std::size_t i = 0; i < k; ++i) {
        Vec row(nv, Scalar(0));
        row[base + i] = -1;
        cons.push_back({row, Scalar(0), false});
      }
      Vec val(nv, Scalar(0));
      for (std::size_t i = 0; i < k; ++i) val[base + i] = -f.pieces[i].intercept;
      val[t_var] = -1;
      cons.push_back({val, Scalar(0), false});  // f* value <= t
    };
    simplex_block(mu0, Scalar(-1), t1);
    simplex_block(nu0, Scalar(1), t2);
    {
      Vec row(nv, Scalar(0));
      for (std::size_t j = 0; j < e; ++j) row[j] = w[j];
      cons.push_back({row, Scalar(1), true});  // lambda on this facet
    }
    for (const auto& wp : W) {
      Vec row(nv, Scalar(0));
      for (std::size_t j = 0; j < e; ++j) row[j] = wp[j];
      cons.push_back({row, Scalar(1), false});
    }
    Vec obj(nv, Scalar(0));
    obj[t1] = -1;
    obj[t2] = -1;
    LpResult res = lp_max(obj, cons);
    if (res.status != LpStatus::Optimal)
      throw ValidationError("boundary_max_test: facet bound LP failed");
    if (first || res.value > rep.dstar) {
      rep.dstar = res.value;
      first = false;
    }
  }

  // Witness search over the family g = norm(. - v0) + s: Katetov for
  // s >= 0, and g <= f is linear in (v0, s) through the conjugate values
  // at the dual-ball vertices. Probe directions: a level-indexed
  // barycentric grid on each dual-sphere facet.
  std::vector<Vec> cands;
  for (const auto& w : W) {
    std::vector<Vec> fverts;
    for (const auto& lam : L)
      if (dot(lam, w) == 1) fverts.push_back(lam);
    if (!fverts.empty()) compositions(fverts, 0, level, level, Vec(e, Scalar(0)), cands);
  }
  cands = canonical_vector_set(std::move(cands));

  std::vector<Scalar> cvals;
  for (const auto& lam : L) {
    auto c = pl_conj_eval(f.pieces, lam);
    if (!c) throw ValidationError("boundary_max_test: conjugate infinite on the dual ball");
    cvals.push_back(*c);
  }

  std::vector<LinCon> gcons;
  {
    Vec row(e + 1, Scalar(0));
    row[e] = 1;
    gcons.push_back({neg(row), Scalar(0), false});  // s >= 0
    for (std::size_t j = 0; j < L.size(); ++j) {
      Vec r2 = neg(L[j]);
      r2.push_back(Scalar(1));
      gcons.push_back({r2, -cvals[j], false});  // lam_j.v0 - s >= f*(lam_j)
    }
  }
  first = true;
  Vec best_v0;
  Scalar best_s(0);
  for (const auto& lam : cands) {
    auto fh = pl_conj_eval(f.pieces, lam);
    if (!fh) throw ValidationError("boundary_max_test: conjugate infinite on the sphere");
    Vec obj(lam);
    obj.push_back(Scalar(-1));
    LpResult res = lp_max(obj, gcons);
    if (res.status != LpStatus::Optimal)
      throw ValidationError("boundary_max_test: witness LP failed");
    Scalar gapv = res.value - *fh;
    if (first || gapv > rep.gap) {
      rep.gap = gapv;
      rep.witness_lambda = lam;
      best_v0 = Vec(res.x.begin(), res.x.begin() + e);
      best_s = res.x[e];
      first = false;
    }
  }

  if (rep.gap > r) {
    rep.verdict = MaxTestReport::Verdict::Violated;
    PLMax gp;
    for (const auto& lam : L) gp.push_back({lam, best_s - dot(lam, best_v0)});
    KFn g = KFn::make(f.space, std::move(gp));
    ensure_katetov(g);
    auto under = pl_sup_diff(g.pieces, f.pieces);
    auto gstar = pl_conj_eval(g.pieces, *rep.witness_lambda);
    auto fstar = pl_conj_eval(f.pieces, *rep.witness_lambda);
    if (g.katetov_checked != TriState::Yes || !under || sgn(*under) > 0 || !gstar || !fstar ||
        *gstar - *fstar != rep.gap)
      throw ValidationError("boundary_max_test: witness failed re-verification");
    rep.witness_g = std::move(g);
  }
  rep.certified = rep.dstar <= r;
  return rep;
}

KFn to_katetov(const TypePres& xi) {
  if (xi.nvars != 1) throw WrongArity("to_katetov");
  const std::size_t e = xi.base.dim;
  PLMax pieces;
  for (const auto& phi : xi.funcs) {
    Vec a(e);
    for (std::size_t j = 0; j < e; ++j) a[j] = -phi[j];
    pieces.push_back({std::move(a), phi[e]});
  }
  KFn f = KFn::make(xi.base, std::move(pieces));
  ensure_katetov(f);
  if (f.katetov_checked != TriState::Yes)
    throw ValidationError("to_katetov: presentation is not a valid 1-type");
  return f;
}

TypePres from_katetov(const KFn& f_in) {
  KFn f = f_in;
  ensure_katetov(f);
  if (f.katetov_checked != TriState::Yes) throw NotKatetov("from_katetov");
  const std::size_t e = f.space.dim;
  std::vector<Vec> funcs;
  for (const auto& p : f.pieces) {
    Vec phi(e + 1);
    for (std::size_t j = 0; j < e; ++j) phi[j] = -p.slope[j];
    phi[e] = p.intercept;
    funcs.push_back(std::move(phi));
  }
  return TypePres::make(f.space, 1, std::move(funcs));
}

IsolationReport is_isolated(const TypePres& xi, int level) {
  if (xi.nvars != 1) throw WrongArity("is_isolated");
  KFn f = to_katetov(xi);
  MaxTestReport rep = boundary_max_test(f, Scalar(0), level);
  IsolationReport out;
  out.level = level;
  out.gap = rep.gap;
  if (rep.verdict == MaxTestReport::Verdict::Violated)
    out.verdict = IsolationVerdict::NotIsolated;
  else if (rep.certified)
    out.verdict = IsolationVerdict::Isolated;
  else
    out.verdict = IsolationVerdict::Inconclusive;
  return out;
}

CrosscheckReport smooth_isolation_crosscheck(const Space& E2, const Vec& v, const Vec& u,
                                             int level) {
  if (E2.dim != 2) throw DimensionMismatch("smooth_isolation_crosscheck needs dim 2");
  if (rank_of_rows({v, u}) != 2) throw NotABasis("crosscheck vectors");
  CrosscheckReport rep;
  rep.smooth = is_smooth(E2, v);
  LinMap incl = subspace_from_basis(E2, {v});
  rep.isolation = is_isolated(tp(incl, {u}), level);
  rep.agree = (rep.smooth && rep.isolation.verdict == IsolationVerdict::Isolated) ||
              (!rep.smooth && rep.isolation.verdict == IsolationVerdict::NotIsolated);
  return rep;
}

}  // namespace pban
