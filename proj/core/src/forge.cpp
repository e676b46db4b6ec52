#include "pban/forge.hpp"

#include <algorithm>
#include <map>

#include "pban/errors.hpp"
#include "pban/fenchel.hpp"

namespace pban {

ChainState ChainState::start(Space base) {
  ChainState cs;
  cs.spaces.push_back(std::move(base));
  return cs;
}

LinMap ChainState::lift(std::size_t k) const {
  if (k >= spaces.size()) throw DimensionMismatch("lift: no such stage");
  LinMap m = LinMap::identity(spaces[k]);
  for (std::size_t j = k; j + 1 < spaces.size(); ++j) m = compose(links[j], m);
  return m;
}

namespace {

Vec scaled(const Vec& v, const Scalar& s) {
  Vec out(v);
  for (auto& x : out) x *= s;
  return out;
}

// Grid points of [-radius, radius]^dim with the given step, zero excluded.
std::vector<Vec> box_grid(std::size_t dim, const Scalar& radius, const Scalar& step,
                          std::size_t cap) {
  if (step <= 0) throw ValidationError("grid step must be positive");
  Scalar ratio = radius / step;
  mpz_class steps_z = ratio.get_num() / ratio.get_den();
  long n = steps_z.get_si();
  std::size_t per_axis = 2 * static_cast<std::size_t>(n) + 1;
  std::size_t total = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    total *= per_axis;
    if (total > cap) throw GridTooLarge("net grid exceeds the configured cap");
  }
  std::vector<Vec> pts;
  std::vector<long> idx(dim, -n);
  for (;;) {
    Vec p(dim);
    bool zero = true;
    for (std::size_t i = 0; i < dim; ++i) {
      p[i] = Scalar(idx[i]) * step;
      if (idx[i] != 0) zero = false;
    }
    if (!zero || dim == 0) pts.push_back(std::move(p));
    std::size_t i = 0;
    while (i < dim && idx[i] == n) idx[i++] = -n;
    if (i == dim) break;
    ++idx[i];
  }
  return pts;
}

// The structural net of a chain: lifted base grid points, lifted ledger
// witness vectors, and scaled copies of everything. Expressed in top
// coordinates. Grows (up to isometry) along the chain, which is what makes
// the defect nonincreasing.
std::vector<Vec> structural_net(const ChainState& cs, const NetParams& net) {
  std::vector<Vec> pool;
  LinMap l0 = cs.lift(0);
  for (const auto& p : box_grid(cs.spaces[0].dim, net.grid_radius, net.grid_step, net.pool_cap))
    pool.push_back(l0.apply(p));
  for (const auto& entry : cs.ledger) {
    LinMap lk = cs.lift(entry.stage);
    for (const auto& w : entry.witness) pool.push_back(lk.apply(w));
  }
  std::vector<Vec> out;
  for (const auto& v : pool)
    for (const auto& s : net.scales) out.push_back(scaled(v, s));
  return canonical_vector_set(std::move(out));
}

Scalar defect_against(const LinMap& base_incl, const std::vector<TypePres>& samples,
                      const std::vector<Vec>& pool) {
  Scalar worst(0);
  for (const auto& s : samples) {
    if (s.nvars != 1) throw ValidationError("defect samples must be 1-types");
    if (!(s.base == base_incl.source)) throw BaseMismatch("defect sample over a different base");
    std::optional<Scalar> best;
    for (const auto& v : pool) {
      Scalar lo = type_distance(s, tp(base_incl, {v})).lo;
      if (!best || lo < *best) best = lo;
      if (*best == 0) break;
    }
    if (!best) throw ValidationError("empty net pool");
    if (*best > worst) worst = *best;
  }
  return worst;
}

}  // namespace

Scalar defect_report(const ChainState& cs, const std::vector<TypePres>& samples,
                     const NetParams& net) {
  if (samples.empty()) return Scalar(0);
  return defect_against(cs.lift(0), samples, structural_net(cs, net));
}

ChainState step(ChainState cs, const LinMap& sub, std::size_t stage, const TypePres& xi,
                const NetParams& net) {
  if (stage >= cs.spaces.size()) throw DimensionMismatch("step: no such stage");
  if (!(sub.target == cs.spaces[stage])) throw BaseMismatch("step: sub does not land in the stage");
  if (!(sub.source == xi.base)) throw BaseMismatch("step: type base differs from sub source");

  LinMap incl_top = compose(cs.lift(stage), sub);  // F -> top
  GeneratedSpace gs = generated_space(xi);

  const std::size_t new_dim = cs.top().dim + gs.space.dim - xi.base.dim;
  if (new_dim > net.dim_cap)
    throw DimensionTooLarge("step would push the top space past the dimension cap");

  AmalgamOut am = amalgamate(xi.base, cs.top(), gs.space, incl_top, gs.base_incl);

  std::vector<Vec> witness;
  for (const auto& g : gs.generator_images) witness.push_back(am.g1.apply(g));

  // Avoidance: the realized tuple (and each of its vectors, for 1-type
  // balls) must stay clear of every forbidden ball over the chain base.
  LinMap base_in_new = compose(am.g0, cs.lift(0));
  for (const auto& ball : cs.avoid_list) {
    if (!(ball.xi.base == cs.spaces[0]))
      throw BaseMismatch("avoid ball over a different base");
    std::vector<std::vector<Vec>> tuples;
    if (ball.xi.nvars == witness.size()) tuples.push_back(witness);
    if (ball.xi.nvars == 1 && witness.size() != 1)
      for (const auto& w : witness) tuples.push_back({w});
    for (const auto& t : tuples) {
      Scalar lo = type_distance(ball.xi, tp(base_in_new, t)).lo;
      if (lo <= ball.radius) throw AvoidanceViolation(ball.xi, ball.radius, lo);
    }
  }

  LedgerEntry entry;
  entry.stage = cs.spaces.size();
  entry.sub = compose(am.g0, incl_top);
  entry.xi = xi;
  entry.witness = std::move(witness);

  cs.links.push_back(am.g0);
  cs.spaces.push_back(am.result);
  cs.ledger.push_back(std::move(entry));
  return cs;
}

namespace {

// The 1-type of scale * x_i over the base, read off a presentation over
// the same base: keep the base block and the scaled i-th variable column.
TypePres restricted_scaled_1type(const TypePres& xi, std::size_t var, const Scalar& scale) {
  const std::size_t e = xi.base.dim;
  std::vector<Vec> funcs;
  for (const auto& f : xi.funcs) {
    Vec g(f.begin(), f.begin() + e);
    g.push_back(scale * f[e + var]);
    funcs.push_back(std::move(g));
  }
  TypePres out;
  out.base = xi.base;
  out.nvars = 1;
  out.funcs = canonical_vector_set(std::move(funcs));
  out.kernel_dims = e + 1 - rank_of_rows(out.funcs);
  return out;
}

}  // namespace

ChainState schedule(ChainState cs, std::size_t budget, const NetParams& net,
                    const std::vector<TypePres>& candidates,
                    const std::vector<TypePres>& samples) {
  if (budget == 0 || samples.empty() || candidates.empty()) return cs;
  const Space base = cs.spaces[0];  // by value: cs is reassigned below
  for (const auto& s : samples) {
    if (s.nvars != 1) throw ValidationError("defect samples must be 1-types");
    if (!(s.base == base)) throw BaseMismatch("defect sample over a different base");
  }

  // Per-sample distance to the current structural net. Grid points and
  // ledger witnesses are measured through the base; a candidate step only
  // ever shrinks these minima by its own witness types, which lets each
  // round run without simulating any pushout.
  std::vector<Scalar> cur(samples.size());
  {
    std::vector<TypePres> pool_types;
    for (const auto& p : box_grid(base.dim, net.grid_radius, net.grid_step, net.pool_cap))
      for (const auto& sc : net.scales) pool_types.push_back(tp(base, {scaled(p, sc)}));
    for (const auto& entry : cs.ledger) {
      LinMap incl = LinMap::identity(base);
      for (std::size_t k = 0; k < entry.stage; ++k) incl = compose(cs.links[k], incl);
      for (const auto& w : entry.witness)
        for (const auto& sc : net.scales) pool_types.push_back(tp(incl, {scaled(w, sc)}));
    }
    if (pool_types.empty()) throw ValidationError("empty net pool");
    for (std::size_t s = 0; s < samples.size(); ++s) {
      std::optional<Scalar> best;
      for (const auto& t : pool_types) {
        Scalar lo = type_distance(samples[s], t).lo;
        if (!best || lo < *best) best = lo;
        if (*best == 0) break;
      }
      cur[s] = *best;
    }
  }

  // What each candidate contributes: the per-sample minima over the
  // scaled restrictions of its own witness tuple. Constant across rounds.
  std::vector<std::vector<Scalar>> gain(candidates.size());
  std::vector<std::size_t> added_dim(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const TypePres& xi = candidates[i];
    if (!(xi.base == base)) throw BaseMismatch("candidate over a different base");
    added_dim[i] = xi.base.dim + xi.nvars - xi.kernel_dims - base.dim;
    std::vector<TypePres> variants;
    for (std::size_t var = 0; var < xi.nvars; ++var)
      for (const auto& sc : net.scales) variants.push_back(restricted_scaled_1type(xi, var, sc));
    gain[i].resize(samples.size());
    for (std::size_t s = 0; s < samples.size(); ++s) {
      std::optional<Scalar> best;
      for (const auto& t : variants) {
        Scalar lo = type_distance(samples[s], t).lo;
        if (!best || lo < *best) best = lo;
        if (*best == 0) break;
      }
      gain[i][s] = best ? *best : cur[s];
    }
  }

  std::vector<bool> dead(candidates.size(), false);
  for (std::size_t round = 0; round < budget; ++round) {
    // Progress is measured lexicographically: first the worst per-sample
    // distance, then their sum. The sum term lets a round realize one
    // sample even when the worst sample is untouched (a plateau of the
    // max); each candidate can shrink the sum at most once, so the loop
    // still terminates after at most |candidates| productive rounds.
    Scalar current(0), current_sum(0);
    for (const auto& c : cur) {
      if (c > current) current = c;
      current_sum += c;
    }

    for (;;) {
      std::optional<std::size_t> best;
      Scalar best_defect = current, best_sum = current_sum;
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (dead[i]) continue;
        if (cs.top().dim + added_dim[i] > net.dim_cap) continue;
        Scalar d(0), dsum(0);
        for (std::size_t s = 0; s < samples.size(); ++s) {
          Scalar v = cur[s] < gain[i][s] ? cur[s] : gain[i][s];
          if (v > d) d = v;
          dsum += v;
        }
        if (d < best_defect || (d == best_defect && dsum < best_sum)) {
          best_defect = d;
          best_sum = dsum;
          best = i;
        }
      }
      if (!best) return cs;  // nothing strictly reduces the defect
      try {
        cs = step(cs, LinMap::identity(base), 0, candidates[*best], net);
      } catch (const AvoidanceViolation&) {
        dead[*best] = true;
        continue;
      } catch (const DimensionTooLarge&) {
        dead[*best] = true;
        continue;
      }
      for (std::size_t s = 0; s < samples.size(); ++s)
        if (gain[*best][s] < cur[s]) cur[s] = gain[*best][s];
      cs.defect_history.push_back(best_defect);
      break;
    }
  }
  return cs;
}

namespace {

// Extends the image of incl to a basis of the target with standard basis
// vectors; returns the indices of the chosen standard vectors.
std::vector<std::size_t> complement_indices(const Mat& incl) {
  std::vector<Vec> rows;  // treat columns of incl as row vectors
  for (std::size_t j = 0; j < incl.cols; ++j) {
    Vec c(incl.rows);
    for (std::size_t i = 0; i < incl.rows; ++i) c[i] = incl.at(i, j);
    rows.push_back(std::move(c));
  }
  std::vector<std::size_t> picked;
  for (std::size_t j = 0; j < incl.rows && rows.size() < incl.rows; ++j) {
    Vec e(incl.rows, Scalar(0));
    e[j] = 1;
    rows.push_back(e);
    if (rank_of_rows(rows) == rows.size())
      picked.push_back(j);
    else
      rows.pop_back();
  }
  if (rows.size() != incl.rows) throw NotABasis("inclusion columns are dependent");
  return picked;
}

struct DistortionCheck {
  bool injective = false;
  Scalar upper;  // max norm of psi(v) over ball vertices of F
  std::optional<Scalar> lower;  // min norm of psi(x) over the unit sphere of F
};

DistortionCheck measure(const Space& F, const Space& top, const Mat& psi,
                        bool want_lower) {
  DistortionCheck out;
  out.upper = 0;
  for (const auto& v : F.ball.vertices) {
    Scalar n = norm(top, psi.apply(v));
    if (n > out.upper) out.upper = n;
  }
  if (!want_lower) return out;
  if (rank(psi) != F.dim) return out;  // kernel => lower bound 0
  out.injective = true;
  if (F.dim == 0) {
    out.lower = Scalar(1);
    return out;
  }
  // Vertices of the preimage of the top ball; the minimum of |psi x| on
  // the unit sphere is the reciprocal of the largest F-norm among them.
  std::vector<LinCon> cons;
  for (const auto& f : top.ball.facets) cons.push_back({psi.apply_t(f), Scalar(1), false});
  std::vector<Vec> verts;
  try {
    verts = enumerate_vertices(cons, F.dim);
  } catch (const UnboundedBall&) {
    return out;
  }
  Scalar big(0);
  for (const auto& v : verts) {
    Scalar n = norm(F, v);
    if (n > big) big = n;
  }
  if (big > 0) out.lower = Scalar(1) / big;
  return out;
}

}  // namespace

CertifyReport certify_eps_gurarij(const ChainState& cs, const Catalog& cat,
                                  const Scalar& eps, const NetParams& net) {
  CertifyReport report;
  std::vector<Vec> pool = structural_net(cs, net);
  pool.push_back(Vec(cs.top().dim, Scalar(0)));

  for (const auto& prob : cat.problems) {
    CertifyOutcome out;
    LinMap incl = check_isometry(prob.incl);
    if (incl.isometry_checked != IsoState::Isometric)
      throw NotIsometric("catalog inclusion is not isometric");
    const Space& E = incl.source;
    const Space& F = incl.target;

    LinMap phi;
    bool have_phi = true;
    if (prob.phi) {
      phi = check_isometry(*prob.phi);
      if (phi.isometry_checked != IsoState::Isometric)
        throw NotIsometric("supplied phi is not isometric");
      if (!(phi.target == cs.top())) throw BaseMismatch("phi does not land in the top space");
    } else if (E == cs.spaces[0]) {
      phi = cs.lift(0);
    } else {
      have_phi = false;
    }
    if (!have_phi) {
      report.outcomes.push_back(out);
      report.all_certified = false;
      continue;
    }

    auto comp = complement_indices(incl.matrix);
    const std::size_t d = comp.size();
    // Change of basis on F: [incl columns | standard complement] -> coords.
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < incl.matrix.cols; ++j) {
      Vec c(F.dim);
      for (std::size_t i = 0; i < F.dim; ++i) c[i] = incl.matrix.at(i, j);
      cols.push_back(std::move(c));
    }
    for (auto j : comp) {
      Vec e(F.dim, Scalar(0));
      e[j] = 1;
      cols.push_back(std::move(e));
    }
    auto binv = inverse(mat_from_cols(cols));
    if (!binv) throw NotABasis("certify basis is singular");

    std::size_t tuple_count = 1;
    bool too_many = false;
    for (std::size_t i = 0; i < d; ++i) {
      tuple_count *= pool.size();
      if (tuple_count > net.pool_cap) {
        too_many = true;
        break;
      }
    }
    std::size_t limit = too_many ? net.pool_cap : tuple_count;

    std::vector<std::size_t> idx(d, 0);
    for (std::size_t count = 0; count < limit; ++count) {
      // psi on the adapted basis: incl columns go through phi, complement
      // vectors to the chosen pool candidates.
      std::vector<Vec> image_cols;
      for (std::size_t j = 0; j < E.dim; ++j) {
        Vec c(cs.top().dim);
        for (std::size_t i = 0; i < cs.top().dim; ++i) c[i] = phi.matrix.at(i, j);
        image_cols.push_back(std::move(c));
      }
      for (std::size_t i = 0; i < d; ++i) image_cols.push_back(pool[idx[i]]);
      Mat psi = mat_from_cols(image_cols).mul(*binv);

      // Cheap upper bound first; the preimage-ball enumeration only runs
      // when the candidate could still certify or improve the record.
      DistortionCheck m = measure(F, cs.top(), psi, /*want_lower=*/false);
      bool promising = (m.upper - 1 <= eps) || !out.best_distortion ||
                       (m.upper - 1 < *out.best_distortion);
      if (promising) m = measure(F, cs.top(), psi, /*want_lower=*/true);
      if (m.lower) {
        Scalar up_err = m.upper - 1;
        Scalar lo_err = Scalar(1) - *m.lower;
        Scalar dist = up_err > lo_err ? up_err : lo_err;
        if (dist < 0) dist = 0;
        if (!out.best_distortion || dist < *out.best_distortion) {
          out.best_distortion = dist;
          out.psi = LinMap::between(F, cs.top(), psi);
        }
        if (dist <= eps) {
          out.certified = true;
          break;
        }
      }
      std::size_t i = 0;
      while (i < d && idx[i] + 1 == pool.size()) idx[i++] = 0;
      if (i == d) break;
      ++idx[i];
    }
    if (d == 0) {
      // No complement: psi = phi through the basis change; always isometric.
      out.certified = true;
      out.best_distortion = Scalar(0);
      Mat psi = phi.matrix.mul(*binv);
      out.psi = LinMap::between(F, cs.top(), psi);
    }
    if (!out.certified) report.all_certified = false;
    report.outcomes.push_back(std::move(out));
  }
  return report;
}

std::vector<TypePres> enumerate_candidate_types(const Space& base, const Scalar& radius,
                                                const Scalar& step,
                                                const Scalar& value_cap) {
  if (base.dim != 1) throw GridTooLarge("candidate enumeration supports 1-dim bases only");
  if (step <= 0 || radius <= 0) throw ValidationError("positive radius and step required");
  Scalar ratio = radius / step;
  mpz_class nz = ratio.get_num() / ratio.get_den();
  long n = nz.get_si();
  const std::size_t pts = 2 * static_cast<std::size_t>(n) + 1;

  // Convex 1-Lipschitz sequences on the grid with steps in {-step,0,step}:
  // pick the two change positions (fall->flat, flat->rise).
  std::vector<TypePres> out;
  for (std::size_t p = 0; p <= pts - 1; ++p) {
    for (std::size_t q = p; q <= pts - 1; ++q) {
      // diffs: positions < p fall, [p, q) flat, >= q rise.
      for (Scalar base_val = 0; base_val <= value_cap; base_val += step) {
        std::vector<Scalar> vals(pts);
        vals[0] = base_val;
        bool ok = true;
        for (std::size_t i = 1; i < pts; ++i) {
          Scalar diff = (i - 1 < p) ? -step : (i - 1 < q ? Scalar(0) : step);
          vals[i] = vals[i - 1] + diff;
          if (vals[i] < 0) ok = false;
        }
        if (!ok) continue;
        PLMax pieces;
        for (std::size_t i = 0; i + 1 < pts; ++i) {
          Scalar x0 = (Scalar(static_cast<long>(i)) - Scalar(n)) * step;
          Scalar slope = (vals[i + 1] - vals[i]) / step;
          pieces.push_back({Vec{slope}, vals[i] - slope * x0});
        }
        pieces.push_back({Vec{Scalar(-1)}, vals.front() - radius});
        pieces.push_back({Vec{Scalar(1)}, vals.back() - radius});
        KFn f = KFn::make(base, std::move(pieces));
        if (!is_katetov(f).ok) continue;
        out.push_back(from_katetov(f));
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const TypePres& a, const TypePres& b) {
    return std::lexicographical_compare(a.funcs.begin(), a.funcs.end(), b.funcs.begin(),
                                        b.funcs.end(), lex_less);
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace pban
