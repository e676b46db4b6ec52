#include "pban/amalgam.hpp"

#include "pban/errors.hpp"

namespace pban {

Scalar min_join_tolerance() {
  return Scalar(1) / Scalar(mpz_class(1) << 20);
}

namespace {

Mat quotient_projection(std::size_t N, const std::vector<Vec>& kernel) {
  return quotient_by(N, kernel).proj;
}

Mat column_block(const Mat& m, std::size_t from, std::size_t to) {
  Mat out(m.rows, to - from);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = from; j < to; ++j) out.at(i, j - from) = m.at(i, j);
  return out;
}

LinMap certified(Space source, const Space& target, Mat matrix) {
  LinMap m = check_isometry(LinMap::between(std::move(source), target, std::move(matrix)));
  if (m.isometry_checked != IsoState::Isometric)
    throw NotIsometric("embedding into the join failed its isometry check");
  return m;
}

void require_isometric(LinMap& f, const char* who) {
  if (f.isometry_checked == IsoState::Unchecked) f = check_isometry(std::move(f));
  if (f.isometry_checked != IsoState::Isometric) throw NotIsometric(who);
}

}  // namespace

AmalgamOut amalgamate(const Space& E, const Space& F0, const Space& F1,
                      LinMap f0, LinMap f1) {
  if (f0.source.dim != E.dim || f1.source.dim != E.dim ||
      f0.target.dim != F0.dim || f1.target.dim != F1.dim)
    throw DimensionMismatch("amalgamate maps");
  require_isometric(f0, "amalgamate: f0 not isometric");
  require_isometric(f1, "amalgamate: f1 not isometric");

  const std::size_t n0 = F0.dim, n1 = F1.dim, N = n0 + n1;
  std::vector<Vec> identified;
  for (std::size_t k = 0; k < E.dim; ++k) {
    Vec u(N, Scalar(0));
    for (std::size_t i = 0; i < n0; ++i) u[i] = f0.matrix.at(i, k);
    for (std::size_t i = 0; i < n1; ++i) u[n0 + i] = -f1.matrix.at(i, k);
    identified.push_back(std::move(u));
  }
  Mat P = quotient_projection(N, identified);

  std::vector<Vec> gens;
  Mat m0 = column_block(P, 0, n0), m1 = column_block(P, n0, N);
  for (const auto& v : F0.ball.vertices) gens.push_back(m0.apply(v));
  for (const auto& v : F1.ball.vertices) gens.push_back(m1.apply(v));

  AmalgamOut out;
  out.result = Space::make(PolyBall::from_vertices(N - E.dim, std::move(gens)));
  out.g0 = certified(F0, out.result, std::move(m0));
  out.g1 = certified(F1, out.result, std::move(m1));
  out.kernel_dim = identified.size();
  return out;
}

ConditionReport condition_check(const Space& E, const Space& F, const std::vector<Vec>& abar,
                                const std::vector<Vec>& bbar, const std::vector<Scalar>& eps) {
  const std::size_t n = abar.size();
  if (bbar.size() != n || eps.size() != n) throw DimensionMismatch("condition_check tuples");
  for (const auto& a : abar)
    if (a.size() != E.dim) throw DimensionMismatch("condition_check: a_i");
  for (const auto& b : bbar)
    if (b.size() != F.dim) throw DimensionMismatch("condition_check: b_i");
  if (n == 0) return {};

  // One side: does lam.(sum r a) - norm(sum r b) - sum |r_i| eps_i go
  // positive for some dual-ball vertex lam of A? Scale-invariance lets us
  // fix sum |r_i| = 1 via the split r = p - q on the simplex.
  auto probe = [&](const Space& A, const Space& B, const std::vector<Vec>& as,
                   const std::vector<Vec>& bs) -> std::optional<Vec> {
    const std::size_t t_var = 2 * n;  // p_0..p_{n-1}, q_0.., t
    std::vector<LinCon> cons;
    for (std::size_t i = 0; i < 2 * n; ++i) {
      Vec row(2 * n + 1, Scalar(0));
      row[i] = -1;
      cons.push_back({row, Scalar(0), false});
    }
    {
      Vec row(2 * n + 1, Scalar(1));
      row[t_var] = 0;
      cons.push_back({row, Scalar(1), true});
    }
    {
      Vec row(2 * n + 1, Scalar(0));
      row[t_var] = -1;
      cons.push_back({row, Scalar(0), false});  // t >= 0 = norm on a zero space
    }
    for (const auto& mu : B.ball.facets) {
      Vec row(2 * n + 1, Scalar(0));
      for (std::size_t i = 0; i < n; ++i) {
        Scalar c = dot(mu, bs[i]);
        row[i] = c;
        row[n + i] = -c;
      }
      row[t_var] = -1;
      cons.push_back({row, Scalar(0), false});
    }
    for (const auto& lam : A.ball.facets) {
      Vec obj(2 * n + 1, Scalar(0));
      for (std::size_t i = 0; i < n; ++i) {
        Scalar c = dot(lam, as[i]);
        obj[i] = c - eps[i];
        obj[n + i] = -c - eps[i];
      }
      obj[t_var] = -1;
      LpResult r = lp_max(obj, cons);
      if (r.status == LpStatus::Optimal && sgn(r.value) > 0) {
        Vec w(n);
        for (std::size_t i = 0; i < n; ++i) w[i] = r.x[i] - r.x[n + i];
        return w;
      }
    }
    return std::nullopt;
  };

  if (auto w = probe(E, F, abar, bbar)) return {false, w};
  if (auto w = probe(F, E, bbar, abar)) return {false, w};
  return {};
}

AmalgamOut approx_join(const Space& E, const Space& F, const std::vector<Vec>& abar,
                       const std::vector<Vec>& bbar, const std::vector<Scalar>& eps_in) {
  auto report = condition_check(E, F, abar, bbar, eps_in);
  if (!report.ok) throw ConditionViolated(*report.witness);
  for (const auto& e : eps_in)
    if (e < 0) throw ValidationError("negative tolerance");

  AmalgamOut out;
  std::vector<Scalar> eps = eps_in;
  const Scalar floor = min_join_tolerance();
  for (auto& e : eps) {
    if (sgn(e) > 0 && e < floor) {
      e = floor;
      out.tolerance_capped = true;
    }
  }

  const std::size_t n = abar.size();
  const std::size_t e = E.dim, f = F.dim, N = e + f;
  auto pair_dir = [&](std::size_t i) {
    Vec u(N, Scalar(0));
    for (std::size_t j = 0; j < e; ++j) u[j] = abar[i][j];
    for (std::size_t j = 0; j < f; ++j) u[e + j] = -bbar[i][j];
    return u;
  };

  std::vector<Vec> identified;
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(eps[i]) != 0) continue;
    auto u = pair_dir(i);
    identified.push_back(u);
    if (rank_of_rows(identified) != identified.size()) identified.pop_back();
  }
  Mat P = quotient_projection(N, identified);

  Mat mE = column_block(P, 0, e), mF = column_block(P, e, N);
  std::vector<Vec> gens;
  for (const auto& v : E.ball.vertices) gens.push_back(mE.apply(v));
  for (const auto& v : F.ball.vertices) gens.push_back(mF.apply(v));
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(eps[i]) == 0) continue;
    Vec g = P.apply(scale(1 / eps[i], pair_dir(i)));
    gens.push_back(neg(g));
    gens.push_back(std::move(g));
  }

  out.result = Space::make(PolyBall::from_vertices(N - identified.size(), std::move(gens)));
  out.g0 = certified(E, out.result, std::move(mE));
  out.g1 = certified(F, out.result, std::move(mF));
  out.kernel_dim = identified.size();
  return out;
}

}  // namespace pban
