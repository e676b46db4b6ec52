#include "pban/typespace.hpp"

#include <algorithm>

#include "pban/errors.hpp"

namespace pban {

namespace {

Mat funcs_matrix(const std::vector<Vec>& funcs, std::size_t width) {
  Mat m(funcs.size(), width);
  for (std::size_t i = 0; i < funcs.size(); ++i)
    for (std::size_t j = 0; j < width; ++j) m.at(i, j) = funcs[i][j];
  return m;
}

void require_isometric(const LinMap& f, const char* who) {
  if (f.isometry_checked == IsoState::Unchecked) {
    LinMap copy = check_isometry(f);
    if (copy.isometry_checked != IsoState::Isometric) throw NotIsometric(who);
    return;
  }
  if (f.isometry_checked != IsoState::Isometric) throw NotIsometric(who);
}

}  // namespace

TypePres TypePres::make(Space base, std::size_t nvars, std::vector<Vec> funcs) {
  const std::size_t e = base.dim, N = e + nvars;
  for (const auto& f : funcs)
    if (f.size() != N) throw DimensionMismatch("TypePres functional width");

  // Symmetrize and keep only the extreme support functionals.
  std::vector<Vec> sym = funcs;
  for (const auto& f : funcs) sym.push_back(neg(f));
  sym = conv_hull_vertices(sym);

  // The restriction to the base block must be exactly the base norm:
  // projected functionals lie in the dual ball, and their hull fills it.
  std::vector<Vec> proj;
  for (const auto& f : sym) proj.emplace_back(f.begin(), f.begin() + e);
  for (const auto& p : proj) {
    for (const auto& v : base.ball.vertices)
      if (dot(p, v) > 1)
        throw ValidationError("type seminorm exceeds the base norm on the base block");
  }
  for (const auto& mu : base.ball.facets) {
    if (!in_conv_hull(mu, proj))
      throw ValidationError("type seminorm drops below the base norm on the base block");
  }

  TypePres t;
  t.base = std::move(base);
  t.nvars = nvars;
  t.kernel_dims = N - rank_of_rows(sym);
  t.funcs = std::move(sym);
  return t;
}

Scalar seminorm(const TypePres& t, const Vec& z) {
  if (z.size() != t.base.dim + t.nvars) throw DimensionMismatch("seminorm");
  Scalar best(0);
  for (const auto& f : t.funcs) best = std::max(best, dot(f, z));
  return best;
}

TypePres tp(const LinMap& incl, const std::vector<Vec>& abar) {
  require_isometric(incl, "tp: inclusion not isometric");
  const Space& E = incl.source;
  const Space& F = incl.target;
  for (const auto& a : abar)
    if (a.size() != F.dim) throw DimensionMismatch("tp tuple");
  std::vector<Vec> funcs;
  for (const auto& mu : F.ball.facets) {
    Vec f = incl.matrix.apply_t(mu);
    for (const auto& a : abar) f.push_back(dot(mu, a));
    funcs.push_back(std::move(f));
  }
  return TypePres::make(E, abar.size(), std::move(funcs));
}

TypePres tp(const Space& F, const std::vector<Vec>& abar) {
  return tp(LinMap::identity(F), abar);
}

GeneratedSpace generated_space(const TypePres& t) {
  const std::size_t e = t.base.dim, N = e + t.nvars;
  auto kernel = kernel_basis(funcs_matrix(t.funcs, N));
  Quotient q = quotient_by(N, kernel);
  const std::size_t dim = N - kernel.size();

  std::vector<Vec> facets;
  for (const auto& f : t.funcs) facets.push_back(q.section.apply_t(f));

  GeneratedSpace out;
  out.space = Space::make(dim == 0 ? PolyBall::from_vertices(0, {})
                                   : PolyBall::from_facets(dim, std::move(facets)));
  Mat mE(dim, e);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < e; ++j) mE.at(i, j) = q.proj.at(i, j);
  out.base_incl = check_isometry(LinMap::between(t.base, out.space, std::move(mE)));
  if (out.base_incl.isometry_checked != IsoState::Isometric)
    throw ValidationError("generated_space: base does not embed isometrically");
  for (std::size_t i = 0; i < t.nvars; ++i) {
    Vec g(dim);
    for (std::size_t r = 0; r < dim; ++r) g[r] = q.proj.at(r, e + i);
    out.generator_images.push_back(std::move(g));
  }
  out.quotient = std::move(q.proj);
  return out;
}

TypePres pullback(const TypePres& t, const Mat& phi) {
  const std::size_t e = t.base.dim;
  if (phi.rows != e + t.nvars || phi.cols < e) throw DimensionMismatch("pullback map");
  for (std::size_t i = 0; i < phi.rows; ++i)
    for (std::size_t j = 0; j < e; ++j)
      if (phi.at(i, j) != Scalar(i == j ? 1 : 0))
        throw NotExtendingIdentity();
  std::vector<Vec> funcs;
  for (const auto& f : t.funcs) funcs.push_back(phi.apply_t(f));
  return TypePres::make(t.base, phi.cols - e, std::move(funcs));
}

TypePres restrict_params(const TypePres& t, const LinMap& incl) {
  if (incl.target.ball != t.base.ball) throw BaseMismatch("restrict_params target");
  require_isometric(incl, "restrict_params: inclusion not isometric");
  const std::size_t f_dim = t.base.dim;
  std::vector<Vec> funcs;
  for (const auto& f : t.funcs) {
    Vec f_base(f.begin(), f.begin() + f_dim);
    Vec g = incl.matrix.apply_t(f_base);
    g.insert(g.end(), f.begin() + f_dim, f.end());
    funcs.push_back(std::move(g));
  }
  return TypePres::make(incl.source, t.nvars, std::move(funcs));
}

DistanceBracket type_distance(const TypePres& xi, const TypePres& zeta,
                              const Scalar& R, const Scalar& tol) {
  (void)R;
  (void)tol;
  if (xi.base.ball != zeta.base.ball || xi.nvars != zeta.nvars)
    throw BaseMismatch("type_distance");
  const std::size_t e = xi.base.dim, n = xi.nvars, N = e + n;
  DistanceBracket out;
  if (n == 0) return out;

  // sup over sum |lambda_i| = 1 of (value_A - value_B), one LP per sign
  // pattern of lambda and per support piece of A. Variables (z, t).
  auto half = [&](const TypePres& A, const TypePres& B) {
    for (std::size_t pat = 0; pat < (std::size_t(1) << n); ++pat) {
      std::vector<LinCon> cons;
      {
        Vec row(N + 1, Scalar(0));
        row[N] = -1;
        cons.push_back({row, Scalar(0), false});  // t >= 0
      }
      for (const auto& psi : B.funcs) {
        Vec row(psi);
        row.push_back(Scalar(-1));
        cons.push_back({row, Scalar(0), false});  // psi.z - t <= 0
      }
      Vec simplex(N + 1, Scalar(0));
      for (std::size_t i = 0; i < n; ++i) {
        Scalar s = (pat >> i) & 1 ? Scalar(-1) : Scalar(1);
        Vec row(N + 1, Scalar(0));
        row[e + i] = -s;
        cons.push_back({row, Scalar(0), false});  // s * lambda_i >= 0
        simplex[e + i] = s;
      }
      cons.push_back({simplex, Scalar(1), true});  // sum s_i lambda_i = 1
      for (const auto& phi : A.funcs) {
        Vec obj(phi);
        obj.push_back(Scalar(-1));
        LpResult r = lp_max(obj, cons);
        if (r.status == LpStatus::Unbounded)
          throw ValidationError("type_distance: unbounded difference (invalid presentation)");
        if (r.status != LpStatus::Optimal) continue;  // empty sign-pattern slice
        if (r.value > out.lo) {
          out.lo = r.value;
          out.witness = Vec(r.x.begin(), r.x.begin() + N);
        }
      }
    }
  };
  half(xi, zeta);
  half(zeta, xi);
  out.hi = out.lo;
  out.exact = true;
  return out;
}

Scalar realized_density_defect(const LinMap& incl, const std::vector<TypePres>& samples,
                               const Scalar& net_step) {
  require_isometric(incl, "realized_density_defect: inclusion not isometric");
  if (sgn(net_step) <= 0) throw ValidationError("net_step must be positive");
  const Space& G = incl.target;
  Scalar defect(0);

  for (const auto& xi : samples) {
    if (xi.base.ball != incl.source.ball) throw BaseMismatch("sample over wrong base");
    if (xi.nvars != 1) throw WrongArity("realized_density_defect needs 1-types");
    Vec x_dir(xi.base.dim + 1, Scalar(0));
    x_dir.back() = 1;
    Scalar radius = seminorm(xi, x_dir) + 1;

    Scalar ratio = radius / net_step;
    mpz_class steps_z = ratio.get_num() / ratio.get_den();
    if (!steps_z.fits_ulong_p()) throw GridTooLarge();
    unsigned long steps = steps_z.get_ui();
    double count = 1;
    for (std::size_t k = 0; k < G.dim; ++k) count *= 2.0 * steps + 1;
    if (count > 200000) throw GridTooLarge();

    std::optional<Scalar> best;
    std::vector<long> idx(G.dim, -(long)steps);
    bool done = G.dim == 0;
    auto visit = [&](const Vec& c) {
      Scalar d = type_distance(xi, tp(incl, {c})).hi;
      if (!best || d < *best) best = d;
    };
    if (G.dim == 0) visit(Vec{});
    while (!done) {
      Vec c(G.dim);
      for (std::size_t k = 0; k < G.dim; ++k) c[k] = Scalar(idx[k]) * net_step;
      visit(c);
      if (best && sgn(*best) == 0) break;
      std::size_t k = 0;
      for (; k < G.dim; ++k) {
        if (idx[k] < (long)steps) {
          ++idx[k];
          break;
        }
        idx[k] = -(long)steps;
      }
      done = k == G.dim;
    }
    if (best && *best > defect) defect = *best;
  }
  return defect;
}

}  // namespace pban
