#include "pban/space.hpp"

#include <algorithm>

#include "pban/errors.hpp"

namespace pban {

Space Space::make(PolyBall ball, std::string label) {
  Space s;
  s.dim = ball.dim;
  s.ball = complete_reps(ball);
  s.label = std::move(label);
  return s;
}

Space Space::trivial() {
  Space s;
  s.ball = complete_reps(PolyBall::from_vertices(0, {}));
  s.label = "0";
  return s;
}

Space Space::sup_space(std::size_t n, std::string label) {
  return make(PolyBall::cube(n), label.empty() ? "sup" + std::to_string(n) : std::move(label));
}

Space Space::sum_space(std::size_t n, std::string label) {
  return make(PolyBall::cross(n), label.empty() ? "sum" + std::to_string(n) : std::move(label));
}

LinMap LinMap::identity(const Space& s) {
  LinMap m;
  m.source = s;
  m.target = s;
  m.matrix = Mat::identity(s.dim);
  m.isometry_checked = IsoState::Isometric;
  return m;
}

LinMap LinMap::between(Space source, Space target, Mat matrix) {
  if (matrix.rows != target.dim || matrix.cols != source.dim)
    throw DimensionMismatch("LinMap shape");
  LinMap m;
  m.source = std::move(source);
  m.target = std::move(target);
  m.matrix = std::move(matrix);
  return m;
}

LinMap compose(const LinMap& g, const LinMap& f) {
  if (f.target.dim != g.source.dim) throw DimensionMismatch("compose");
  LinMap m;
  m.source = f.source;
  m.target = g.target;
  m.matrix = g.matrix.mul(f.matrix);
  if (f.isometry_checked == IsoState::Isometric && g.isometry_checked == IsoState::Isometric)
    m.isometry_checked = IsoState::Isometric;
  return m;
}

Scalar norm(const Space& s, const Vec& v) { return gauge(s.ball, v); }

Space dual_space(const Space& s) {
  Space d;
  d.dim = s.dim;
  d.ball = polar(s.ball);
  if (!s.label.empty()) d.label = s.label + "*";
  return d;
}

Face norming_functionals(const Space& s, const Vec& v) {
  if (v.size() != s.dim) throw DimensionMismatch("norming_functionals");
  if (is_zero(v)) throw ZeroVector("norming_functionals");
  Scalar n = norm(s, v);
  Face face;
  // Vertices of the dual ball are the facet functionals of the ball.
  for (const auto& f : s.ball.facets)
    if (dot(f, v) == n) face.generators.push_back(f);
  std::vector<Vec> diffs;
  for (std::size_t i = 1; i < face.generators.size(); ++i)
    diffs.push_back(sub(face.generators[i], face.generators[0]));
  face.affine_dim = rank_of_rows(diffs);
  return face;
}

bool is_smooth(const Space& s, const Vec& v) {
  return norming_functionals(s, v).affine_dim == 0;
}

LinMap check_isometry(LinMap m) {
  const Space& E = m.source;
  const Space& F = m.target;
  if (m.matrix.rows != F.dim || m.matrix.cols != E.dim)
    throw DimensionMismatch("check_isometry");
  m.witness.reset();

  if (E.dim == 0) {
    m.isometry_checked = IsoState::Isometric;
    return m;
  }

  // Injectivity: a kernel vector has positive norm but zero image.
  auto ker = kernel_basis(m.matrix);
  if (!ker.empty()) {
    m.isometry_checked = IsoState::NotIsometric;
    m.witness = ker.front();
    return m;
  }

  // The preimage of the target ball is { v : (Q^T mu).v <= 1 } over target
  // facets; the map is isometric iff that polytope equals the source ball.
  std::vector<Vec> pulled;
  for (const auto& mu : F.ball.facets) pulled.push_back(m.matrix.apply_t(mu));
  PolyBall pre = complete_reps(PolyBall::from_facets(E.dim, pulled));
  if (pre.vertices == E.ball.vertices) {
    m.isometry_checked = IsoState::Isometric;
    return m;
  }

  m.isometry_checked = IsoState::NotIsometric;
  for (const auto& w : E.ball.vertices) {
    if (norm(F, m.apply(w)) != 1) {
      m.witness = w;
      return m;
    }
  }
  // All source vertices map to the sphere, so the source ball sits inside
  // the preimage; some preimage vertex must stick out.
  for (const auto& v : pre.vertices) {
    if (norm(E, v) > 1) {
      m.witness = v;
      return m;
    }
  }
  throw ValidationError("check_isometry: representations disagree without witness");
}

LinMap subspace_from_basis(const Space& ambient, const std::vector<Vec>& basis,
                           std::string label) {
  for (const auto& b : basis)
    if (b.size() != ambient.dim) throw DimensionMismatch("subspace_from_basis");
  if (rank_of_rows(basis) != basis.size()) throw NotABasis("dependent spanning set");

  const std::size_t k = basis.size();
  std::vector<Vec> facets;
  for (const auto& f : ambient.ball.facets) {
    Vec g(k);
    for (std::size_t j = 0; j < k; ++j) g[j] = dot(f, basis[j]);
    facets.push_back(std::move(g));
  }
  Space sub = Space::make(k == 0 ? PolyBall::from_vertices(0, {})
                                 : PolyBall::from_facets(k, std::move(facets)),
                          std::move(label));
  Mat mat(ambient.dim, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < ambient.dim; ++i) mat.at(i, j) = basis[j][i];
  LinMap incl = LinMap::between(sub, ambient, std::move(mat));
  incl = check_isometry(std::move(incl));
  if (incl.isometry_checked != IsoState::Isometric)
    throw ValidationError("subspace inclusion failed its isometry check");
  return incl;
}

}  // namespace pban
