#include "pban/polyball.hpp"

#include <algorithm>
#include <map>

#include "pban/errors.hpp"

namespace pban {

PolyBall PolyBall::from_facets(std::size_t dim, std::vector<Vec> facets) {
  PolyBall b;
  b.dim = dim;
  b.facets = std::move(facets);
  b.has_facets = true;
  return b;
}

PolyBall PolyBall::from_vertices(std::size_t dim, std::vector<Vec> vertices) {
  PolyBall b;
  b.dim = dim;
  b.vertices = std::move(vertices);
  b.has_vertices = true;
  return b;
}

PolyBall PolyBall::cube(std::size_t dim) {
  std::vector<Vec> facets;
  for (std::size_t k = 0; k < dim; ++k) {
    Vec e(dim, Scalar(0));
    e[k] = 1;
    facets.push_back(e);
    e[k] = -1;
    facets.push_back(e);
  }
  return complete_reps(from_facets(dim, std::move(facets)));
}

PolyBall PolyBall::cross(std::size_t dim) {
  std::vector<Vec> verts;
  for (std::size_t k = 0; k < dim; ++k) {
    Vec e(dim, Scalar(0));
    e[k] = 1;
    verts.push_back(e);
    e[k] = -1;
    verts.push_back(e);
  }
  return complete_reps(from_vertices(dim, std::move(verts)));
}

Scalar gauge(const PolyBall& ball, const Vec& v) {
  if (v.size() != ball.dim) throw DimensionMismatch("gauge");
  if (!ball.has_facets) throw ValidationError("gauge requires the facet representation");
  Scalar best(0);
  for (const auto& f : ball.facets) best = std::max(best, dot(f, v));
  return best;
}

bool contains(const PolyBall& ball, const Vec& v) { return gauge(ball, v) <= 1; }

std::vector<Vec> canonical_vector_set(std::vector<Vec> vecs) {
  std::sort(vecs.begin(), vecs.end(), lex_less);
  vecs.erase(std::unique(vecs.begin(), vecs.end()), vecs.end());
  return vecs;
}

std::vector<Vec> conv_hull_vertices(const std::vector<Vec>& points) {
  auto pts = canonical_vector_set(points);
  std::vector<Vec> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<Vec> others;
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (j != i) others.push_back(pts[j]);
    if (others.empty() || !in_conv_hull(pts[i], others)) out.push_back(pts[i]);
  }
  return out;
}

namespace {

struct EnumVertex {
  Vec x;
  std::vector<std::size_t> tight;  // sorted constraint indices
};

std::vector<std::size_t> sorted_intersection(const std::vector<std::size_t>& a,
                                             const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

std::vector<Vec> enumerate_vertices(const std::vector<LinCon>& cons, std::size_t dim) {
  if (dim > kDimCap) throw DimensionTooLarge("vertex enumeration capped at dimension 6");
  if (dim == 0) {
    for (const auto& c : cons) {
      if ((c.eq && sgn(c.rhs) != 0) || (!c.eq && c.rhs < 0)) throw InfeasibleInput();
    }
    return {Vec{}};
  }

  // Expand equalities, collect the inequality system.
  std::vector<LinCon> ineqs;
  for (const auto& c : cons) {
    if (c.a.size() != dim) throw DimensionMismatch("enumerate_vertices");
    ineqs.push_back({c.a, c.rhs, false});
    if (c.eq) ineqs.push_back({neg(c.a), -c.rhs, false});
  }

  // Exact coordinate bounds; also detects emptiness and unboundedness.
  Vec lo(dim), hi(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    Vec obj(dim, Scalar(0));
    obj[k] = 1;
    LpResult up = lp_max(obj, ineqs);
    if (up.status == LpStatus::Infeasible) throw InfeasibleInput();
    if (up.status == LpStatus::Unbounded) throw UnboundedBall();
    LpResult dn = lp_min(obj, ineqs);
    if (dn.status == LpStatus::Unbounded) throw UnboundedBall();
    hi[k] = up.value + 1;
    lo[k] = dn.value - 1;
  }

  // All constraint normals, boxes first: index 2k is x_k <= hi, 2k+1 is
  // -x_k <= -lo. Input inequalities follow.
  std::vector<Vec> normals;
  for (std::size_t k = 0; k < dim; ++k) {
    Vec e(dim, Scalar(0));
    e[k] = 1;
    normals.push_back(e);
    e[k] = -1;
    normals.push_back(e);
  }
  for (const auto& c : ineqs) normals.push_back(c.a);

  // Seed with the box vertices.
  std::vector<EnumVertex> verts;
  for (std::size_t mask = 0; mask < (std::size_t(1) << dim); ++mask) {
    EnumVertex v;
    v.x.resize(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      bool top = (mask >> k) & 1;
      v.x[k] = top ? hi[k] : lo[k];
      v.tight.push_back(2 * k + (top ? 0 : 1));
    }
    verts.push_back(std::move(v));
  }

  for (std::size_t ci = 0; ci < ineqs.size(); ++ci) {
    const std::size_t cidx = 2 * dim + ci;
    const auto& con = ineqs[ci];
    std::vector<Scalar> slack(verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i) slack[i] = con.rhs - dot(con.a, verts[i].x);

    bool any_out = std::any_of(slack.begin(), slack.end(),
                               [](const Scalar& s) { return s < 0; });
    if (!any_out) {
      for (std::size_t i = 0; i < verts.size(); ++i)
        if (sgn(slack[i]) == 0) verts[i].tight.push_back(cidx);
      for (auto& v : verts) std::sort(v.tight.begin(), v.tight.end());
      continue;
    }

    std::map<Vec, std::vector<std::size_t>, decltype(&lex_less)> cuts(&lex_less);
    for (std::size_t i = 0; i < verts.size(); ++i) {
      if (slack[i] <= 0) continue;
      for (std::size_t j = 0; j < verts.size(); ++j) {
        if (slack[j] >= 0) continue;
        auto common = sorted_intersection(verts[i].tight, verts[j].tight);
        std::vector<Vec> rows;
        for (auto t : common) rows.push_back(normals[t]);
        if (rank_of_rows(rows) != dim - 1) continue;  // not an edge
        Scalar t = slack[i] / (slack[i] - slack[j]);
        Vec x = add(verts[i].x, scale(t, sub(verts[j].x, verts[i].x)));
        common.push_back(cidx);
        auto& tight = cuts[x];
        tight.insert(tight.end(), common.begin(), common.end());
      }
    }

    std::vector<EnumVertex> next;
    for (std::size_t i = 0; i < verts.size(); ++i) {
      if (slack[i] < 0) continue;
      if (sgn(slack[i]) == 0) verts[i].tight.push_back(cidx);
      std::sort(verts[i].tight.begin(), verts[i].tight.end());
      next.push_back(std::move(verts[i]));
    }
    for (auto& [x, tight] : cuts) {
      EnumVertex v;
      v.x = x;
      std::sort(tight.begin(), tight.end());
      tight.erase(std::unique(tight.begin(), tight.end()), tight.end());
      v.tight = std::move(tight);
      next.push_back(std::move(v));
    }
    verts = std::move(next);
    if (verts.empty()) throw InfeasibleInput();
  }

  std::vector<Vec> out;
  out.reserve(verts.size());
  for (auto& v : verts) out.push_back(std::move(v.x));
  return canonical_vector_set(std::move(out));
}

namespace {

void check_symmetric(const std::vector<Vec>& vecs, const char* what) {
  auto canon = canonical_vector_set(vecs);
  for (const auto& v : canon) {
    if (!std::binary_search(canon.begin(), canon.end(), neg(v), lex_less))
      throw ValidationError(std::string(what) + " not closed under negation");
  }
}

// Vertex enumeration of { x : f.x <= 1 } for the given facet list.
std::vector<Vec> vertices_from_facets(std::size_t dim, const std::vector<Vec>& facets) {
  std::vector<LinCon> cons;
  for (const auto& f : facets) cons.push_back({f, Scalar(1), false});
  return enumerate_vertices(cons, dim);
}

// Keep facets whose tight vertex set has affine rank dim-1; this is the
// minimal H-representation.
std::vector<Vec> prune_facets(std::size_t dim, const std::vector<Vec>& facets,
                              const std::vector<Vec>& vertices) {
  std::vector<Vec> kept;
  for (const auto& f : canonical_vector_set(facets)) {
    std::vector<Vec> tight;
    for (const auto& w : vertices)
      if (dot(f, w) == 1) tight.push_back(w);
    if (tight.empty()) continue;
    std::vector<Vec> diffs;
    for (std::size_t i = 1; i < tight.size(); ++i) diffs.push_back(sub(tight[i], tight[0]));
    if (rank_of_rows(diffs) == dim - 1) kept.push_back(f);
  }
  return kept;
}

}  // namespace

PolyBall complete_reps(const PolyBall& ball) {
  if (ball.dim > kDimCap) throw DimensionTooLarge();
  if (!ball.has_facets && !ball.has_vertices)
    throw ValidationError("PolyBall has no representation");

  PolyBall out;
  out.dim = ball.dim;
  out.has_facets = out.has_vertices = true;
  if (ball.dim == 0) return out;

  if (ball.has_facets) {
    check_symmetric(ball.facets, "facets");
    out.vertices = vertices_from_facets(ball.dim, ball.facets);  // throws UnboundedBall
    out.facets = prune_facets(ball.dim, ball.facets, out.vertices);
    if (ball.has_vertices) {
      check_symmetric(ball.vertices, "vertices");
      if (conv_hull_vertices(ball.vertices) != out.vertices)
        throw ValidationError("facet and vertex representations disagree");
    }
  } else {
    check_symmetric(ball.vertices, "vertices");
    if (rank_of_rows(ball.vertices) != ball.dim) throw DegenerateBall();
    out.vertices = conv_hull_vertices(ball.vertices);
    // Facets of conv(V) are the vertices of the polar H-polytope.
    out.facets = vertices_from_facets(ball.dim, out.vertices);
  }
  if (rank_of_rows(out.vertices) != ball.dim) throw DegenerateBall();
  out.facets = canonical_vector_set(std::move(out.facets));
  return out;
}

PolyBall polar(const PolyBall& ball) {
  PolyBall b = (ball.has_facets && ball.has_vertices) ? ball : complete_reps(ball);
  PolyBall out;
  out.dim = b.dim;
  out.facets = b.vertices;
  out.vertices = b.facets;
  out.has_facets = out.has_vertices = true;
  return out;
}

}  // namespace pban
