#include "pban/io.hpp"

#include <fstream>
#include <sstream>

#include "pban/errors.hpp"

namespace pban {

Json to_json(const Scalar& x) { return scalar_str(x); }

Json to_json(const Vec& v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(to_json(x));
  return j;
}

namespace {

Json vecs_json(const std::vector<Vec>& vs) {
  Json j = Json::array();
  for (const auto& v : vs) j.push_back(to_json(v));
  return j;
}

std::vector<Vec> vecs_from_json(const Json& j) {
  std::vector<Vec> out;
  for (const auto& e : j) out.push_back(vec_from_json(e));
  return out;
}

const Json& field(const Json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw ParseError(std::string("missing field: ") + name);
  return *it;
}

}  // namespace

Json to_json(const Mat& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows; ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols; ++k) row.push_back(to_json(m.at(i, k)));
    rows.push_back(std::move(row));
  }
  return Json{{"rows", m.rows}, {"cols", m.cols}, {"data", std::move(rows)}};
}

Json to_json(const PolyBall& b) {
  return Json{{"dim", b.dim},
              {"facets", vecs_json(b.facets)},
              {"vertices", vecs_json(b.vertices)}};
}

Json to_json(const Space& s) {
  return Json{{"dim", s.dim}, {"ball", to_json(s.ball)}, {"label", s.label}};
}

Json to_json(const LinMap& m) {
  return Json{{"source", to_json(m.source)},
              {"target", to_json(m.target)},
              {"matrix", to_json(m.matrix)}};
}

Json to_json(const TypePres& t) {
  return Json{{"base", to_json(t.base)},
              {"nvars", t.nvars},
              {"funcs", vecs_json(t.funcs)},
              {"kernel_dims", t.kernel_dims}};
}

Json to_json(const KFn& f) {
  Json pieces = Json::array();
  for (const auto& p : f.pieces)
    pieces.push_back(Json{{"slope", to_json(p.slope)}, {"intercept", to_json(p.intercept)}});
  return Json{{"space", to_json(f.space)}, {"pieces", std::move(pieces)}};
}

Json to_json(const DistanceBracket& d) {
  Json j{{"lo", to_json(d.lo)},
         {"hi", to_json(d.hi)},
         {"radius_used", to_json(d.radius_used)},
         {"exact", d.exact}};
  if (d.witness) j["witness"] = to_json(*d.witness);
  return j;
}

Json to_json(const AmalgamOut& a) {
  return Json{{"result", to_json(a.result)},
              {"g0", to_json(a.g0)},
              {"g1", to_json(a.g1)},
              {"kernel_dim", a.kernel_dim},
              {"tolerance_capped", a.tolerance_capped}};
}

Json to_json(const ConditionReport& r) {
  Json j{{"ok", r.ok}};
  if (r.witness) j["witness"] = to_json(*r.witness);
  return j;
}

Json to_json(const MaxTestReport& r) {
  Json j{{"verdict", r.verdict == MaxTestReport::Verdict::Violated ? "violated"
                                                                   : "no_violation_found"},
         {"gap", to_json(r.gap)},
         {"dstar", to_json(r.dstar)},
         {"certified", r.certified},
         {"level", r.level}};
  if (r.witness_g) j["witness_g"] = to_json(*r.witness_g);
  if (r.witness_lambda) j["witness_lambda"] = to_json(*r.witness_lambda);
  return j;
}

Json to_json(const IsolationReport& r) {
  const char* v = r.verdict == IsolationVerdict::Isolated      ? "isolated"
                  : r.verdict == IsolationVerdict::NotIsolated ? "not_isolated"
                                                               : "inconclusive";
  return Json{{"verdict", v}, {"gap", to_json(r.gap)}, {"level", r.level}};
}

Json to_json(const LedgerEntry& e) {
  return Json{{"stage", e.stage},
              {"sub", to_json(e.sub)},
              {"type", to_json(e.xi)},
              {"witness", vecs_json(e.witness)}};
}

Json to_json(const ChainState& cs) {
  Json spaces = Json::array();
  for (const auto& s : cs.spaces) spaces.push_back(to_json(s));
  Json links = Json::array();
  for (const auto& l : cs.links) links.push_back(to_json(l));
  Json ledger = Json::array();
  for (const auto& e : cs.ledger) ledger.push_back(to_json(e));
  Json history = Json::array();
  for (const auto& d : cs.defect_history) history.push_back(to_json(d));
  Json avoid = Json::array();
  for (const auto& b : cs.avoid_list)
    avoid.push_back(Json{{"type", to_json(b.xi)}, {"radius", to_json(b.radius)}});
  return Json{{"spaces", std::move(spaces)},
              {"links", std::move(links)},
              {"ledger", std::move(ledger)},
              {"defect_history", std::move(history)},
              {"avoid_list", std::move(avoid)}};
}

Json to_json(const CertifyReport& r) {
  Json outcomes = Json::array();
  for (const auto& o : r.outcomes) {
    Json j{{"certified", o.certified}};
    if (o.best_distortion) j["best_distortion"] = to_json(*o.best_distortion);
    if (o.psi) j["psi"] = to_json(*o.psi);
    outcomes.push_back(std::move(j));
  }
  return Json{{"outcomes", std::move(outcomes)}, {"all_certified", r.all_certified}};
}

Json to_json(const SeparatedFamily& f) {
  Json patterns = Json::array();
  for (const auto& p : f.sign_patterns) patterns.push_back(p);
  Json types = Json::array();
  for (const auto& t : f.types) types.push_back(to_json(t));
  Json lo = Json::array();
  for (const auto& row : f.pairwise_lo) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(to_json(x));
    lo.push_back(std::move(r));
  }
  return Json{{"base", to_json(f.base)},
              {"anchors", vecs_json(f.anchors)},
              {"sign_patterns", std::move(patterns)},
              {"types", std::move(types)},
              {"pairwise_lo", std::move(lo)}};
}

Json to_json(const NetReport& r) {
  Json net = Json::array();
  for (const auto& f : r.net) net.push_back(to_json(f));
  Json dists = Json::array();
  for (const auto& d : r.min_distances) dists.push_back(to_json(d));
  return Json{{"net", std::move(net)},
              {"min_distances", std::move(dists)},
              {"covered", r.covered}};
}

Json to_json(const DensityProbe& p) {
  Json verdicts = Json::array();
  for (const auto& v : p.verdicts) verdicts.push_back(to_json(v));
  Json gaps = Json::array();
  for (const auto& g : p.gaps) gaps.push_back(to_json(g));
  return Json{{"isolated", p.isolated},
              {"not_isolated", p.not_isolated},
              {"inconclusive", p.inconclusive},
              {"gaps", std::move(gaps)},
              {"verdicts", std::move(verdicts)}};
}

Json to_json(const Face& f) {
  return Json{{"generators", vecs_json(f.generators)}, {"affine_dim", f.affine_dim}};
}

Scalar scalar_from_json(const Json& j) {
  if (!j.is_string()) throw ParseError("rational must be a \"p/q\" string");
  return parse_scalar(j.get<std::string>());
}

Vec vec_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("vector must be an array");
  Vec v;
  for (const auto& e : j) v.push_back(scalar_from_json(e));
  return v;
}

Mat mat_from_json(const Json& j) {
  Mat m(field(j, "rows").get<std::size_t>(), field(j, "cols").get<std::size_t>());
  const Json& data = field(j, "data");
  if (data.size() != m.rows) throw ParseError("matrix row count mismatch");
  for (std::size_t i = 0; i < m.rows; ++i) {
    if (data[i].size() != m.cols) throw ParseError("matrix column count mismatch");
    for (std::size_t k = 0; k < m.cols; ++k) m.at(i, k) = scalar_from_json(data[i][k]);
  }
  return m;
}

PolyBall ball_from_json(const Json& j) {
  std::size_t dim = field(j, "dim").get<std::size_t>();
  auto facets = j.contains("facets") ? vecs_from_json(j["facets"]) : std::vector<Vec>{};
  auto vertices = j.contains("vertices") ? vecs_from_json(j["vertices"]) : std::vector<Vec>{};
  if (!facets.empty() && !vertices.empty()) {
    // Trust the dual representation but cross-check containment cheaply;
    // full re-derivation is the verify command's job.
    for (const auto& v : vertices) {
      bool on_boundary = false;
      for (const auto& f : facets) {
        Scalar d = dot(f, v);
        if (d > 1) throw ValidationError("stored vertex violates a stored facet");
        if (d == 1) on_boundary = true;
      }
      if (!on_boundary) throw ValidationError("stored vertex is interior");
    }
    PolyBall b;
    b.dim = dim;
    b.has_facets = b.has_vertices = true;
    b.facets = std::move(facets);
    b.vertices = std::move(vertices);
    return b;
  }
  if (!facets.empty()) return PolyBall::from_facets(dim, std::move(facets));
  return PolyBall::from_vertices(dim, std::move(vertices));
}

Space space_from_json(const Json& j) {
  std::string label = j.contains("label") ? j["label"].get<std::string>() : "";
  return Space::make(ball_from_json(field(j, "ball")), std::move(label));
}

LinMap linmap_from_json(const Json& j) {
  return LinMap::between(space_from_json(field(j, "source")),
                         space_from_json(field(j, "target")),
                         mat_from_json(field(j, "matrix")));
}

TypePres typepres_from_json(const Json& j) {
  return TypePres::make(space_from_json(field(j, "base")),
                        field(j, "nvars").get<std::size_t>(),
                        vecs_from_json(field(j, "funcs")));
}

KFn kfn_from_json(const Json& j) {
  PLMax pieces;
  for (const auto& p : field(j, "pieces"))
    pieces.push_back({vec_from_json(field(p, "slope")), scalar_from_json(field(p, "intercept"))});
  return KFn::make(space_from_json(field(j, "space")), std::move(pieces));
}

ChainState chain_from_json(const Json& j) {
  ChainState cs;
  for (const auto& s : field(j, "spaces")) cs.spaces.push_back(space_from_json(s));
  if (cs.spaces.empty()) throw ParseError("chain needs at least the base space");
  for (const auto& l : field(j, "links")) cs.links.push_back(linmap_from_json(l));
  if (j.contains("ledger"))
    for (const auto& e : j["ledger"]) {
      LedgerEntry entry;
      entry.stage = field(e, "stage").get<std::size_t>();
      entry.sub = linmap_from_json(field(e, "sub"));
      entry.xi = typepres_from_json(field(e, "type"));
      entry.witness = vecs_from_json(field(e, "witness"));
      cs.ledger.push_back(std::move(entry));
    }
  if (j.contains("defect_history"))
    for (const auto& d : j["defect_history"]) cs.defect_history.push_back(scalar_from_json(d));
  if (j.contains("avoid_list"))
    for (const auto& b : j["avoid_list"])
      cs.avoid_list.push_back(
          {typepres_from_json(field(b, "type")), scalar_from_json(field(b, "radius"))});
  return cs;
}

Catalog catalog_from_json(const Json& j) {
  Catalog cat;
  for (const auto& p : field(j, "problems")) {
    ExtensionProblem prob;
    prob.incl = linmap_from_json(field(p, "incl"));
    if (p.contains("phi")) prob.phi = linmap_from_json(p["phi"]);
    cat.problems.push_back(std::move(prob));
  }
  return cat;
}

std::vector<AvoidBall> avoid_from_json(const Json& j) {
  std::vector<AvoidBall> out;
  for (const auto& b : j)
    out.push_back({typepres_from_json(field(b, "type")), scalar_from_json(field(b, "radius"))});
  return out;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

std::string csv_row(const std::vector<Scalar>& row) {
  std::string out;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out += ',';
    out += scalar_str(row[i]);
  }
  return out;
}

std::string csv_matrix(const std::vector<std::vector<Scalar>>& rows) {
  std::string out;
  for (const auto& r : rows) {
    out += csv_row(r);
    out += '\n';
  }
  return out;
}

}  // namespace pban
