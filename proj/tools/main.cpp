// polyban: batch front end over the exact polyhedral Banach space kernel.
//
// Exit codes: 0 = ok, 1 = negative result (condition fails, not covered,
// not isolated, verification failure, ...), 2 = usage or input error.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>

#include "pban/census.hpp"
#include "pban/forge.hpp"
#include "pban/io.hpp"

using namespace pban;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

// "[1,1/2]" or "1,1/2" -> exact vector.
Vec parse_vec_literal(std::string s) {
  std::erase_if(s, [](char c) { return c == '[' || c == ']' || c == ' '; });
  Vec out;
  std::size_t pos = 0;
  while (pos <= s.size() && !s.empty()) {
    std::size_t comma = s.find(',', pos);
    std::string tok = s.substr(pos, comma == std::string::npos ? comma : comma - pos);
    out.push_back(parse_scalar(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

Scalar env_scalar(const char* name, const Scalar& fallback) {
  const char* v = std::getenv(name);
  return v ? parse_scalar(v) : fallback;
}

int env_int(const char* name, int fallback) {
  const char* v = std::getenv(name);
  return v ? std::atoi(v) : fallback;
}

void emit(const Json& j, const std::string& out_path) {
  std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path);
    if (!f) throw ValidationError("cannot write: " + out_path);
    f << text;
  }
}

void emit_csv(const std::string& text, const std::string& path) {
  if (path.empty()) return;
  std::ofstream f(path);
  if (!f) throw ValidationError("cannot write: " + path);
  f << text;
}

std::vector<TypePres> types_from_file(const std::string& path) {
  Json j = load_json_file(path);
  const Json& arr = j.is_array() ? j : j.at("types");
  std::vector<TypePres> out;
  for (const auto& t : arr) out.push_back(typepres_from_json(t));
  return out;
}

std::vector<Vec> vectors_from_file(const std::string& path) {
  Json j = load_json_file(path);
  const Json& arr = j.is_array() ? j : j.at("vectors");
  std::vector<Vec> out;
  for (const auto& v : arr) out.push_back(vec_from_json(v));
  return out;
}

// Deterministic parallel map over an index range.
template <typename F>
void parallel_for(std::size_t n, unsigned jobs, F&& body) {
  if (jobs <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::future<void>> parts;
  std::size_t chunk = (n + jobs - 1) / jobs;
  for (std::size_t start = 0; start < n; start += chunk) {
    std::size_t end = std::min(n, start + chunk);
    parts.push_back(std::async(std::launch::async, [&body, start, end] {
      for (std::size_t i = start; i < end; ++i) body(i);
    }));
  }
  for (auto& p : parts) p.get();
}

// ---------------------------------------------------------------- verify

bool verify_chain(const ChainState& cs, Json& detail) {
  for (const auto& l : cs.links) {
    if (check_isometry(l).isometry_checked != IsoState::Isometric) {
      detail["failure"] = "link not isometric";
      return false;
    }
  }
  for (std::size_t i = 0; i < cs.ledger.size(); ++i) {
    const auto& e = cs.ledger[i];
    TypePres realized = tp(e.sub, e.witness);
    auto d = type_distance(realized, e.xi);
    if (!(d.exact && d.lo == 0)) {
      detail["failure"] = "ledger witness does not realize its type";
      detail["entry"] = i;
      return false;
    }
  }
  for (const auto& ball : cs.avoid_list) {
    for (std::size_t i = 0; i < cs.ledger.size(); ++i) {
      const auto& e = cs.ledger[i];
      LinMap base_in = compose(cs.lift(e.stage), LinMap::identity(cs.spaces[0]));
      // re-express: base inclusion into the witness stage
      LinMap incl = LinMap::identity(cs.spaces[0]);
      for (std::size_t k = 0; k < e.stage; ++k) incl = compose(cs.links[k], incl);
      (void)base_in;
      std::vector<std::vector<Vec>> tuples;
      if (ball.xi.nvars == e.witness.size()) tuples.push_back(e.witness);
      if (ball.xi.nvars == 1 && e.witness.size() != 1)
        for (const auto& w : e.witness) tuples.push_back({w});
      for (const auto& t : tuples)
        if (type_distance(ball.xi, tp(incl, t)).lo <= ball.radius) {
          detail["failure"] = "ledger realization inside an avoid ball";
          detail["entry"] = i;
          return false;
        }
    }
  }
  return true;
}

bool verify_family(const SeparatedFamily& f, Json& detail) {
  const Space& E = f.base;
  for (std::size_t i = 0; i < f.anchors.size(); ++i)
    for (std::size_t j = i + 1; j < f.anchors.size(); ++j) {
      Scalar bound = norm(E, f.anchors[i]) + norm(E, f.anchors[j]) - 1;
      if (norm(E, add(f.anchors[i], f.anchors[j])) > bound ||
          norm(E, sub(f.anchors[i], f.anchors[j])) > bound) {
        detail["failure"] = "anchor inequality";
        return false;
      }
    }
  for (std::size_t p = 0; p < f.types.size(); ++p) {
    for (std::size_t n = 0; n < f.anchors.size(); ++n) {
      Vec z = scale(Scalar(-f.sign_patterns[p][n]), f.anchors[n]);
      z.push_back(Scalar(1));
      if (seminorm(f.types[p], z) > norm(E, f.anchors[n]) - Scalar(1, 2)) {
        detail["failure"] = "ball membership";
        return false;
      }
    }
  }
  // Reported lower bounds must be dominated by probe values (which are
  // themselves certified lower bounds on the type distance).
  std::vector<Vec> probes;
  for (const auto& v : f.anchors) {
    probes.push_back(v);
    probes.push_back(neg(v));
  }
  auto value_at = [](const TypePres& t, const Vec& a) {
    Vec z = neg(a);
    z.push_back(Scalar(1));
    return seminorm(t, z);
  };
  for (std::size_t i = 0; i < f.types.size(); ++i)
    for (std::size_t j = 0; j < f.types.size(); ++j) {
      if (i == j) {
        if (f.pairwise_lo[i][j] != 0) {
          detail["failure"] = "nonzero diagonal";
          return false;
        }
        continue;
      }
      Scalar probe_lo(0);
      for (const auto& pt : probes) {
        Scalar d = abs(value_at(f.types[i], pt) - value_at(f.types[j], pt));
        if (d > probe_lo) probe_lo = d;
      }
      if (f.pairwise_lo[i][j] > probe_lo &&
          f.pairwise_lo[i][j] > type_distance(f.types[i], f.types[j]).lo) {
        detail["failure"] = "pairwise bound not certified";
        return false;
      }
    }
  return true;
}

int cmd_verify(const std::string& path) {
  Json j = load_json_file(path);
  std::string kind = j.contains("kind") ? j["kind"].get<std::string>() : "";
  Json detail{{"kind", kind}, {"verified", false}};
  bool ok = false;
  if (kind == "amalgam") {
    LinMap f0 = linmap_from_json(j.at("f0"));
    LinMap f1 = linmap_from_json(j.at("f1"));
    LinMap g0 = linmap_from_json(j.at("out").at("g0"));
    LinMap g1 = linmap_from_json(j.at("out").at("g1"));
    ok = check_isometry(g0).isometry_checked == IsoState::Isometric &&
         check_isometry(g1).isometry_checked == IsoState::Isometric &&
         compose(g0, f0).matrix == compose(g1, f1).matrix;
  } else if (kind == "join") {
    Space E = space_from_json(j.at("space0"));
    Space F = space_from_json(j.at("space1"));
    LinMap g0 = linmap_from_json(j.at("out").at("g0"));
    LinMap g1 = linmap_from_json(j.at("out").at("g1"));
    std::vector<Vec> abar, bbar;
    for (const auto& v : j.at("abar")) abar.push_back(vec_from_json(v));
    for (const auto& v : j.at("bbar")) bbar.push_back(vec_from_json(v));
    std::vector<Scalar> eps;
    for (const auto& e : j.at("eps")) eps.push_back(scalar_from_json(e));
    ok = check_isometry(g0).isometry_checked == IsoState::Isometric &&
         check_isometry(g1).isometry_checked == IsoState::Isometric;
    for (std::size_t i = 0; ok && i < abar.size(); ++i) {
      Scalar gap = norm(g0.target, sub(g0.apply(abar[i]), g1.apply(bbar[i])));
      Scalar tol = eps[i] < min_join_tolerance() && eps[i] > 0 ? min_join_tolerance() : eps[i];
      if (gap > tol) ok = false;
    }
    (void)E;
    (void)F;
  } else if (kind == "distance") {
    TypePres a = typepres_from_json(j.at("type1"));
    TypePres b = typepres_from_json(j.at("type2"));
    auto d = type_distance(a, b);
    ok = scalar_str(d.lo) == j.at("bracket").at("lo").get<std::string>() &&
         scalar_str(d.hi) == j.at("bracket").at("hi").get<std::string>();
  } else if (kind == "isolation") {
    TypePres t = typepres_from_json(j.at("type"));
    int level = j.at("report").at("level").get<int>();
    IsolationReport r = is_isolated(t, level);
    std::string v = j.at("report").at("verdict").get<std::string>();
    ok = (r.verdict == IsolationVerdict::Isolated && v == "isolated") ||
         (r.verdict == IsolationVerdict::NotIsolated && v == "not_isolated") ||
         (r.verdict == IsolationVerdict::Inconclusive && v == "inconclusive");
  } else if (kind == "chain" || kind == "forge_run") {
    ChainState cs = chain_from_json(kind == "chain" ? j : j.at("chain"));
    ok = verify_chain(cs, detail);
  } else if (kind == "family") {
    Json fj = j.at("family");
    SeparatedFamily fam;
    fam.base = space_from_json(fj.at("base"));
    for (const auto& v : fj.at("anchors")) fam.anchors.push_back(vec_from_json(v));
    for (const auto& p : fj.at("sign_patterns"))
      fam.sign_patterns.push_back(p.get<std::vector<int>>());
    for (const auto& t : fj.at("types")) fam.types.push_back(typepres_from_json(t));
    for (const auto& row : fj.at("pairwise_lo")) {
      std::vector<Scalar> r;
      for (const auto& x : row) r.push_back(scalar_from_json(x));
      fam.pairwise_lo.push_back(std::move(r));
    }
    ok = verify_family(fam, detail);
  } else if (kind == "smooth") {
    Space E = space_from_json(j.at("space"));
    ok = is_smooth(E, vec_from_json(j.at("v"))) == j.at("smooth").get<bool>();
  } else if (kind == "norm") {
    Space E = space_from_json(j.at("space"));
    ok = scalar_str(norm(E, vec_from_json(j.at("v")))) == j.at("value").get<std::string>();
  } else {
    throw ValidationError("no verifier for kind: " + (kind.empty() ? "(missing)" : kind));
  }
  detail["verified"] = ok;
  emit(detail, "");
  return ok ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact polyhedral Banach space toolkit"};
  app.require_subcommand(1);
  unsigned jobs = 1;
  app.add_option("--jobs", jobs, "worker threads for parallel sections");
  long seed = 0;
  app.add_option("--seed", seed, "seed (reserved; all commands are deterministic)");

  std::string space_path, space1_path, v_lit, out_path, csv_path;
  std::string type1_path, type2_path, incl_path, abar_path, bbar_path, eps_lit;
  std::string f0_path, f1_path, anchors_path, samples_path, candidates_path;
  std::string catalog_path, avoid_path, chain_out, input_path;
  int level = env_int("PBAN_LEVEL", 2);
  std::string R_lit = scalar_str(env_scalar("PBAN_R", Scalar(2)));
  std::string eps_s_lit = scalar_str(env_scalar("PBAN_TOL", Scalar(1, 2)));
  std::string step_lit = scalar_str(env_scalar("PBAN_NET_STEP", Scalar(1, 2)));
  std::string radius_lit = "10", cap_lit = "3";
  std::size_t m = 0, budget = 0;
  bool exact_pairs = false;

  auto* c_norm = app.add_subcommand("norm", "norm of a vector");
  c_norm->add_option("--space", space_path)->required();
  c_norm->add_option("--v", v_lit)->required();
  c_norm->add_option("--out", out_path);

  auto* c_dual = app.add_subcommand("dual", "dual space");
  c_dual->add_option("--space", space_path)->required();
  c_dual->add_option("--out", out_path);

  auto* c_smooth = app.add_subcommand("smooth", "smoothness of a point");
  c_smooth->add_option("--space", space_path)->required();
  c_smooth->add_option("--v", v_lit)->required();
  c_smooth->add_option("--out", out_path);

  auto* c_amalg = app.add_subcommand("amalgamate", "pushout of two isometric embeddings");
  c_amalg->add_option("--f0", f0_path)->required();
  c_amalg->add_option("--f1", f1_path)->required();
  c_amalg->add_option("--out", out_path);

  auto* c_join = app.add_subcommand("join", "approximate amalgam of marked tuples");
  c_join->add_option("--space0", space_path)->required();
  c_join->add_option("--space1", space1_path)->required();
  c_join->add_option("--abar", abar_path)->required();
  c_join->add_option("--bbar", bbar_path)->required();
  c_join->add_option("--eps", eps_lit)->required();
  c_join->add_option("--out", out_path);

  auto* c_tp = app.add_subcommand("tp", "type of a tuple over a subspace");
  c_tp->add_option("--incl", incl_path)->required();
  c_tp->add_option("--abar", abar_path)->required();
  c_tp->add_option("--out", out_path);

  auto* c_dist = app.add_subcommand("dist", "distance between two types");
  c_dist->add_option("--type1", type1_path)->required();
  c_dist->add_option("--type2", type2_path)->required();
  c_dist->add_option("--out", out_path);

  auto* c_iso = app.add_subcommand("isolate", "isolation test for a 1-type");
  c_iso->add_option("--type", type1_path)->required();
  c_iso->add_option("--level", level);
  c_iso->add_option("--out", out_path);

  auto* c_forge = app.add_subcommand("forge", "chain construction");
  auto* c_forge_run = c_forge->add_subcommand("run", "schedule + certify");
  c_forge_run->add_option("--base", space_path)->required();
  c_forge_run->add_option("--budget", budget)->required();
  c_forge_run->add_option("--catalog", catalog_path);
  c_forge_run->add_option("--eps", eps_s_lit);
  c_forge_run->add_option("--avoid", avoid_path);
  c_forge_run->add_option("--samples", samples_path);
  c_forge_run->add_option("--candidates", candidates_path);
  c_forge_run->add_option("--net-step", step_lit);
  c_forge_run->add_option("--net-radius", R_lit);
  c_forge_run->add_option("--out", out_path);
  c_forge_run->add_option("--csv", csv_path);

  auto* c_census = app.add_subcommand("census", "type census experiments");
  auto* c_lind = c_census->add_subcommand("lindenstrauss", "2^m separated family");
  c_lind->add_option("--space", space_path)->required();
  c_lind->add_option("--m", m)->required();
  c_lind->add_option("--anchors", anchors_path);
  c_lind->add_option("--radius", radius_lit);
  c_lind->add_option("--step", step_lit);
  c_lind->add_flag("--exact-pairs", exact_pairs);
  c_lind->add_option("--out", out_path);
  c_lind->add_option("--csv", csv_path);
  auto* c_net = c_census->add_subcommand("net", "polyhedral Katetov net + coverage");
  c_net->add_option("--space", space_path)->required();
  c_net->add_option("--R", R_lit);
  c_net->add_option("--eps", eps_s_lit);
  c_net->add_option("--value-cap", cap_lit);
  c_net->add_option("--samples", samples_path);
  c_net->add_option("--out", out_path);
  c_net->add_option("--csv", csv_path);
  auto* c_probe = c_census->add_subcommand("probe", "isolated-type density probe");
  c_probe->add_option("--space", space_path)->required();
  c_probe->add_option("--samples", samples_path)->required();
  c_probe->add_option("--level", level);
  c_probe->add_option("--out", out_path);

  auto* c_verify = app.add_subcommand("verify", "re-check an emitted certificate");
  c_verify->add_option("--input", input_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*c_norm) {
      Space E = space_from_json(load_json_file(space_path));
      Vec v = parse_vec_literal(v_lit);
      Scalar n = norm(E, v);
      std::cout << scalar_str(n) << "\n";
      if (!out_path.empty())
        emit(Json{{"kind", "norm"}, {"space", to_json(E)}, {"v", to_json(v)},
                  {"value", scalar_str(n)}},
             out_path);
      return kOk;
    }
    if (*c_dual) {
      Space E = space_from_json(load_json_file(space_path));
      emit(Json{{"kind", "dual"}, {"space", to_json(E)}, {"dual", to_json(dual_space(E))}},
           out_path);
      return kOk;
    }
    if (*c_smooth) {
      Space E = space_from_json(load_json_file(space_path));
      Vec v = parse_vec_literal(v_lit);
      bool s = is_smooth(E, v);
      std::cout << (s ? "true" : "false") << "\n";
      if (!out_path.empty())
        emit(Json{{"kind", "smooth"}, {"space", to_json(E)}, {"v", to_json(v)},
                  {"smooth", s}, {"norming_face", to_json(norming_functionals(E, v))}},
             out_path);
      return s ? kOk : kNegative;
    }
    if (*c_amalg) {
      LinMap f0 = linmap_from_json(load_json_file(f0_path));
      LinMap f1 = linmap_from_json(load_json_file(f1_path));
      AmalgamOut out = amalgamate(f0.source, f0.target, f1.target, f0, f1);
      emit(Json{{"kind", "amalgam"}, {"f0", to_json(f0)}, {"f1", to_json(f1)},
                {"out", to_json(out)}},
           out_path);
      return kOk;
    }
    if (*c_join) {
      Space E = space_from_json(load_json_file(space_path));
      Space F = space_from_json(load_json_file(space1_path));
      auto abar = vectors_from_file(abar_path);
      auto bbar = vectors_from_file(bbar_path);
      std::vector<Scalar> eps;
      for (const auto& x : parse_vec_literal(eps_lit)) eps.push_back(x);
      Json base{{"kind", "join"}, {"space0", to_json(E)}, {"space1", to_json(F)},
                {"abar", Json::array()}, {"bbar", Json::array()}, {"eps", Json::array()}};
      for (const auto& a : abar) base["abar"].push_back(to_json(a));
      for (const auto& b : bbar) base["bbar"].push_back(to_json(b));
      for (const auto& x : eps) base["eps"].push_back(scalar_str(x));
      try {
        AmalgamOut out = approx_join(E, F, abar, bbar, eps);
        base["out"] = to_json(out);
        emit(base, out_path);
        return kOk;
      } catch (const ConditionViolated& cv) {
        base["violation_witness"] = to_json(cv.witness);
        emit(base, out_path);
        return kNegative;
      }
    }
    if (*c_tp) {
      LinMap incl = linmap_from_json(load_json_file(incl_path));
      auto abar = vectors_from_file(abar_path);
      emit(Json{{"kind", "type"}, {"type", to_json(tp(incl, abar))}}, out_path);
      return kOk;
    }
    if (*c_dist) {
      TypePres a = typepres_from_json(load_json_file(type1_path).contains("type")
                                          ? load_json_file(type1_path)["type"]
                                          : load_json_file(type1_path));
      TypePres b = typepres_from_json(load_json_file(type2_path).contains("type")
                                          ? load_json_file(type2_path)["type"]
                                          : load_json_file(type2_path));
      auto d = type_distance(a, b);
      std::cout << "[" << scalar_str(d.lo) << ", " << scalar_str(d.hi) << "]"
                << (d.exact ? ", exact" : "") << "\n";
      if (!out_path.empty())
        emit(Json{{"kind", "distance"}, {"type1", to_json(a)}, {"type2", to_json(b)},
                  {"bracket", to_json(d)}},
             out_path);
      return kOk;
    }
    if (*c_iso) {
      Json tj = load_json_file(type1_path);
      TypePres t = typepres_from_json(tj.contains("type") ? tj["type"] : tj);
      IsolationReport r = is_isolated(t, level);
      emit(Json{{"kind", "isolation"}, {"type", to_json(t)}, {"report", to_json(r)}},
           out_path);
      return r.verdict == IsolationVerdict::Isolated ? kOk : kNegative;
    }
    if (*c_forge_run) {
      Space base = space_from_json(load_json_file(space_path));
      ChainState cs = ChainState::start(base);
      if (!avoid_path.empty()) cs.avoid_list = avoid_from_json(load_json_file(avoid_path));
      NetParams net;
      net.grid_step = parse_scalar(step_lit);
      net.grid_radius = parse_scalar(R_lit);
      std::vector<TypePres> samples =
          samples_path.empty() ? std::vector<TypePres>{} : types_from_file(samples_path);
      // Default candidate pool: coarse unit-step enumeration (the finer
      // --net-step only refines the defect net, not the candidate pool).
      Scalar cand_step = net.grid_step < 1 ? Scalar(1) : net.grid_step;
      std::vector<TypePres> candidates =
          candidates_path.empty()
              ? (base.dim == 1 ? enumerate_candidate_types(base, net.grid_radius, cand_step,
                                                           net.grid_radius + 1)
                               : std::vector<TypePres>{})
              : types_from_file(candidates_path);
      if (samples.empty()) samples = candidates;
      cs = schedule(cs, budget, net, candidates, samples);
      Json out{{"kind", "forge_run"}, {"chain", to_json(cs)}};
      std::string csv = "row,index,value\n";
      for (std::size_t i = 0; i < cs.defect_history.size(); ++i)
        csv += "defect," + std::to_string(i) + "," + scalar_str(cs.defect_history[i]) + "\n";
      bool all_ok = true;
      if (!catalog_path.empty()) {
        Catalog cat = catalog_from_json(load_json_file(catalog_path));
        CertifyReport rep = certify_eps_gurarij(cs, cat, parse_scalar(eps_s_lit), net);
        out["certify"] = to_json(rep);
        all_ok = rep.all_certified;
        for (std::size_t i = 0; i < rep.outcomes.size(); ++i)
          csv += "problem," + std::to_string(i) + "," +
                 (rep.outcomes[i].certified ? "certified" : "unresolved") + "\n";
      }
      emit(out, out_path);
      emit_csv(csv, csv_path);
      return all_ok ? kOk : kNegative;
    }
    if (*c_lind) {
      Space E = space_from_json(load_json_file(space_path));
      std::vector<Vec> anchors =
          anchors_path.empty() ? std::vector<Vec>{} : vectors_from_file(anchors_path);
      try {
        SeparatedFamily fam = lindenstrauss_family(E, m, anchors, parse_scalar(radius_lit),
                                                   parse_scalar(step_lit), exact_pairs);
        emit(Json{{"kind", "family"}, {"family", to_json(fam)}}, out_path);
        emit_csv(csv_matrix(fam.pairwise_lo), csv_path);
        return kOk;
      } catch (const NoAnchorsFound& e) {
        emit(Json{{"kind", "family"}, {"error", "NoAnchorsFound"}, {"message", e.what()}},
             out_path);
        return kNegative;
      }
    }
    if (*c_net) {
      Space E = space_from_json(load_json_file(space_path));
      std::vector<KFn> samples;
      if (!samples_path.empty()) {
        Json j = load_json_file(samples_path);
        const Json& arr = j.is_array() ? j : j.at("functions");
        for (const auto& f : arr) samples.push_back(kfn_from_json(f));
      }
      NetReport rep = polyhedral_net(E, parse_scalar(R_lit), parse_scalar(eps_s_lit), samples,
                                     parse_scalar(cap_lit));
      emit(Json{{"kind", "net"}, {"report", to_json(rep)}}, out_path);
      if (!csv_path.empty()) emit_csv(csv_row(rep.min_distances) + "\n", csv_path);
      return rep.covered ? kOk : kNegative;
    }
    if (*c_probe) {
      Space E = space_from_json(load_json_file(space_path));
      auto samples = types_from_file(samples_path);
      // per-sample isolation tests are pure; run them in parallel
      std::vector<IsolationReport> reports(samples.size());
      parallel_for(samples.size(), jobs,
                   [&](std::size_t i) { reports[i] = is_isolated(samples[i], level); });
      DensityProbe p;
      for (auto& r : reports) {
        switch (r.verdict) {
          case IsolationVerdict::Isolated: ++p.isolated; break;
          case IsolationVerdict::NotIsolated:
            ++p.not_isolated;
            p.gaps.push_back(r.gap);
            break;
          case IsolationVerdict::Inconclusive: ++p.inconclusive; break;
        }
        p.verdicts.push_back(std::move(r));
      }
      (void)E;
      emit(Json{{"kind", "probe"}, {"report", to_json(p)}}, out_path);
      return kOk;
    }
    if (*c_verify) return cmd_verify(input_path);
  } catch (const ParseError& e) {
    emit(Json{{"error", "parse"}, {"message", e.what()}}, "");
    return kUsage;
  } catch (const Error& e) {
    emit(Json{{"error", "validation"}, {"message", e.what()}}, "");
    return kUsage;
  }
  return kUsage;
}
