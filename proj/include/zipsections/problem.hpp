#pragma once

#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>

#include "json.hpp"

#include "catalog.hpp"

namespace zipsections {

using json = nlohmann::json;

[[noreturn]] inline void fail_field(const std::string& path, const std::string& msg) {
  throw std::invalid_argument("field '" + path + "': " + msg);
}

// --- JSON primitives ----------------------------------------------------------

inline i64 get_i64(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail_field(path, "expected an integer");
  return j.get<i64>();
}

inline IVec ivec_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) fail_field(path, "expected an array of integers");
  IVec v;
  for (size_t i = 0; i < j.size(); ++i)
    v.push_back(get_i64(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

inline IMat imat_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) fail_field(path, "expected an array of integer rows");
  IMat m;
  for (size_t i = 0; i < j.size(); ++i)
    m.push_back(ivec_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  return m;
}

inline json ivec_to_json(const IVec& v) { return json(v); }

inline json imat_to_json(const IMat& m) {
  json out = json::array();
  for (const auto& row : m) out.push_back(ivec_to_json(row));
  return out;
}

inline json qvec_to_json(const QVec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

inline json field_to_json(const Fq& F) {
  return json{{"p", F.p()}, {"degree", F.e()}, {"modulus", F.modulus()}};
}

// Field elements serialize as coefficient vectors over the prime field.
inline json elem_to_json(const Fq& F, Fq::elem a) { return json(F.coeffs(a)); }

inline Fq::elem elem_from_json(const Fq& F, const json& j, const std::string& path) {
  if (j.is_number_integer()) return F.from_int(j.get<i64>());
  if (!j.is_array()) fail_field(path, "expected an integer or a coefficient array");
  std::vector<int> c;
  for (size_t i = 0; i < j.size(); ++i) {
    i64 x = get_i64(j[i], path + "[" + std::to_string(i) + "]");
    c.push_back((int)(((x % F.p()) + F.p()) % F.p()));
  }
  if ((int)c.size() > F.e()) fail_field(path, "coefficient vector longer than field degree");
  c.resize(F.e(), 0);
  return F.from_coeffs(c);
}

inline json fqmatrix_to_json(const Fq& F, const FqMatrix& m) {
  json out = json::array();
  for (int r = 0; r < m.rows; ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols; ++c) row.push_back(elem_to_json(F, m.at(r, c)));
    out.push_back(row);
  }
  return out;
}

inline FqMatrix fqmatrix_from_json(const Fq& F, const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail_field(path, "expected a nonempty array of rows");
  int rows = (int)j.size();
  int cols = -1;
  for (int r = 0; r < rows; ++r)
    if (!j[r].is_array())
      fail_field(path + "[" + std::to_string(r) + "]", "expected an array");
    else if (cols < 0)
      cols = (int)j[r].size();
    else if ((int)j[r].size() != cols)
      fail_field(path + "[" + std::to_string(r) + "]", "ragged matrix rows");
  FqMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      m.at(r, c) = elem_from_json(F, j[r][c], path + "[" + std::to_string(r) + "][" +
                                                  std::to_string(c) + "]");
  return m;
}

inline json subspace_to_json(const Fq& F, const Subspace& s) {
  return json{{"ambient", s.ambient()}, {"dim", s.dim()},
              {"basis", fqmatrix_to_json(F, s.basis())}};
}

inline json lattice_to_json(const IntLattice& l) {
  return json{{"ambient", l.ambient()}, {"rank", l.rank()}, {"basis", imat_to_json(l.basis())}};
}

// --- ProblemSpec --------------------------------------------------------------

struct ProblemSpec {
  std::string task;
  std::optional<std::string> catalog_name;
  int sp_n = 2;
  std::optional<ZipDatum> zd;
  std::shared_ptr<const Fq> field;
  LphiDescription lphi;
  json rep_expr, rep2_expr;  // raw trees, realized on demand
  IVec lambda;
  std::string variant = "general";
  std::string format = "json";
  std::uint64_t seed = 2026;
  int field_degree = 0;  // 0: datum default
};

// --- Representation expression trees ------------------------------------------

namespace detail {

inline std::pair<IVec, IVec> catalog_std_pair(const std::string& name, int rank) {
  if (name == "sl2") return {IVec{1}, IVec{-1}};
  if (name == "u21") return {IVec{1, 0, 0}, IVec{0, 1, 0}};
  if (name == "sp4" || name == "sp2n") {
    IVec wx(rank, 0), wy(rank, 0);
    wx[0] = 1;
    wy[1] = 1;
    return {wx, wy};
  }
  throw std::invalid_argument(
      "no canonical standard pair for this datum; use {\"sym\": n, \"of\": [wx, wy]}");
}

}  // namespace detail

inline PRep parse_rep(const json& t, const ProblemSpec& ps, const std::string& path) {
  const auto& F = ps.field;
  int rank = ps.zd->rd().rank();
  auto std_pair = [&]() -> std::pair<IVec, IVec> {
    if (!ps.catalog_name) fail_field(path, "\"std\" requires a catalog datum");
    try {
      return detail::catalog_std_pair(*ps.catalog_name, rank);
    } catch (const std::invalid_argument& e) {
      fail_field(path, e.what());
    }
  };
  if (t.is_string()) {
    std::string s = t.get<std::string>();
    if (s == "trivial") return char_rep(F, IVec(rank, 0));
    if (s == "std") {
      auto [wx, wy] = std_pair();
      return sym_pair(F, wx, wy, 1);
    }
    fail_field(path, "unknown representation name '" + s + "' (expected trivial|std)");
  }
  if (!t.is_object()) fail_field(path, "expected a representation expression object");
  if (t.contains("char")) return char_rep(F, ivec_from_json(t["char"], path + ".char"));
  if (t.contains("sym")) {
    i64 n = get_i64(t["sym"], path + ".sym");
    if (n < 0) fail_field(path + ".sym", "degree must be >= 0");
    IVec wx, wy;
    if (!t.contains("of") || (t["of"].is_string() && t["of"] == "std")) {
      std::tie(wx, wy) = std_pair();
    } else if (t["of"].is_array() && t["of"].size() == 2) {
      wx = ivec_from_json(t["of"][0], path + ".of[0]");
      wy = ivec_from_json(t["of"][1], path + ".of[1]");
    } else {
      fail_field(path + ".of", "expected \"std\" or a pair of weight vectors");
    }
    return sym_pair(F, wx, wy, (int)n);
  }
  if (t.contains("tensor")) {
    const json& parts = t["tensor"];
    if (!parts.is_array() || parts.empty())
      fail_field(path + ".tensor", "expected a nonempty array of factors");
    PRep acc = parse_rep(parts[0], ps, path + ".tensor[0]");
    for (size_t i = 1; i < parts.size(); ++i)
      acc = tensor(acc, parse_rep(parts[i], ps, path + ".tensor[" + std::to_string(i) + "]"));
    return acc;
  }
  if (t.contains("boxtimes")) {
    const json& parts = t["boxtimes"];
    if (!parts.is_array() || parts.empty())
      fail_field(path + ".boxtimes", "expected a nonempty array of factors");
    PRep acc = parse_rep(parts[0], ps, path + ".boxtimes[0]");
    for (size_t i = 1; i < parts.size(); ++i)
      acc = boxtimes(acc,
                     parse_rep(parts[i], ps, path + ".boxtimes[" + std::to_string(i) + "]"));
    return acc;
  }
  if (t.contains("dual")) return dual(parse_rep(t["dual"], ps, path + ".dual"));
  if (t.contains("frobtwist"))
    return frobenius_twist(parse_rep(t["frobtwist"], ps, path + ".frobtwist"),
                           ps.zd->rd().q());
  if (t.contains("vI")) {
    IVec l = ivec_from_json(t["vI"], path + ".vI");
    if (ps.catalog_name && *ps.catalog_name == "u21" && l.size() == 3)
      return u21_vI(F, l[0], l[1], l[2]);
    if (ps.catalog_name && (*ps.catalog_name == "sp4" || *ps.catalog_name == "sp2n") &&
        l.size() == 2 && ps.zd->rd().rank() == 2)
      return sp4_vI(F, l[0], l[1]);
    fail_field(path + ".vI",
               "vI is available for the u21 (3 entries) and sp4 (2 entries) catalog data");
  }
  if (t.contains("explicit")) {
    const json& e = t["explicit"];
    PRep v;
    v.F = F;
    v.rank = rank;
    if (!e.contains("weights")) fail_field(path + ".explicit", "missing weights");
    for (const auto& w : e["weights"]) {
      IVec wv = ivec_from_json(w, path + ".explicit.weights[]");
      if ((int)wv.size() != rank) fail_field(path + ".explicit.weights[]", "wrong rank");
      v.weights.push_back(wv);
    }
    if (e.contains("operators")) {
      if (!e["operators"].is_array())
        fail_field(path + ".explicit.operators", "expected an array");
      for (const auto& op : e["operators"]) {
        IVec root = ivec_from_json(op.value("root", json::array()),
                                   path + ".explicit.operators[].root");
        if ((int)root.size() != rank)
          fail_field(path + ".explicit.operators[].root", "wrong rank");
        if (!op.contains("level")) fail_field(path + ".explicit.operators[]", "missing level");
        i64 level = get_i64(op["level"], path + ".explicit.operators[].level");
        if (level < 1) fail_field(path + ".explicit.operators[].level", "level must be >= 1");
        if (!op.contains("matrix")) fail_field(path + ".explicit.operators[]", "missing matrix");
        FqMatrix m = fqmatrix_from_json(*F, op["matrix"], path + ".explicit.operators[].matrix");
        v.ops[root][(int)level] = std::move(m);
      }
    }
    v.validate();
    return v;
  }
  fail_field(path, "unrecognized representation node (expected sym|tensor|boxtimes|dual|"
                   "frobtwist|char|vI|explicit|trivial|std)");
}

// --- L_phi description ---------------------------------------------------------

inline LphiDescription parse_lphi(const json& j, const ProblemSpec& ps,
                                  const std::string& path) {
  if (j.is_null() || (j.is_string() && j == "catalog")) return lphi_catalog(*ps.zd);
  if (!j.is_object()) fail_field(path, "expected \"catalog\" or an explicit object");
  LphiDescription d;
  int rank = ps.zd->rd().rank();
  d.scalar_degree = ps.zd->rd().field_k();
  if (j.contains("scalar_degree"))
    d.scalar_degree = (int)get_i64(j["scalar_degree"], path + ".scalar_degree");
  if (j.contains("weight_congruence")) {
    IMat gens = imat_from_json(j["weight_congruence"], path + ".weight_congruence");
    for (const auto& g : gens)
      if ((int)g.size() != rank) fail_field(path + ".weight_congruence", "wrong rank");
    d.weight_congruence = IntLattice(rank, gens);
  }
  if (j.contains("torus_elements")) {
    if (!j["torus_elements"].is_array()) fail_field(path + ".torus_elements", "expected array");
    for (const auto& t : j["torus_elements"]) {
      if (!t.is_array() || (int)t.size() != rank)
        fail_field(path + ".torus_elements[]", "expected one coefficient vector per coordinate");
      std::vector<std::vector<int>> coords;
      for (const auto& c : t) {
        std::vector<int> cv;
        for (const auto& x : c.is_array() ? c : json::array({c}))
          cv.push_back((int)get_i64(x, path + ".torus_elements[][]"));
        coords.push_back(cv);
      }
      d.torus_elements.push_back(coords);
    }
  }
  if (j.contains("unipotent_gens")) {
    for (const auto& g : j["unipotent_gens"]) {
      LphiDescription::UnipotentGen u;
      u.root = ivec_from_json(g.value("root", json::array()), path + ".unipotent_gens[].root");
      if ((int)u.root.size() != rank) fail_field(path + ".unipotent_gens[].root", "wrong rank");
      if (!g.contains("scalar")) fail_field(path + ".unipotent_gens[]", "missing scalar");
      for (const auto& x : g["scalar"])
        u.scalar_coeffs.push_back((int)get_i64(x, path + ".unipotent_gens[].scalar"));
      d.unipotent_gens.push_back(u);
    }
  }
  if (j.contains("infinitesimal")) {
    for (const auto& g : j["infinitesimal"]) {
      LphiDescription::Infinitesimal inf;
      inf.root = ivec_from_json(g.value("root", json::array()), path + ".infinitesimal[].root");
      if ((int)inf.root.size() != rank) fail_field(path + ".infinitesimal[].root", "wrong rank");
      if (!g.contains("bound")) fail_field(path + ".infinitesimal[]", "missing bound");
      inf.bound = get_i64(g["bound"], path + ".infinitesimal[].bound");
      if (inf.bound < 1) fail_field(path + ".infinitesimal[].bound", "bound must be >= 1");
      d.infinitesimal.push_back(inf);
    }
  }
  if (j.contains("explicit_elements")) {
    for (const auto& m : j["explicit_elements"])
      d.explicit_elements.push_back(
          fqmatrix_from_json(*ps.field, m, path + ".explicit_elements[]"));
  }
  return d;
}

// --- Problem parsing -----------------------------------------------------------

inline ProblemSpec parse_problem(const json& input) {
  if (!input.is_object()) fail_field("$", "input must be a JSON object");
  if (!input.contains("schema") || !input["schema"].is_number_integer() ||
      input["schema"].get<i64>() != 1)
    fail_field("schema", "expected the integer 1");
  ProblemSpec ps;
  if (!input.contains("task") || !input["task"].is_string())
    fail_field("task", "expected one of describe|h0|hom|orbits|cone|selftest");
  ps.task = input["task"].get<std::string>();

  if (input.contains("options")) {
    const json& o = input["options"];
    if (!o.is_object()) fail_field("options", "expected an object");
    if (o.contains("variant")) ps.variant = o["variant"].get<std::string>();
    if (o.contains("format")) ps.format = o["format"].get<std::string>();
    if (o.contains("seed")) ps.seed = (std::uint64_t)get_i64(o["seed"], "options.seed");
    if (o.contains("field_degree"))
      ps.field_degree = (int)get_i64(o["field_degree"], "options.field_degree");
  }
  if (ps.format != "json" && ps.format != "table")
    fail_field("options.format", "expected json or table");
  if (ps.task == "selftest") return ps;  // datum-free

  if (!input.contains("datum")) fail_field("datum", "missing");
  const json& dj = input["datum"];
  if (!dj.is_object()) fail_field("datum", "expected an object");
  if (!dj.contains("q")) fail_field("datum.q", "missing");
  i64 q = get_i64(dj["q"], "datum.q");
  std::optional<RootDatum> rd;
  IVec mu;
  if (dj.contains("catalog")) {
    std::string name = dj["catalog"].get<std::string>();
    ps.catalog_name = name;
    ps.sp_n = dj.contains("n") ? (int)get_i64(dj["n"], "datum.n") : 2;
    CatalogEntry ce = [&]() {
      try {
        return catalog_entry(name, q, ps.sp_n);
      } catch (const std::invalid_argument& e) {
        fail_field("datum.catalog", e.what());
      }
    }();
    rd = ce.zd.rd();
    mu = input.contains("mu") ? ivec_from_json(input["mu"], "mu") : ce.zd.mu();
  } else {
    for (const char* k : {"rank", "simple_roots", "simple_coroots", "sigma_star"})
      if (!dj.contains(k)) fail_field(std::string("datum.") + k, "missing");
    int rank = (int)get_i64(dj["rank"], "datum.rank");
    rd = RootDatum(rank, imat_from_json(dj["simple_roots"], "datum.simple_roots"),
                   imat_from_json(dj["simple_coroots"], "datum.simple_coroots"),
                   imat_from_json(dj["sigma_star"], "datum.sigma_star"), q);
    if (!input.contains("mu")) fail_field("mu", "missing (required for explicit data)");
    mu = ivec_from_json(input["mu"], "mu");
  }
  if ((int)mu.size() != rd->rank()) fail_field("mu", "wrong rank");
  ps.zd.emplace(*rd, mu);

  int e = ps.field_degree > 0 ? ps.field_degree : rd->field_k();
  if (ps.field_degree > 0 && ps.field_degree % rd->field_k() != 0)
    fail_field("options.field_degree",
               "must be a multiple of the datum's field degree k (q = p^k)");
  ps.field = std::make_shared<const Fq>(rd->p(), e);

  ps.lphi = parse_lphi(input.contains("lphi") ? input["lphi"] : json("catalog"), ps, "lphi");

  if (ps.task == "h0" || ps.task == "hom") {
    if (!input.contains("representation")) fail_field("representation", "missing");
    ps.rep_expr = input["representation"];
  }
  if (ps.task == "hom") {
    if (!input.contains("representation2")) fail_field("representation2", "missing");
    ps.rep2_expr = input["representation2"];
  }
  if (ps.task == "cone") {
    if (!input.contains("lambda")) fail_field("lambda", "missing");
    ps.lambda = ivec_from_json(input["lambda"], "lambda");
  }
  return ps;
}

// --- Task runners ---------------------------------------------------------------

inline json weight_dims_to_json(const std::map<IVec, int>& wd) {
  json out = json::array();
  for (const auto& [w, d] : wd) out.push_back(json{{"weight", ivec_to_json(w)}, {"dim", d}});
  return out;
}

inline json describe_doc(const ProblemSpec& ps) {
  const ZipDatum& zd = *ps.zd;
  const RootDatum& rd = zd.rd();
  json per_alpha = json::array();
  for (const auto& [ai, pa] : zd.per_alpha_all()) {
    json a_vals = json::array();
    for (int i = 0; i < pa.m; ++i) a_vals.push_back(-1);
    json xi = json::array();
    for (const auto& x : pa.xi) xi.push_back(ivec_to_json(x));
    per_alpha.push_back(json{{"index", ai},
                             {"alpha", ivec_to_json(pa.alpha)},
                             {"m", pa.m},
                             {"delta", qvec_to_json(pa.delta)},
                             {"alpha_delta_pairing", pa.alpha_delta.str()},
                             {"xi", xi},
                             {"r", qvec_to_json(pa.r)},
                             {"a", a_vals},
                             {"kernel_lattice", lattice_to_json(pa.kernel_lattice)},
                             {"lambda", lattice_to_json(pa.lambda)}});
  }
  json simple_roots = json::array(), simple_coroots = json::array();
  for (int i = 0; i < rd.num_simple(); ++i) {
    simple_roots.push_back(ivec_to_json(rd.simple_root(i)));
    simple_coroots.push_back(ivec_to_json(rd.simple_coroot(i)));
  }
  return json{{"schema", 1},
              {"task", "describe"},
              {"datum",
               json{{"p", rd.p()},
                    {"k", rd.field_k()},
                    {"q", rd.q()},
                    {"rank", rd.rank()},
                    {"mu", ivec_to_json(zd.mu())},
                    {"simple_roots", simple_roots},
                    {"simple_coroots", simple_coroots},
                    {"sigma_order", rd.sigma_order()},
                    {"I", zd.I()},
                    {"delta_p", zd.delta_p()},
                    {"p_defined_over_fq", zd.p_defined_over_fq()},
                    {"dim_p", zd.dim_p()},
                    {"dim_g", zd.dim_g()},
                    {"num_positive_roots", (i64)rd.positive_roots().size()},
                    {"frame_z_word", zd.frame_z().word},
                    {"fq_trivial_characters", lattice_to_json(zd.fq_trivial_characters())}}},
              {"per_alpha", per_alpha}};
}

inline json h0_doc(const ProblemSpec& ps) {
  PRep v = parse_rep(ps.rep_expr, ps, "representation");
  if (v.rank != ps.zd->rd().rank())
    fail_field("representation", "expression has lattice rank " + std::to_string(v.rank) +
                                     " but the datum has rank " +
                                     std::to_string(ps.zd->rd().rank()));
  SectionSpace s = [&] {
    if (ps.variant == "general") return h0(v, *ps.zd, ps.lphi);
    if (ps.variant == "fq") return h0_fq(v, *ps.zd, ps.lphi);
    if (ps.variant == "levi") return h0_levi(v, *ps.zd, ps.lphi);
    if (ps.variant == "perf") return h0_perf(v, *ps.zd, ps.lphi);
    fail_field("options.variant", "expected general|fq|levi|perf");
  }();
  return json{{"schema", 1},
              {"task", "h0"},
              {"variant", ps.variant},
              {"field", field_to_json(*ps.field)},
              {"rep_dim", v.dim()},
              {"dim", s.dim()},
              {"weight_dims", weight_dims_to_json(s.weight_dims)},
              {"weights", imat_to_json(IMat(v.weights.begin(), v.weights.end()))},
              {"basis", fqmatrix_to_json(*ps.field, s.space.basis())}};
}

inline json hom_doc(const ProblemSpec& ps) {
  PRep a = parse_rep(ps.rep_expr, ps, "representation");
  PRep b = parse_rep(ps.rep2_expr, ps, "representation2");
  for (const PRep* v : {&a, &b})
    if (v->rank != ps.zd->rd().rank()) fail_field("representation", "rank mismatch with datum");
  SectionSpace s = hom_bundles(a, b, *ps.zd, ps.lphi);
  json maps = json::array();
  for (int i = 0; i < s.dim(); ++i) {
    std::vector<Fq::elem> row(s.space.basis().a.begin() + (size_t)i * a.dim() * b.dim(),
                              s.space.basis().a.begin() + (size_t)(i + 1) * a.dim() * b.dim());
    maps.push_back(fqmatrix_to_json(*ps.field, hom_coords_to_matrix(row, a.dim(), b.dim())));
  }
  return json{{"schema", 1},
              {"task", "hom"},
              {"field", field_to_json(*ps.field)},
              {"domain_dim", a.dim()},
              {"codomain_dim", b.dim()},
              {"dim", s.dim()},
              {"basis_maps", maps}};
}

inline json orbits_doc(const ProblemSpec& ps) {
  OrbitPoset poset = orbit_poset(*ps.zd);
  json orbits = json::array();
  for (size_t i = 0; i < poset.orbits.size(); ++i) {
    const Orbit& o = poset.orbits[i];
    orbits.push_back(json{{"index", (i64)i},
                          {"word", o.w.word},
                          {"length", o.w.length()},
                          {"dim", o.dim},
                          {"codim", o.codim}});
  }
  json edges = json::array();
  for (const auto& [lo, hi] : poset.hasse_edges) edges.push_back(json::array({lo, hi}));
  return json{{"schema", 1},
              {"task", "orbits"},
              {"count", (i64)poset.orbits.size()},
              {"orbits", orbits},
              {"open_index", poset.open_index},
              {"codim_one", poset.codim_one},
              {"hasse_edges", edges},
              {"dim_p", ps.zd->dim_p()},
              {"dim_g", ps.zd->dim_g()}};
}

inline json cone_doc(const ProblemSpec& ps) {
  if (!ps.catalog_name || *ps.catalog_name != "u21")
    fail_field("task", "the cone task is defined for the u21 catalog datum");
  if (ps.lambda.size() != 3) fail_field("lambda", "expected three entries");
  i64 q = ps.zd->rd().q();
  ConeReport r = u21_cone(q, ps.lambda[0], ps.lambda[1], ps.lambda[2]);
  json doc{{"schema", 1},
           {"task", "cone"},
           {"q", q},
           {"lambda", ivec_to_json(ps.lambda)},
           {"member", r.closed_form_member},
           {"witness_n", r.witness_n ? json(*r.witness_n) : json(nullptr)},
           {"witness_i", r.witness_i ? json(*r.witness_i) : json(nullptr)},
           {"closed_form_indices",
            json(u21_h0_closed_form(q, ps.lambda[0], ps.lambda[1], ps.lambda[2]))}};
  if (r.witness_n) {
    // engine cross-check at the witness multiple
    PRep v = u21_vI(ps.field, *r.witness_n * ps.lambda[0], *r.witness_n * ps.lambda[1],
                    *r.witness_n * ps.lambda[2]);
    doc["witness_dim_pipeline"] = h0(v, *ps.zd, ps.lphi).dim();
  }
  return doc;
}

// Runs every task except selftest (which is layered above, with the
// acceptance suite).
inline json run_problem(const json& input) {
  ProblemSpec ps = parse_problem(input);
  if (ps.task == "describe") return describe_doc(ps);
  if (ps.task == "h0") return h0_doc(ps);
  if (ps.task == "hom") return hom_doc(ps);
  if (ps.task == "orbits") return orbits_doc(ps);
  if (ps.task == "cone") return cone_doc(ps);
  if (ps.task == "selftest")
    fail_field("task", "selftest is dispatched by the CLI (no problem document needed)");
  fail_field("task", "expected one of describe|h0|hom|orbits|cone|selftest");
}

// --- Canonical emission ----------------------------------------------------------

inline std::string emit_json(const json& doc) { return doc.dump(2) + "\n"; }

namespace detail {
inline std::string plain(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}
}  // namespace detail

// Aligned human-readable rendering.
inline std::string emit_table(const json& doc) {
  std::ostringstream out;
  std::string task = doc.value("task", "");
  auto kv = [&](const std::string& k, const json& v) {
    out << std::left << std::setw(24) << (k + ":") << detail::plain(v) << "\n";
  };
  if (task == "describe") {
    const json& d = doc["datum"];
    for (const char* k : {"p", "k", "q", "rank", "mu", "I", "delta_p", "p_defined_over_fq",
                          "dim_p", "dim_g", "num_positive_roots", "sigma_order",
                          "frame_z_word"})
      kv(k, d[k]);
    kv("fq_trivial_characters", d["fq_trivial_characters"]["basis"]);
    for (const auto& pa : doc["per_alpha"]) {
      out << "alpha #" << pa["index"] << " = " << pa["alpha"].dump() << "\n";
      for (const char* k : {"m", "delta", "r", "xi"}) out << "  " << std::left << std::setw(22)
                                                          << (std::string(k) + ":")
                                                          << pa[k].dump() << "\n";
      out << "  " << std::left << std::setw(22) << "lambda:"
          << pa["lambda"]["basis"].dump() << "\n";
    }
    return out.str();
  }
  if (task == "h0") {
    for (const char* k : {"variant", "rep_dim", "dim"}) kv(k, doc[k]);
    out << "weight dims:\n";
    for (const auto& row : doc["weight_dims"])
      out << "  " << std::left << std::setw(22) << row["weight"].dump() << row["dim"] << "\n";
    out << "basis rows: " << doc["basis"].dump() << "\n";
    return out.str();
  }
  if (task == "hom") {
    for (const char* k : {"domain_dim", "codomain_dim", "dim"}) kv(k, doc[k]);
    int i = 0;
    for (const auto& m : doc["basis_maps"]) out << "map " << i++ << ": " << m.dump() << "\n";
    return out.str();
  }
  if (task == "orbits") {
    for (const char* k : {"count", "open_index", "codim_one", "dim_p", "dim_g"}) kv(k, doc[k]);
    out << std::left << std::setw(8) << "index" << std::setw(16) << "word" << std::setw(8)
        << "length" << std::setw(8) << "dim" << std::setw(8) << "codim" << "\n";
    for (const auto& o : doc["orbits"])
      out << std::left << std::setw(8) << o["index"].dump() << std::setw(16)
          << o["word"].dump() << std::setw(8) << o["length"].dump() << std::setw(8)
          << o["dim"].dump() << std::setw(8) << o["codim"].dump() << "\n";
    out << "closure edges (lower -> higher): " << doc["hasse_edges"].dump() << "\n";
    return out.str();
  }
  if (task == "cone") {
    for (const char* k : {"q", "lambda", "member"}) kv(k, doc[k]);
    kv("witness_n", doc["witness_n"]);
    kv("witness_i", doc["witness_i"]);
    kv("closed_form_indices", doc["closed_form_indices"]);
    if (doc.contains("witness_dim_pipeline")) kv("witness_dim_pipeline", doc["witness_dim_pipeline"]);
    return out.str();
  }
  if (task == "selftest") {
    for (const auto& c : doc["criteria"])
      out << "criterion " << std::left << std::setw(4) << c["id"].dump()
          << (c["pass"].get<bool>() ? "PASS" : "FAIL") << " — "
          << c["detail"].get<std::string>() << "\n";
    kv("all_pass", doc["all_pass"]);
    return out.str();
  }
  return emit_json(doc);
}

inline std::string emit(const json& doc, const std::string& format) {
  if (format == "table") return emit_table(doc);
  return emit_json(doc);
}

}  // namespace zipsections
