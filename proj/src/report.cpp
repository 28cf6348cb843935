#include "nordgeom/report.hpp"

#include <algorithm>
#include <iomanip>

#include "nordgeom/connection.hpp"
#include "nordgeom/curvature.hpp"
#include "nordgeom/families.hpp"

namespace nordgeom {

using nlohmann::json;

namespace {

json verdict_json(const Verdict& v) {
  json j = {{"pass", v.pass}};
  if (!v.pass) {
    j["witness"] = v.witness;
    if (v.residual) j["residual"] = to_string(*v.residual);
    if (!v.detail.empty()) j["detail"] = v.detail;
  }
  return j;
}

json tensor_json(const Tensor& t) {
  json comps = json::object();
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (!t.flat(k).is_zero()) comps[index_key(t.index_of(k))] = to_string(t.flat(k));
  }
  return {{"rank", t.rank()}, {"components", comps}, {"zero_count", t.size() - t.nonzero_count()}};
}

json vector_json(const ScalarVector& v) {
  json arr = json::array();
  for (const auto& s : v) arr.push_back(to_string(s));
  return arr;
}

json input_json(const RawInput& input) {
  json bindings = json::object();
  for (const auto& [name, value] : input.bindings) bindings[name] = to_string(value);
  return {{"source", input.source},
          {"dimension", input.constants.dim()},
          {"parameters", input.params.names()},
          {"bindings", bindings}};
}

json classes_json(const GeometrySetup& setup, const ClassVerdict& cv) {
  json j = {{"W0", cv.w0},
            {"W1", cv.w1},
            {"W2", cv.w2},
            {"W3", cv.w3},
            {"checks",
             {{"W0", verdict_json(cv.w0_check)},
              {"W1", verdict_json(cv.w1_check)},
              {"W2", verdict_json(cv.w2_check)},
              {"W3", verdict_json(cv.w3_check)},
              {"W2 implies N = 0", verdict_json(cv.integrability)}}}};
  if (setup.dim() == 4) j["w2_conditions"] = verdict_json(w2_condition_check(setup.algebra()));
  return j;
}

bool constant_algebra(const LieAlgebra& algebra) {
  const Tensor& c = algebra.constants().tensor();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (!c.flat(k).is_constant()) return false;
  }
  return true;
}

std::string optional_bool(const json& v) {
  if (v.is_null()) return "deferred";
  return v.get<bool>() ? "true" : "false";
}

void print_table(std::ostream& out, const std::string& title, const json& tensor) {
  out << "\n== " << title << " ==\n";
  const auto& comps = tensor.at("components");
  std::size_t width = 0;
  for (const auto& [key, value] : comps.items()) width = std::max(width, key.size());
  for (const auto& [key, value] : comps.items()) {
    out << "  " << std::left << std::setw(static_cast<int>(width)) << key << "  " << value.get<std::string>()
        << "\n";
  }
  if (comps.empty()) out << "  (all components zero)\n";
  out << "  (" << tensor.at("zero_count").get<std::size_t>() << " zero components suppressed)\n";
}

std::string verdict_text(const json& v) {
  std::string s = v.at("pass").get<bool>() ? "PASS" : "FAIL";
  if (v.contains("witness") && !v.at("witness").empty()) {
    s += " at (";
    bool first = true;
    for (const auto& i : v.at("witness")) {
      s += (first ? "" : ",") + std::to_string(i.get<int>());
      first = false;
    }
    s += ")";
  }
  if (v.contains("residual")) s += " residual " + v.at("residual").get<std::string>();
  if (v.contains("detail")) s += " [" + v.at("detail").get<std::string>() + "]";
  return s;
}

void print_kv(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& rows) {
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  for (const auto& [k, v] : rows) out << "  " << std::left << std::setw(static_cast<int>(width)) << k << "  " << v << "\n";
}

}  // namespace

json validation_json(const std::vector<Verdict>& verdicts) {
  json j = json::object();
  for (const auto& v : verdicts) j[v.check] = verdict_json(v);
  return j;
}

json build_classification(const RawInput& input, const GeometrySetup& setup) {
  const ConnectionTable conn = levi_civita(setup);
  const FTensor f = f_tensor(setup, conn);
  const LieForms forms = lie_forms(setup, f);
  return {{"input", input_json(input)},
          {"validation", validation_json(validate(input))},
          {"classification", classes_json(setup, classify(setup, f, forms))}};
}

json build_report(const RawInput& input, const GeometrySetup& setup) {
  const int n = setup.dim();
  const ConnectionTable conn = levi_civita(setup);
  const FTensor f = f_tensor(setup, conn);
  const LieForms forms = lie_forms(setup, f);
  const ClassVerdict classes = classify(setup, f, forms);
  const Scalar norm = nabla_j_square_norm(setup, f);
  const CurvatureTensor curv = curvature_tensor(setup, conn);
  const RicciData ricci = ricci_and_scalars(setup, curv);
  const TheoremAResult ta = theorem_a_check(setup, curv, ricci);
  const Theorem1Result t1 = theorem1_check(setup, norm, ricci, classes, ta);

  json report;
  report["input"] = input_json(input);
  report["validation"] = validation_json(validate(input));
  report["classification"] = classes_json(setup, classes);
  report["tensors"] = {{"connection", tensor_json(conn.gamma)},
                       {"F", tensor_json(f.f)},
                       {"N", tensor_json(nijenhuis(setup))},
                       {"R", tensor_json(curv.r)},
                       {"rho", tensor_json(ricci.rho)}};
  if (n >= 4) report["tensors"]["weyl"] = tensor_json(weyl_tensor(setup, curv, ricci));
  report["theta"] = vector_json(forms.theta);
  report["theta_star"] = vector_json(forms.theta_star);
  report["scalars"] = {{"nabla_j_norm", to_string(norm)},
                       {"tau", to_string(ricci.tau)},
                       {"tau_star", to_string(ricci.tau_star)},
                       {"tau_star_star", to_string(ricci.tau_star_star)},
                       {"H", to_string(ta.h)}};

  json planes = json::array();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const ScalarVector x = basis_vector(setup.params(), n, i);
      const ScalarVector y = basis_vector(setup.params(), n, j);
      json p = {{"plane", index_key(std::vector<int>{i, j})}};
      try {
        const auto sec = sectional_curvature(setup, curv, x, y);
        p["type"] = to_string(plane_type(setup, x, y));
        p["numerator"] = to_string(sec.numerator);
        p["denominator"] = to_string(sec.denominator);
        p["value"] = sec.value ? json(to_string(*sec.value)) : json(nullptr);
      } catch (const DegeneratePlaneError&) {
        p["type"] = "degenerate";
      }
      planes.push_back(std::move(p));
    }
  }
  report["sectional"] = planes;
  report["theorem_a"] = {{"constant_holomorphic", verdict_json(ta.verdict)}, {"H", to_string(ta.h)}};

  json t1j = {{"status", to_string(t1.status)}, {"constant_holomorphic", t1.constant_holomorphic}};
  for (const auto* v : {&t1.w2_norm_vs_h, &t1.w2_norm_vs_tau, &t1.w3_norm_vs_h, &t1.w3_norm_vs_tau}) {
    if (*v) t1j["checks"][(*v)->check] = verdict_json(**v);
  }
  report["theorem1"] = t1j;

  const Theorem4Report t4 = theorem4_battery(setup);
  json conds = json::array();
  for (const auto& c : t4.conditions) {
    json cj = {{"name", c.name}, {"holds", c.holds ? json(*c.holds) : json(nullptr)}};
    if (!c.note.empty()) cj["note"] = c.note;
    conds.push_back(std::move(cj));
  }
  report["theorem4"] = {{"family", t4.family},
                        {"symbolic", t4.symbolic},
                        {"conditions", conds},
                        {"equivalent", t4.equivalent ? json(*t4.equivalent) : json(nullptr)}};
  if (constant_algebra(setup.algebra())) report["derived_series"] = derived_series_dimensions(setup.algebra());
  return report;
}

void render_text(const json& report, std::ostream& out) {
  const auto& in = report.at("input");
  out << "== Input ==\n";
  std::string params;
  for (const auto& p : in.at("parameters")) params += (params.empty() ? "" : ", ") + p.get<std::string>();
  std::string bindings;
  for (const auto& [k, v] : in.at("bindings").items()) {
    bindings += (bindings.empty() ? "" : ", ") + k + "=" + v.get<std::string>();
  }
  print_kv(out, {{"source", in.at("source").get<std::string>()},
                 {"dimension", std::to_string(in.at("dimension").get<int>())},
                 {"parameters", params.empty() ? "(none)" : params},
                 {"bindings", bindings.empty() ? "(none, symbolic)" : bindings}});

  out << "\n== Validation ==\n";
  std::vector<std::pair<std::string, std::string>> rows;
  for (const auto& [k, v] : report.at("validation").items()) rows.emplace_back(k, verdict_text(v));
  print_kv(out, rows);

  if (report.contains("classification")) {
    const auto& c = report.at("classification");
    out << "\n== Classification ==\n";
    rows.clear();
    for (const char* cls : {"W0", "W1", "W2", "W3"}) rows.emplace_back(cls, c.at(cls).get<bool>() ? "yes" : "no");
    for (const auto& [k, v] : c.at("checks").items()) rows.emplace_back("check " + k, verdict_text(v));
    if (c.contains("w2_conditions")) rows.emplace_back("W2 structure-constant conditions", verdict_text(c.at("w2_conditions")));
    print_kv(out, rows);
  }

  if (!report.contains("tensors")) return;
  const auto& t = report.at("tensors");
  print_table(out, "Levi-Civita connection: nabla_{X_i} X_j = gamma(i,j,k) X_k", t.at("connection"));
  print_table(out, "F(X_i, X_j, X_k)", t.at("F"));
  print_table(out, "Nijenhuis tensor: N(X_i, X_j) = N(i,j,k) X_k", t.at("N"));

  out << "\n== Lie forms ==\n";
  rows.clear();
  for (std::size_t i = 0; i < report.at("theta").size(); ++i) {
    rows.emplace_back("theta_" + std::to_string(i + 1), report.at("theta")[i].get<std::string>());
  }
  for (std::size_t i = 0; i < report.at("theta_star").size(); ++i) {
    rows.emplace_back("theta*_" + std::to_string(i + 1), report.at("theta_star")[i].get<std::string>());
  }
  print_kv(out, rows);

  print_table(out, "Curvature tensor R(X_i, X_j, X_k, X_l)", t.at("R"));
  print_table(out, "Ricci tensor rho(X_i, X_j)", t.at("rho"));

  out << "\n== Scalar invariants ==\n";
  const auto& s = report.at("scalars");
  print_kv(out, {{"|nabla J|^2", s.at("nabla_j_norm").get<std::string>()},
                 {"tau", s.at("tau").get<std::string>()},
                 {"tau*", s.at("tau_star").get<std::string>()},
                 {"tau**", s.at("tau_star_star").get<std::string>()},
                 {"H = (tau + tau**)/(4n^2)", s.at("H").get<std::string>()}});

  out << "\n== Sectional curvatures of coordinate planes ==\n";
  rows.clear();
  for (const auto& p : report.at("sectional")) {
    std::string value;
    if (p.at("type") == "degenerate") {
      value = "degenerate plane";
    } else {
      std::string type = p.at("type").get<std::string>();
      type.resize(std::max<std::size_t>(type.size(), 12), ' ');
      value = type + "  k = ";
      value += p.at("value").is_null() ? "(" + p.at("numerator").get<std::string>() + ") / (" +
                                             p.at("denominator").get<std::string>() + ")"
                                       : p.at("value").get<std::string>();
    }
    rows.emplace_back("alpha(" + p.at("plane").get<std::string>() + ")", value);
  }
  print_kv(out, rows);

  out << "\n== Holomorphic sectional curvature ==\n";
  print_kv(out, {{"constant (pointwise = global for left-invariant data)",
                  verdict_text(report.at("theorem_a").at("constant_holomorphic"))},
                 {"H", report.at("theorem_a").at("H").get<std::string>()}});

  if (t.contains("weyl")) print_table(out, "Weyl tensor W(X_i, X_j, X_k, X_l)", t.at("weyl"));

  out << "\n== |nabla J|^2 versus H ==\n";
  rows = {{"status", report.at("theorem1").at("status").get<std::string>()}};
  if (report.at("theorem1").contains("checks")) {
    for (const auto& [k, v] : report.at("theorem1").at("checks").items()) rows.emplace_back(k, verdict_text(v));
  }
  print_kv(out, rows);

  const auto& t4 = report.at("theorem4");
  out << "\n== Isotropic Kaehler conditions ==\n";
  rows = {{"two-parameter family", t4.at("family").get<bool>() ? "yes" : "no"}};
  for (const auto& c : t4.at("conditions")) {
    std::string v = optional_bool(c.at("holds"));
    if (c.contains("note")) v += "  (" + c.at("note").get<std::string>() + ")";
    rows.emplace_back(c.at("name").get<std::string>(), v);
  }
  rows.emplace_back("all equivalent", optional_bool(t4.at("equivalent")));
  print_kv(out, rows);

  if (report.contains("derived_series")) {
    std::string dims;
    for (const auto& d : report.at("derived_series")) dims += (dims.empty() ? "" : " > ") + std::to_string(d.get<int>());
    out << "\n== Derived series dimensions ==\n  " << dims << "\n";
  }
}

namespace {

PaperCheck theorem_check(const std::string& name) { return PaperCheck{"theorem", name, true, {}}; }

void expect(PaperCheck& check, bool ok, const std::string& what) {
  if (!ok) {
    check.pass = false;
    check.details.push_back(what);
  }
}

}  // namespace

std::vector<PaperCheck> verify_paper(const std::filesystem::path& golden_dir) {
  std::vector<PaperCheck> checks;
  const PaperFamilyInstance family = build_paper_family();
  const GeometrySetup& setup = family.setup;
  const ParamList& params = setup.params();

  const auto tables = load_golden_tables(golden_dir);
  for (const auto& r : verify_golden_tables(family, tables)) {
    PaperCheck c{"table", r.name, r.pass, {}};
    for (const auto& d : r.diffs) c.details.push_back(d.key + ": expected " + d.expected + ", computed " + d.computed);
    checks.push_back(std::move(c));
  }

  const ConnectionTable conn = levi_civita(setup);
  const FTensor f = f_tensor(setup, conn);
  const LieForms forms = lie_forms(setup, f);
  const ClassVerdict classes = classify(setup, f, forms);
  const Scalar norm = nabla_j_square_norm(setup, f);
  const CurvatureTensor curv = curvature_tensor(setup, conn);
  const RicciData ricci = ricci_and_scalars(setup, curv);
  const TheoremAResult ta = theorem_a_check(setup, curv, ricci);
  const Scalar expected_h = parse_scalar("mu^2 - lambda^2", params);

  PaperCheck a = theorem_check("holomorphic identity: J-symmetrised R = 8H(pi1 + pi2), H = (tau + tau**)/16");
  expect(a, ta.verdict.pass, ta.verdict.describe());
  expect(a, ta.h == expected_h, "H = " + to_string(ta.h));
  checks.push_back(std::move(a));

  PaperCheck t1 = theorem_check("norm relation: |nabla J|^2 = 8 n^2 H on W2, H = (tau + tau**)/(4 n^2)");
  const Theorem1Result r1 = theorem1_check(setup, norm, ricci, classes, ta);
  expect(t1, r1.status == CheckStatus::Pass, "status " + to_string(r1.status));
  expect(t1, r1.w2_norm_vs_tau.has_value() && r1.w2_norm_vs_tau->pass, "|nabla J|^2 != 2 (tau + tau**)");
  checks.push_back(std::move(t1));

  PaperCheck t2 = theorem_check("W2 criterion: W2 iff the structure-constant conditions");
  expect(t2, w2_condition_check(setup.algebra()).pass && classes.w2, "family is not flagged W2");
  expect(t2, classes.integrability.pass, classes.integrability.describe());
  int sampled = 0;
  for (std::uint64_t seed = 0; sampled < 100 && seed < 1000; ++seed) {
    auto algebra = random_valid_algebra(seed, 4, 2);
    if (!algebra) continue;
    ++sampled;
    const GeometrySetup s(*algebra, paper_frame());
    const ConnectionTable sc = levi_civita(s);
    const FTensor sf = f_tensor(s, sc);
    const bool flagged = classify(s, sf, lie_forms(s, sf)).w2;
    expect(t2, flagged == w2_condition_check(*algebra).pass, "disagreement for seed " + std::to_string(seed));
  }
  checks.push_back(std::move(t2));

  PaperCheck t3 = theorem_check("constant holomorphic sectional curvature of the family");
  expect(t3, ta.verdict.pass, ta.verdict.describe());
  for (const auto& [i, j] : {std::pair{0, 2}, std::pair{1, 3}}) {
    const ScalarVector x = basis_vector(params, 4, i);
    const ScalarVector y = basis_vector(params, 4, j);
    const auto sec = sectional_curvature(setup, curv, x, y);
    const std::string plane = index_key(std::vector<int>{i, j});
    expect(t3, plane_type(setup, x, y) == PlaneType::Holomorphic, "alpha(" + plane + ") is not holomorphic");
    expect(t3, sec.value && *sec.value == ta.h, "k(alpha(" + plane + ")) != H");
  }
  // Holomorphic planes {x, Jx} for x with 0/1 coordinates.
  bool plane_mismatch = false;
  for (int bits = 1; bits < 16 && !plane_mismatch; ++bits) {
    ScalarVector x;
    for (int a = 0; a < 4; ++a) x.push_back(Scalar(params, Rational((bits >> a) & 1)));
    try {
      const auto sec = sectional_curvature(setup, curv, x, apply_j(setup.frame(), x));
      std::string label;
      for (const auto& c : x) label += (label.empty() ? "" : ",") + to_string(c);
      plane_mismatch = !(sec.value && *sec.value == ta.h);
      expect(t3, !plane_mismatch,
             "holomorphic plane through x = (" + label + ") has k = " + (sec.value ? to_string(*sec.value) : "?") +
                 ", H = " + to_string(ta.h));
    } catch (const DegeneratePlaneError&) {
    }
  }
  checks.push_back(std::move(t3));

  PaperCheck t4 = theorem_check("isotropic Kaehler: six conditions are equivalent");
  const Theorem4Report symbolic = theorem4_battery(setup);
  expect(t4, symbolic.family && symbolic.equivalent.value_or(false), "symbolic battery not equivalent");
  for (const auto& [l, m, all] : {std::tuple{1, 1, true}, std::tuple{-1, 1, true}, std::tuple{1, 2, false},
                                  std::tuple{0, 0, true}, std::tuple{3, -2, false}}) {
    const Theorem4Report num = theorem4_battery(build_paper_family(Assignment{{"lambda", l}, {"mu", m}}).setup);
    bool match = num.equivalent.value_or(false);
    for (const auto& c : num.conditions) match = match && c.holds == all;
    expect(t4, match, "battery at lambda=" + std::to_string(l) + ", mu=" + std::to_string(m));
  }
  checks.push_back(std::move(t4));
  return checks;
}

}  // namespace nordgeom
