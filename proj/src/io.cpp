#include "detvar/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace detvar {

namespace {

[[noreturn]] void bad_field(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::ParseError, "field '" + field + "': " + what);
}

Rational rational_from_json(const Json& j, const std::string& field, bool& approx) {
  if (j.is_number()) {
    const double x = j.get<double>();
    if (!std::isfinite(x)) bad_field(field, "not a finite number");
    approx = true;
    return exact_from(x);
  }
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      bad_field(field, std::string(e.what()).substr(std::string(to_string(e.code())).size() + 2));
    }
  }
  bad_field(field, "expected a number or a rational string");
}

ExactComplex scalar_from_json(const Json& j, const std::string& field, bool& approx) {
  if (!j.is_object()) return rational_from_json(j, field, approx);
  if (!j.contains("re")) bad_field(field, "missing 're'");
  for (const auto& [key, value] : j.items()) {
    if (key != "re" && key != "im") bad_field(field, "unexpected key '" + key + "'");
  }
  Rational re = rational_from_json(j.at("re"), field + ".re", approx);
  Rational im = j.contains("im") ? rational_from_json(j.at("im"), field + ".im", approx) : Rational(0);
  return {std::move(re), std::move(im)};
}

std::size_t dim_from_json(const Json& j, const char* key) {
  if (!j.contains(key)) bad_field(key, "missing");
  const Json& v = j.at(key);
  if (!v.is_number_unsigned() || v.get<std::size_t>() == 0) bad_field(key, "expected a positive integer");
  return v.get<std::size_t>();
}

std::string at(const std::string& field, std::size_t idx) { return field + "[" + std::to_string(idx) + "]"; }

ExactVector vector_from_json(const Json& j, std::size_t dim, const std::string& field, bool& approx) {
  if (!j.is_array()) bad_field(field, "expected an array");
  if (j.size() != dim) bad_field(field, "expected " + std::to_string(dim) + " entries, got " + std::to_string(j.size()));
  ExactVector v(static_cast<Eigen::Index>(dim));
  for (std::size_t k = 0; k < dim; ++k) v(static_cast<Eigen::Index>(k)) = scalar_from_json(j[k], at(field, k), approx);
  return v;
}

Json rational_json(const Rational& x) { return to_string(x); }

Json approx_vector_json(std::span<const ApproxComplex> v) {
  Json out = Json::array();
  for (const auto& z : v) out.push_back(to_json(z));
  return out;
}

std::vector<ApproxComplex> approx_vector_from_json(const Json& j, const std::string& field) {
  if (!j.is_array()) bad_field(field, "expected an array");
  std::vector<ApproxComplex> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const Json& z = j[k];
    if (!z.is_object() || !z.contains("re") || !z.contains("im") || !z["re"].is_number() || !z["im"].is_number())
      bad_field(at(field, k), "expected {\"re\": number, \"im\": number}");
    out.emplace_back(z["re"].get<double>(), z["im"].get<double>());
  }
  return out;
}

}  // namespace

std::size_t StateFile::m() const {
  return std::visit([](const auto& s) { return s.m; }, state);
}

std::size_t StateFile::n() const {
  return std::visit([](const auto& s) { return s.n; }, state);
}

const std::string& StateFile::label() const {
  return std::visit([](const auto& s) -> const std::string& { return s.label; }, state);
}

StateFile parse_state(const Json& j, const Tolerance& tol) {
  if (!j.is_object()) bad_field("<root>", "expected an object");
  ExactState s;
  s.m = dim_from_json(j, "m");
  s.n = dim_from_json(j, "n");
  const std::size_t dim = s.m * s.n;
  if (j.contains("label")) {
    if (!j["label"].is_string()) bad_field("label", "expected a string");
    s.label = j["label"].get<std::string>();
  }
  const bool has_ensemble = j.contains("ensemble");
  const bool has_density = j.contains("density");
  if (has_ensemble == has_density) bad_field("ensemble", "exactly one of 'ensemble' and 'density' is required");

  bool approx = false;
  if (has_ensemble) {
    const Json& e = j["ensemble"];
    if (!e.is_array() || e.empty()) bad_field("ensemble", "expected a non-empty array");
    s.ensemble.emplace();
    for (std::size_t l = 0; l < e.size(); ++l) {
      const std::string field = at("ensemble", l);
      if (!e[l].is_object()) bad_field(field, "expected an object");
      if (!e[l].contains("weight")) bad_field(field + ".weight", "missing");
      if (!e[l].contains("vector")) bad_field(field + ".vector", "missing");
      const ExactComplex w = scalar_from_json(e[l]["weight"], field + ".weight", approx);
      if (!w.is_real()) bad_field(field + ".weight", "weight must be real");
      s.ensemble->push_back({w.real(), vector_from_json(e[l]["vector"], dim, field + ".vector", approx)});
    }
  } else {
    const Json& d = j["density"];
    if (!d.is_array() || d.size() != dim) bad_field("density", "expected " + std::to_string(dim) + " rows");
    ExactMatrix rho(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t r = 0; r < dim; ++r)
      rho.row(static_cast<Eigen::Index>(r)) = vector_from_json(d[r], dim, at("density", r), approx).transpose();
    s.density = std::move(rho);
    approx = true;
  }

  StateFile out;
  if (approx) {
    ApproxState a = to_approx(s);
    validate(a, tol);
    out.state = std::move(a);
  } else {
    validate(s, tol);
    out.state = std::move(s);
  }
  return out;
}

StateFile parse_state_text(const std::string& text, const Tolerance& tol) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
  return parse_state(j, tol);
}

StateFile read_state_file(const std::string& path, std::string* bytes, const Tolerance& tol) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  auto out = parse_state_text(text, tol);
  if (bytes) *bytes = std::move(text);
  return out;
}

Json state_to_json(const ExactState& s) {
  Json j;
  j["m"] = s.m;
  j["n"] = s.n;
  if (!s.label.empty()) j["label"] = s.label;
  if (s.ensemble) {
    Json e = Json::array();
    for (const auto& term : *s.ensemble) {
      Json v = Json::array();
      for (Eigen::Index k = 0; k < term.vector.size(); ++k) v.push_back(to_json(term.vector(k)));
      e.push_back({{"weight", rational_json(term.weight)}, {"vector", std::move(v)}});
    }
    j["ensemble"] = std::move(e);
  } else if (s.density) {
    Json d = Json::array();
    for (Eigen::Index r = 0; r < s.density->rows(); ++r) {
      Json row = Json::array();
      for (Eigen::Index c = 0; c < s.density->cols(); ++c) row.push_back(to_json((*s.density)(r, c)));
      d.push_back(std::move(row));
    }
    j["density"] = std::move(d);
  }
  return j;
}

Json state_to_json(const ApproxState& s) {
  Json j;
  j["m"] = s.m;
  j["n"] = s.n;
  if (!s.label.empty()) j["label"] = s.label;
  if (s.ensemble) {
    Json e = Json::array();
    for (const auto& term : *s.ensemble) {
      e.push_back({{"weight", term.weight},
                   {"vector", approx_vector_json({term.vector.data(), static_cast<std::size_t>(term.vector.size())})}});
    }
    j["ensemble"] = std::move(e);
  } else if (s.density) {
    Json d = Json::array();
    for (Eigen::Index r = 0; r < s.density->rows(); ++r) {
      const ApproxVector row = s.density->row(r).transpose();
      d.push_back(approx_vector_json({row.data(), static_cast<std::size_t>(row.size())}));
    }
    j["density"] = std::move(d);
  }
  return j;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

Json to_json(const ExactComplex& z) { return {{"re", rational_json(z.real())}, {"im", rational_json(z.imag())}}; }

Json to_json(const ApproxComplex& z) { return {{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const Poly& p, std::span<const std::string> names) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({{"exponents", e}, {"coefficient", to_json(c)}});
  return {{"text", p.to_string(names)}, {"nvars", p.nvars()}, {"terms", std::move(terms)}};
}

Json to_json(const LinearForm& f, std::span<const std::string> names) {
  Json c = Json::array();
  for (const auto& x : f.coefficients) c.push_back(to_json(x));
  return {{"text", f.to_string(names)}, {"coefficients", std::move(c)}, {"constant", to_json(f.constant)}};
}

Json to_json(const ApproxLinearForm& f) {
  return {{"coefficients", approx_vector_json(f.coefficients)}, {"constant", to_json(f.constant)}};
}

Json to_json(const FactorList& f) {
  Json factors = Json::array();
  for (const auto& l : f.factors) factors.push_back(to_json(l));
  Json cert = Json::array();
  for (const auto& e : f.certificate) {
    Json coeffs = Json::array();
    for (const auto& c : e.polynomial.coefficients()) coeffs.push_back(to_json(c));
    Json roots = Json::array();
    for (const auto& r : e.roots) roots.push_back(to_json(r));
    cert.push_back({{"branch", e.branch}, {"coefficients_ascending", std::move(coeffs)}, {"rational_roots", std::move(roots)},
                    {"complete", e.complete}});
  }
  Json approx = Json::array();
  for (const auto& l : f.approx_split) approx.push_back(to_json(l));
  return {{"unit", to_json(f.unit)},
          {"factors", std::move(factors)},
          {"residual", to_json(f.residual)},
          {"residual_certified", f.residual_certified},
          {"certificate", std::move(cert)},
          {"approx_split", std::move(approx)}};
}

Json to_json(const Witness& w) {
  Json tangent = Json::array();
  for (const auto& f : w.tangent) tangent.push_back(to_json(f));
  return {{"target", w.target},
          {"point", approx_vector_json(w.point)},
          {"tangent", std::move(tangent)},
          {"probe", approx_vector_json(w.probe)},
          {"residual", w.residual}};
}

Json to_json(const WitnessCheck& c) {
  return {{"valid", c.valid},
          {"point_residual", c.point_residual},
          {"probe_residual", c.probe_residual},
          {"tangent_defect", c.tangent_defect}};
}

Json to_json(const VarietyVerdict& v) {
  Json j;
  j["tag"] = to_string(v.tag);
  j["method"] = v.method;
  j["reason"] = v.reason;
  j["points_examined"] = v.points_examined;
  Json forms = Json::array();
  for (const auto& f : v.forms) forms.push_back(to_json(f));
  j["forms"] = std::move(forms);
  Json approx = Json::array();
  for (const auto& f : v.approx_forms) approx.push_back(to_json(f));
  j["approx_forms"] = std::move(approx);
  j["factors"] = v.factors ? to_json(*v.factors) : Json(nullptr);
  j["witness"] = v.witness ? to_json(*v.witness) : Json(nullptr);
  return j;
}

Json to_json(const SpectraReport& s) {
  return {{"global", s.global},
          {"local_a", s.local_a},
          {"local_b", s.local_b},
          {"entropies", {{"global", s.entropies[0]}, {"local_a", s.entropies[1]}, {"local_b", s.entropies[2]}}}};
}

Json to_json(const Tolerance& t) { return {{"abs_eps", t.abs_eps}, {"rel_eps", t.rel_eps}, {"eig_cutoff", t.eig_cutoff}}; }

Json to_json(const PolyComparison& c, std::span<const std::string> names) {
  return {{"label", c.label},
          {"equal", c.equal},
          {"printed", to_json(c.printed, names)},
          {"computed", to_json(c.computed, names)},
          {"computed_minus_printed", to_json(c.difference, names)}};
}

Json to_json(const PptExampleReport& r) {
  static const std::vector<std::string> proj{"r1", "r2", "r3", "r4"};
  static const std::vector<std::string> chart{"s1", "s2", "s3"};
  const auto matrix = [](const PolyMatrix& f, std::span<const std::string> names) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < f.rows(); ++i) {
      Json row = Json::array();
      for (Eigen::Index k = 0; k < f.cols(); ++k) row.push_back(f(i, k).to_string(names));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  Json planes = Json::array();
  for (const auto& f : r.common_planes) planes.push_back(to_json(f, proj));
  Json point = Json::array();
  for (const auto& c : r.component_point) point.push_back(to_json(c));
  return {
      {"chart", "s1 = r2/r1, s2 = r3/r1, s3 = (r4 + r3 + 2 r1)/r1"},
      {"partial_transpose_invariant", r.partial_transpose_invariant},
      {"pencil", matrix(r.pencil, proj)},
      {"pencil_mismatches", r.pencil_mismatches},
      {"chart_pencil", matrix(r.chart_pencil, chart)},
      {"chart_pencil_mismatches", r.chart_pencil_mismatches},
      {"f1", to_json(r.f1, chart)},
      {"f2", to_json(r.f2, chart)},
      {"f2_linear_factor", to_json(r.f2_linear_factor, chart)},
      {"f2_divisible", r.f2_cofactor.has_value()},
      {"f2_cofactor", r.f2_cofactor ? to_json(*r.f2_cofactor, chart) : Json(nullptr)},
      {"f2_vs_printed", to_json(r.f2_vs_printed, chart)},
      {"f2_cofactor_vs_printed", to_json(r.f2_cofactor_vs_printed, chart)},
      {"g", to_json(r.g, chart)},
      {"g_sign", r.g_sign},
      {"g_vs_printed", to_json(r.g_vs_printed, chart)},
      {"g_factors", to_json(r.g_factors)},
      {"g_has_no_linear_factor", r.g_has_no_linear_factor},
      {"common_planes", std::move(planes)},
      {"chart_plane", to_json(r.chart_plane, proj)},
      {"chart_plane_in_variety", r.chart_plane_in_variety},
      {"component_point", std::move(point)},
      {"component_point_in_variety", r.component_point_in_variety},
      {"component_verdict", to_json(r.component_verdict)},
      {"steps_hold", r.steps_hold()},
  };
}

ExactComplex exact_complex_from_json(const Json& j, const std::string& field) {
  bool approx = false;
  auto z = scalar_from_json(j, field, approx);
  if (approx) bad_field(field, "expected exact rational strings");
  return z;
}

Poly poly_from_json(const Json& j, const std::string& field) {
  if (!j.is_object() || !j.contains("nvars") || !j.contains("terms") || !j["terms"].is_array())
    bad_field(field, "expected {\"nvars\", \"terms\"}");
  const auto nvars = j["nvars"].get<std::size_t>();
  Poly p = Poly::zero(nvars);
  for (std::size_t k = 0; k < j["terms"].size(); ++k) {
    const Json& t = j["terms"][k];
    const std::string f = at(field + ".terms", k);
    if (!t.contains("exponents") || !t["exponents"].is_array()) bad_field(f, "missing exponents");
    auto e = t["exponents"].get<Exponents>();
    if (e.size() != nvars) bad_field(f, "exponent length differs from nvars");
    p.add_term(e, exact_complex_from_json(t.at("coefficient"), f + ".coefficient"));
  }
  return p;
}

Witness witness_from_json(const Json& j) {
  if (!j.is_object()) bad_field("witness", "expected an object");
  for (const char* key : {"target", "point", "tangent", "probe", "residual"}) {
    if (!j.contains(key)) bad_field(std::string("witness.") + key, "missing");
  }
  Witness w;
  w.target = j["target"].get<std::string>();
  w.point = approx_vector_from_json(j["point"], "witness.point");
  w.probe = approx_vector_from_json(j["probe"], "witness.probe");
  for (std::size_t k = 0; k < j["tangent"].size(); ++k) {
    const Json& f = j["tangent"][k];
    const std::string field = at("witness.tangent", k);
    ApproxLinearForm form;
    form.coefficients = approx_vector_from_json(f.at("coefficients"), field + ".coefficients");
    const auto c = approx_vector_from_json(Json::array({f.at("constant")}), field + ".constant");
    form.constant = c.front();
    w.tangent.push_back(std::move(form));
  }
  if (!j["residual"].is_number()) bad_field("witness.residual", "expected a number");
  w.residual = j["residual"].get<double>();
  return w;
}

}  // namespace detvar
