#include "detvar/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "detvar/worked_examples.hpp"

namespace detvar {

namespace {

const char* side_name(Side s) { return s == Side::A ? "A" : "B"; }

Json moduli_json(const Poly& g) {
  if (g.nvars() != 3 || g.total_degree() != 3) return nullptr;
  try {
    const HesseCubic h = hesse_reduce(g);
    const ModuliValue k = moduli_value(h);
    return {{"lambda_cubed", to_json(h.lambda_cubed)},
            {"k", k.value ? to_json(*k.value) : Json("degenerate")},
            {"k_text", k.to_string()}};
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotHesseShape) return nullptr;
    throw;
  }
}

Json side_report(const Variety& v, const WitnessOptions& opt) {
  Json j;
  j["side"] = side_name(v.side);
  j["variables"] = v.m;
  j["minor_size"] = v.n;
  j["ensemble_size"] = v.t;
  std::vector<int> degrees;
  for (const auto& g : v.generators) {
    if (!g.is_zero()) degrees.push_back(g.total_degree());
  }
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
  j["generators"] = {{"count", v.generators.size()}, {"nonzero", v.nonzero_generator_count()}, {"degrees", degrees}};
  const auto g = essential_generator(v);
  j["essential_generator"] = g ? to_json(*g) : Json(nullptr);

  const VarietyVerdict verdict = linearity_decide(v, opt);
  j["verdict"] = to_json(verdict);
  j["witness_check"] = verdict.witness ? to_json(recheck_witness(v, *verdict.witness, opt.tol)) : Json(nullptr);
  j["moduli"] = g ? moduli_json(*g) : Json(nullptr);
  j["entangled"] = verdict.entangled();
  return j;
}

Json parameters_json(const WitnessOptions& opt) {
  return {{"seed", opt.seed},
          {"samples", opt.samples},
          {"probes", opt.probes},
          {"radius", opt.radius},
          {"threshold_factor", opt.threshold_factor},
          {"tolerance", to_json(opt.tol)}};
}

struct Prepared {
  std::vector<Variety> varieties;
  bool ppt = false;
  SpectraReport spectra;
};

Prepared prepare(const StateFile& f, const std::vector<Side>& sides, const Tolerance& tol) {
  Prepared p;
  if (const auto* e = std::get_if<ExactState>(&f.state)) {
    for (Side side : sides) p.varieties.push_back(build_variety(*e, side));
    p.ppt = ppt_check(*e, tol);
    p.spectra = entropy_and_spectra(*e, tol);
  } else {
    ApproxState s = std::get<ApproxState>(f.state);
    if (!s.ensemble) {
      ApproxState e = ensemble_from_density(*s.density, s.m, s.n, tol);
      s.ensemble = std::move(e.ensemble);
    }
    for (Side side : sides) p.varieties.push_back(build_variety(s, side));
    p.ppt = ppt_check(s, tol);
    p.spectra = entropy_and_spectra(s, tol);
  }
  return p;
}

double max_difference(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < std::max(a.size(), b.size()); ++k) {
    const double x = k < a.size() ? a[k] : 0.0;
    const double y = k < b.size() ? b[k] : 0.0;
    d = std::max(d, std::abs(x - y));
  }
  return d;
}

Json spectral_entry(double diff, double tol) { return {{"max_difference", diff}, {"equal", diff <= tol}}; }

std::optional<HesseCubic> side_a_hesse(const StateFile& f) {
  const Variety v = std::visit([](const auto& s) { return build_variety(s); }, f.state);
  const auto g = essential_generator(v);
  if (!g || g->nvars() != 3 || g->total_degree() != 3) return std::nullopt;
  try {
    return hesse_reduce(*g);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotHesseShape) return std::nullopt;
    throw;
  }
}

std::string state_digest(const ExactState& s) { return fnv1a_hex(state_to_json(s).dump()); }

bool proportional(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return a * b.leading_coefficient() == b * a.leading_coefficient();
}

ApproxMatrix gaussian_matrix(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  ApproxMatrix a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      const double re = g(rng);
      a(i, k) = {re, g(rng)};
    }
  }
  return a;
}

}  // namespace

Json analyze_state(const StateFile& f, const std::string& digest, const AnalyzeOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  const Prepared p = prepare(f, opt.sides, opt.witness.tol);

  Json j;
  j["schema"] = "detvar/1";
  j["command"] = "analyze";
  j["input_digest"] = digest;
  j["label"] = f.label();
  j["mode"] = f.exact() ? "exact" : "approx";
  j["m"] = f.m();
  j["n"] = f.n();
  j["ppt"] = p.ppt;

  Json sides = Json::array();
  std::vector<std::string> basis;
  if (!p.ppt) basis.push_back("partial transpose is not positive semidefinite");
  for (const auto& v : p.varieties) {
    Json s = side_report(v, opt.witness);
    if (s["entangled"].get<bool>()) basis.push_back(std::string("non-linearity witness on side ") + side_name(v.side));
    sides.push_back(std::move(s));
  }
  j["varieties"] = std::move(sides);
  j["conclusion"] = basis.empty() ? "inconclusive" : "entangled";
  j["conclusion_basis"] = basis;
  j["spectra"] = to_json(p.spectra);
  j["parameters"] = parameters_json(opt.witness);
  if (opt.timing) {
    j["runtime_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return j;
}

Json analyze_file(const std::string& path, const AnalyzeOptions& opt) {
  std::string bytes;
  const StateFile f = read_state_file(path, &bytes, opt.witness.tol);
  return analyze_state(f, fnv1a_hex(bytes), opt);
}

Json compare_states(const StateFile& a, const StateFile& b, const CompareOptions& opt) {
  if (a.m() != b.m() || a.n() != b.n()) {
    throw Error(ErrorCode::DimensionMismatch, "states live on C^" + std::to_string(a.m()) + " (x) C^" +
                                                  std::to_string(a.n()) + " and C^" + std::to_string(b.m()) +
                                                  " (x) C^" + std::to_string(b.n()));
  }
  const auto spectra = [&](const StateFile& f) {
    return std::visit([&](const auto& s) { return entropy_and_spectra(s, opt.tol); }, f.state);
  };
  const SpectraReport sa = spectra(a);
  const SpectraReport sb = spectra(b);

  Json j;
  j["schema"] = "detvar/1";
  j["command"] = "compare";
  j["labels"] = {a.label(), b.label()};
  j["spectral_tolerance"] = opt.spectral_tol;
  Json sp;
  sp["global"] = spectral_entry(max_difference(sa.global, sb.global), opt.spectral_tol);
  sp["local_a"] = spectral_entry(max_difference(sa.local_a, sb.local_a), opt.spectral_tol);
  sp["local_b"] = spectral_entry(max_difference(sa.local_b, sb.local_b), opt.spectral_tol);
  const std::vector<double> ea(sa.entropies.begin(), sa.entropies.end());
  const std::vector<double> eb(sb.entropies.begin(), sb.entropies.end());
  sp["entropies"] = spectral_entry(max_difference(ea, eb), opt.spectral_tol);
  bool all_equal = true;
  for (const auto& [key, entry] : sp.items()) all_equal = all_equal && entry["equal"].get<bool>();
  sp["all_equal"] = all_equal;
  j["spectra"] = std::move(sp);
  j["first"] = to_json(sa);
  j["second"] = to_json(sb);

  const auto ha = side_a_hesse(a);
  const auto hb = side_a_hesse(b);
  if (ha && hb) {
    j["moduli"] = {{"first", {{"lambda_cubed", to_json(ha->lambda_cubed)}, {"k", moduli_value(*ha).to_string()}}},
                   {"second", {{"lambda_cubed", to_json(hb->lambda_cubed)}, {"k", moduli_value(*hb).to_string()}}}};
    j["lu_comparison"] = to_string(lu_compare(*ha, *hb));
  } else {
    j["moduli"] = nullptr;
    j["lu_comparison"] = to_string(LuComparison::NotDistinguished);
  }
  return j;
}

Json repro_example(int which, std::string_view t, std::size_t m, std::size_t n, const AnalyzeOptions& opt) {
  const ExactState s = build_example(which, m, n, t);
  StateFile f;
  f.state = s;
  Json j;
  j["schema"] = "detvar/1";
  j["command"] = "repro";
  j["example"] = which;
  j["state"] = state_to_json(s);
  j["analysis"] = analyze_state(f, state_digest(s), opt);
  if (which == 2) {
    const CubeParameter param = parse_cube_parameter(t);
    const Poly x = Poly::variable(3, 0), y = Poly::variable(3, 1), z = Poly::variable(3, 2);
    const Poly expected =
        param.t_cubed * x * x * x + y * y * y + z * z * z - (param.t_cubed + ExactComplex(2)) * x * y * z;
    const auto g = essential_generator(build_variety(s));
    Json c;
    c["t"] = param.label;
    c["t_cubed"] = to_json(param.t_cubed);
    c["expected"] = to_json(expected);
    c["generator"] = g ? to_json(*g) : Json(nullptr);
    c["proportional"] = g && proportional(*g, expected);
    if (g && proportional(*g, expected)) c["scalar"] = to_json(g->leading_coefficient() / expected.leading_coefficient());
    const HesseCubic h = cubic_family_hesse(param.t_cubed);
    c["lambda_cubed"] = to_json(h.lambda_cubed);
    c["k"] = moduli_value(h).to_string();
    j["cubic"] = std::move(c);
  }
  if (which == 3) j["details"] = to_json(repro_ppt_example(opt.witness));
  return j;
}

bool PropertySummary::all_pass() const {
  return covariance.passed == covariance.trials && negative_control.passed > 0 && separable.nonlinear == 0 &&
         separable.split_exactly == separable.hypersurface;
}

TrialCount covariance_trials(std::size_t m, std::size_t n, std::size_t trials, std::uint64_t seed, bool unitary) {
  TrialCount c;
  for (std::size_t k = 0; k < trials; ++k) {
    const ApproxState s = random_mixed_state(m, n, n, seed + k);
    LocalUnitaryPair u = random_local_unitary(m, n, seed + 1000 + k);
    if (!unitary) u.ua = gaussian_matrix(m, seed + 2000 + k);
    const CovarianceResult r = verify_lu_covariance(s, u, 5, seed + k);
    ++c.trials;
    // For the negative control a pass means the map was rejected.
    if (r.pass == unitary) ++c.passed;
    c.max_residual = std::max(c.max_residual, r.max_residual);
  }
  return c;
}

SeparableCount separable_trials(std::size_t m, std::size_t n, std::size_t trials, std::uint64_t seed) {
  SeparableCount c;
  for (std::size_t k = 0; k < trials; ++k) {
    const std::size_t terms = n + k % 2;
    const Variety v = build_variety(random_separable_state(m, n, terms, seed + k));
    const VarietyVerdict verdict = linearity_decide(v);
    ++c.trials;
    if (verdict.tag == VerdictTag::NonlinearWitness) ++c.nonlinear;
    if (terms == n) {
      ++c.hypersurface;
      const auto g = essential_generator(v);
      if (g && verdict.factors && verdict.factors->splits() && verdict.factors->product() == *g) ++c.split_exactly;
    }
  }
  return c;
}

PropertySummary property_suite(std::size_t m, std::size_t n, std::size_t trials, std::uint64_t seed) {
  if (m == 0 || n == 0 || m > 4 || n > 4) throw Error(ErrorCode::BadParams, "props needs 1 <= m, n <= 4");
  PropertySummary s;
  s.m = m;
  s.n = n;
  s.seed = seed;
  s.covariance = covariance_trials(m, n, trials, seed);
  s.negative_control = covariance_trials(m, n, std::max<std::size_t>(1, trials / 5), seed, false);
  s.separable = separable_trials(m, n, trials, seed);
  return s;
}

Json to_json(const PropertySummary& s) {
  const auto count = [](const TrialCount& c) {
    return Json{{"trials", c.trials}, {"passed", c.passed}, {"max_residual", c.max_residual}};
  };
  return {{"schema", "detvar/1"},
          {"command", "props"},
          {"m", s.m},
          {"n", s.n},
          {"seed", s.seed},
          {"covariance", count(s.covariance)},
          {"negative_control", count(s.negative_control)},
          {"separable",
           {{"trials", s.separable.trials},
            {"nonlinear_witness", s.separable.nonlinear},
            {"hypersurface", s.separable.hypersurface},
            {"split_exactly", s.separable.split_exactly}}},
          {"all_pass", s.all_pass()}};
}

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::BadParams:
    case ErrorCode::BadDims:
    case ErrorCode::NotAState:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::MissingEnsemble:
      return 2;
    case ErrorCode::SamplingExhausted:
    case ErrorCode::NoConvergence:
      return 4;
    default:
      return 3;
  }
}

Json error_body(const Error& e) {
  return {{"schema", "detvar/1"}, {"error", {{"code", to_string(e.code())}, {"message", e.what()}}}};
}

}  // namespace detvar
