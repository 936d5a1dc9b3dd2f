#include <algorithm>
#include <cmath>
#include <random>

#include "detvar/variety.hpp"
#include "sampling.hpp"

namespace detvar {

namespace {

VarietyVerdict verdict(VerdictTag tag, std::string method, std::string reason) {
  VarietyVerdict v;
  v.tag = tag;
  v.method = std::move(method);
  v.reason = std::move(reason);
  return v;
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t k) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (k + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

VarietyVerdict witness_verdict(const Variety& v, std::span<const Poly> equations, std::size_t codim,
                               const std::string& target, const WitnessOptions& opt) {
  std::size_t examined = 0;
  auto w = witness_on_component(v, equations, codim, target, opt, &examined);
  VarietyVerdict out;
  out.points_examined = examined;
  out.method = "tangent probe";
  if (w) {
    out.tag = VerdictTag::NonlinearWitness;
    out.reason = "tangent direction at a smooth point leaves the variety";
    out.witness = std::move(w);
  } else if (examined == 0) {
    out.tag = VerdictTag::Inconclusive;
    out.reason = "no smooth point with a tangent direction was found on " + target;
  } else {
    out.tag = VerdictTag::Inconclusive;
    out.reason = "no tangent probe left the variety at " + std::to_string(examined) + " smooth points of " + target;
  }
  return out;
}

VarietyVerdict decide_hypersurface(const Variety& v, const Poly& g, const WitnessOptions& opt) {
  const std::vector<Poly> whole{g};
  if (v.m > 3 || g.total_degree() > 6) return witness_verdict(v, whole, 1, "determinant", opt);

  FactorList f = linear_factorization(g, opt.tol);
  if (f.splits()) {
    auto out = verdict(VerdictTag::LinearUnion, "exact factorization", "determinant is a product of linear forms");
    out.forms = f.factors;
    out.factors = std::move(f);
    return out;
  }
  if (!f.approx_split.empty()) {
    auto out = verdict(VerdictTag::LinearUnion, "numeric factorization",
                       "residual factor splits into linear forms over C");
    out.forms = f.factors;
    out.approx_forms = f.approx_split;
    out.factors = std::move(f);
    return out;
  }
  const std::vector<Poly> residual{f.residual};
  auto out = witness_verdict(v, residual, 1, "residual factor", opt);
  out.forms = f.factors;
  out.factors = std::move(f);
  return out;
}

VarietyVerdict decide_general(const Variety& v, const WitnessOptions& opt) {
  const auto gens = detail::nonzero_generators(v);
  if (v.m == 2) {
    if (certify_empty(gens, v.m)) {
      return verdict(VerdictTag::Empty, "Macaulay matrix", "every monomial of some degree lies in the ideal of minors");
    }
    return verdict(VerdictTag::LinearUnion, "dimension", "a proper subset of the projective line is finite");
  }
  auto split = detail::split_common_hyperplanes(gens, v.m, opt.seed, opt.tol);
  const auto with_forms = [&](VarietyVerdict out) {
    out.forms = split.forms;
    return out;
  };
  if (split.nonlinear_common_factor) {
    return with_forms(witness_verdict(v, split.residual, 1, "common factor of the minors", opt));
  }
  const bool constant_residual = split.residual.front().total_degree() == 0;
  if (!constant_residual && v.m == 3) {
    // No common factor is left, so the rest of V is a finite set of points.
    if (split.forms.empty() && certify_empty(split.residual, v.m)) {
      return verdict(VerdictTag::Empty, "Macaulay matrix", "every monomial of some degree lies in the ideal of minors");
    }
    return with_forms(verdict(VerdictTag::LinearUnion, "hyperplane split",
                              "common hyperplanes of the minors plus a finite set of points"));
  }
  if (constant_residual) {
    return with_forms(verdict(VerdictTag::LinearUnion, "hyperplane split",
                              "every minor is a product of the listed hyperplanes"));
  }
  auto out = witness_verdict(v, split.residual, 2, split.forms.empty() ? "minors" : "residual minors", opt);
  if (out.tag == VerdictTag::Inconclusive && out.points_examined == 0 && certify_empty(split.residual, v.m)) {
    if (split.forms.empty()) {
      return verdict(VerdictTag::Empty, "Macaulay matrix", "every monomial of some degree lies in the ideal of minors");
    }
    return with_forms(verdict(VerdictTag::LinearUnion, "hyperplane split",
                              "common hyperplanes of the minors; the residual minors have no common zero"));
  }
  return with_forms(std::move(out));
}

}  // namespace

std::optional<Witness> witness_on_component(const Variety& v, std::span<const Poly> equations, std::size_t codim,
                                            const std::string& target, const WitnessOptions& opt,
                                            std::size_t* examined) {
  if (examined) *examined = 0;
  const auto points = detail::sample_system(v, equations, codim, opt.samples, opt.seed, opt.tol);
  const double threshold = opt.threshold_factor * opt.tol.abs_eps;
  for (std::size_t idx = 0; idx < points.size(); ++idx) {
    const auto& p = points[idx].point;
    TangentSpace ts;
    try {
      ts = tangent_space(equations, p, codim);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::SingularPoint) continue;
      throw;
    }
    const auto k = ts.directions.cols();
    if (k == 0) continue;
    if (examined) ++*examined;

    std::mt19937_64 rng(mix(opt.seed, idx));
    std::normal_distribution<double> gauss;
    const ApproxVector base = Eigen::Map<const ApproxVector>(p.data(), static_cast<Eigen::Index>(p.size()));
    std::vector<ApproxComplex> best;
    double best_residual = -1.0;
    for (std::size_t probe = 0; probe < opt.probes; ++probe) {
      ApproxVector c(k);
      for (Eigen::Index i = 0; i < k; ++i) {
        const double re = gauss(rng);
        c(i) = {re, gauss(rng)};
      }
      const ApproxVector d = (ts.directions * c).normalized();
      const ApproxVector q = base + opt.radius * d;
      const auto qn = normalize_projective(std::span<const ApproxComplex>(q.data(), static_cast<std::size_t>(q.size())));
      const double r = hermitian_residual(v, qn);
      if (r > best_residual) {
        best_residual = r;
        best = qn;
      }
    }
    if (best_residual > threshold) {
      Witness w;
      w.target = target;
      w.point = p;
      w.tangent = ts.forms;
      w.probe = std::move(best);
      w.residual = best_residual;
      return w;
    }
  }
  return std::nullopt;
}

VarietyVerdict nonlinearity_witness(const Variety& v, const WitnessOptions& opt) {
  if (v.full()) return verdict(VerdictTag::Full, "minors", "every maximal minor vanishes identically");
  if (const auto g = essential_generator(v)) {
    const std::vector<Poly> eq{*g};
    return witness_verdict(v, eq, 1, "determinant", opt);
  }
  return decide_general(v, opt);
}

VarietyVerdict linearity_decide(const Variety& v, const WitnessOptions& opt) {
  if (v.full()) {
    return verdict(VerdictTag::Full, "minors",
                   v.t < v.n ? "ensemble is smaller than the minor size" : "every maximal minor vanishes identically");
  }
  if (v.m == 1) return verdict(VerdictTag::Empty, "dimension", "a nonzero form in one variable has no projective zero");
  if (const auto g = essential_generator(v)) return decide_hypersurface(v, *g, opt);
  if (v.t - v.n + 1 > v.m - 1 && certify_empty(v)) {
    return verdict(VerdictTag::Empty, "Macaulay matrix", "every monomial of some degree lies in the ideal of minors");
  }
  return decide_general(v, opt);
}

CovarianceResult verify_lu_covariance(const ApproxState& s, const LocalUnitaryPair& u, std::size_t samples,
                                      std::uint64_t seed, const Tolerance& tol, double threshold) {
  const ApproxState t = apply_local_unitary(s, u);
  const Variety vs = build_variety(s);
  const Variety vt = build_variety(t);
  const auto m = static_cast<Eigen::Index>(s.m);
  CovarianceResult res;
  const auto check = [&](const Variety& from, const Variety& to, const ApproxMatrix& map, std::uint64_t sd) {
    for (const auto& p : detail::sample_variety(from, samples, sd, tol)) {
      const ApproxVector image = map * Eigen::Map<const ApproxVector>(p.point.data(), m);
      const double r =
          hermitian_residual(to, std::span<const ApproxComplex>(image.data(), static_cast<std::size_t>(image.size())));
      res.max_residual = std::max(res.max_residual, r);
      ++res.checked;
    }
  };
  check(vt, vs, u.ua.transpose(), seed);
  check(vs, vt, u.ua.conjugate(), seed + 1);
  res.pass = res.checked > 0 && res.max_residual < threshold;
  return res;
}

}  // namespace detvar
