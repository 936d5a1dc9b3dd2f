#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "detvar/factor.hpp"
#include "detvar/multipoly.hpp"
#include "detvar/states.hpp"

namespace detvar {

enum class Side { A, B };

/// The n x t matrix sum_i r_i A_i, where A_i is the i-th n x t slice of the
/// mn x t ensemble matrix.
struct PencilMatrix {
  std::size_t nvars = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<ExactMatrix> blocks;

  LinearForm entry(std::size_t k, std::size_t l) const;
  PolyMatrix to_poly_matrix() const;
  ExactMatrix evaluate(std::span<const ExactComplex> r) const;
  ApproxMatrix evaluate(std::span<const ApproxComplex> r) const;
};

/// Throws MissingEnsemble.
PencilMatrix pencil_matrix(const ExactState& s, Side side);

enum class Mode { Exact, Approx };

/// V_A (or V_B) as the common zeros of the n x n minors of the pencil, with
/// the Hermitian form sum_ij r_i conj(r_j) rho_ij kept as a second,
/// independent evaluator.
struct Variety {
  Side side = Side::A;
  Mode mode = Mode::Exact;
  std::size_t m = 0;  // variables r_1..r_m
  std::size_t n = 0;  // minor size
  std::size_t t = 0;  // ensemble size
  PencilMatrix pencil;
  std::vector<Poly> generators;
  std::vector<ApproxPoly> approx_generators;
  /// rho_ij = A_i P A_j^dagger, stored at index i * m + j.
  std::vector<ExactMatrix> hermitian_blocks;

  /// Whole projective space: t < n or every minor vanishes identically.
  bool full() const;
  std::size_t nonzero_generator_count() const;
  ExactMatrix hermitian_form(std::span<const ExactComplex> r) const;
};

Variety build_variety(const ExactState& s, Side side = Side::A, Mode mode = Mode::Exact);
/// Works on an exact dyadic copy of the ensemble. Throws MissingEnsemble.
Variety build_variety(const ApproxState& s, Side side = Side::A);

/// The single generator every nonzero minor is proportional to, if any.
std::optional<Poly> essential_generator(const Variety& v);

/// Scaled so the largest-modulus coordinate is 1, ties to the lowest index.
/// Throws ZeroDirection.
std::vector<ApproxComplex> normalize_projective(std::span<const ApproxComplex> r);
std::vector<ExactComplex> normalize_projective(std::span<const ExactComplex> r);

/// sqrt(sum_S |minor_S(r)|^2) / prod_k |row_k M(r)|, evaluated exactly at
/// the dyadic value of r. Zero when a row vanishes.
double generator_residual(const Variety& v, std::span<const ApproxComplex> r);
/// sqrt(|det H(r)| / prod_k H_kk(r)), evaluated exactly at the dyadic value
/// of r. Zero when a diagonal entry vanishes.
double hermitian_residual(const Variety& v, std::span<const ApproxComplex> r);

struct MembershipResult {
  bool member = false;
  double generator_residual = 0.0;
  double hermitian_residual = 0.0;
};

/// Both criteria must agree: one residual at most abs_eps while the other
/// exceeds sqrt(abs_eps) throws InconsistentRepresentations.
MembershipResult membership(const Variety& v, std::span<const ApproxComplex> r, const Tolerance& tol = {});
/// Exact test at a Gaussian-rational point; both criteria must agree exactly.
MembershipResult membership(const Variety& v, std::span<const ExactComplex> r);

struct SamplePoint {
  std::vector<ApproxComplex> point;  // normalized
  double residual = 0.0;             // hermitian residual
  std::size_t codim = 1;             // codimension of the sampled part
};

/// Points of V from random exact lines (codimension 1) or planes
/// (codimension 2), polished by damped Gauss-Newton and filtered by
/// membership. Throws SamplingExhausted after 100 * count draws, and
/// BadParams when V is full.
std::vector<SamplePoint> sample_points(const Variety& v, std::size_t count, std::uint64_t seed,
                                       const Tolerance& tol = {});

/// Orthonormal data of the tangent space at p of the locus cut out by
/// `equations` with the given codimension.
struct TangentSpace {
  std::vector<ApproxLinearForm> forms;  // codim forms vanishing on the space
  ApproxMatrix directions;              // columns orthogonal to p spanning the rest
};

/// Throws SingularPoint unless the normalized Jacobian has the same rank at
/// two thresholds and that rank equals codim.
TangentSpace tangent_space(std::span<const Poly> equations, std::span<const ApproxComplex> p, std::size_t codim);

/// Hyperplane given by the gradient of the essential generator. Throws
/// SingularPoint or UnsupportedShape when V is not a hypersurface.
ApproxLinearForm tangent_form(const Variety& v, const SamplePoint& p, const Tolerance& tol = {});

struct Witness {
  std::string target;  // which polynomial system the point was sampled from
  std::vector<ApproxComplex> point;
  std::vector<ApproxLinearForm> tangent;
  std::vector<ApproxComplex> probe;  // on the tangent space, off the variety
  double residual = 0.0;             // hermitian residual at probe
};

enum class VerdictTag { Empty, Full, LinearUnion, NonlinearWitness, Inconclusive };

const char* to_string(VerdictTag tag) noexcept;

struct VarietyVerdict {
  VerdictTag tag = VerdictTag::Inconclusive;
  std::string method;
  std::string reason;
  std::vector<LinearForm> forms;
  std::vector<ApproxLinearForm> approx_forms;
  std::optional<FactorList> factors;
  std::optional<Witness> witness;
  std::size_t points_examined = 0;

  /// Only a non-linearity witness certifies entanglement.
  bool entangled() const { return tag == VerdictTag::NonlinearWitness; }
};

struct WitnessOptions {
  std::size_t samples = 20;
  std::uint64_t seed = 42;
  double threshold_factor = 10.0;  // witness needs residual > factor * abs_eps
  double radius = 0.1;
  std::size_t probes = 20;
  Tolerance tol;
};

/// Exact emptiness certificate: some Macaulay matrix of the generators has
/// full column rank, so every monomial of that degree lies in the ideal.
bool certify_empty(const Variety& v);
/// Same certificate for nonzero forms of one common degree in m variables.
/// Throws UnsupportedShape otherwise.
bool certify_empty(std::span<const Poly> forms, std::size_t m);

/// Searches sampled smooth points of the locus cut out by `equations`
/// (a part of V of the given codimension) for a tangent direction leaving V.
std::optional<Witness> witness_on_component(const Variety& v, std::span<const Poly> equations, std::size_t codim,
                                            const std::string& target, const WitnessOptions& opt,
                                            std::size_t* examined = nullptr);

/// Witness search on V itself (general position sampling).
VarietyVerdict nonlinearity_witness(const Variety& v, const WitnessOptions& opt = {});

/// Empty / Full / LinearUnion / NonlinearWitness / Inconclusive.
VarietyVerdict linearity_decide(const Variety& v, const WitnessOptions& opt = {});

struct WitnessCheck {
  bool valid = false;
  double point_residual = 0.0;
  double probe_residual = 0.0;
  double tangent_defect = 0.0;  // max |form(probe)| and |form(point)|
};

/// Re-evaluates a serialized witness against the variety.
WitnessCheck recheck_witness(const Variety& v, const Witness& w, const Tolerance& tol = {});

struct CovarianceResult {
  bool pass = false;
  std::size_t checked = 0;
  double max_residual = 0.0;
};

/// Points r of V_A(T rho) must map to r' = U_A^T r on V_A(rho), and points
/// s of V_A(rho) must map back to conj(U_A) s on V_A(T rho).
CovarianceResult verify_lu_covariance(const ApproxState& s, const LocalUnitaryPair& u, std::size_t samples,
                                      std::uint64_t seed, const Tolerance& tol = {}, double threshold = 1e-8);

}  // namespace detvar
