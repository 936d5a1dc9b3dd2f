#pragma once

#include <string>
#include <variant>

#include "detvar/moduli.hpp"
#include "detvar/repro.hpp"
#include "detvar/variety.hpp"
#include "json.hpp"

namespace detvar {

using Json = nlohmann::ordered_json;

/// A parsed state file. Exact when every scalar is a rational string and the
/// state is given as an ensemble; any floating scalar or a density-only file
/// gives an approx state.
struct StateFile {
  std::variant<ExactState, ApproxState> state;

  bool exact() const { return std::holds_alternative<ExactState>(state); }
  std::size_t m() const;
  std::size_t n() const;
  const std::string& label() const;
};

/// Throws ParseError naming the offending field, or NotAState/BadDims from
/// validation.
StateFile parse_state(const Json& j, const Tolerance& tol = {});
StateFile parse_state_text(const std::string& text, const Tolerance& tol = {});
/// Also returns the raw bytes for digesting.
StateFile read_state_file(const std::string& path, std::string* bytes = nullptr, const Tolerance& tol = {});

Json state_to_json(const ExactState& s);
Json state_to_json(const ApproxState& s);

/// 64-bit FNV-1a as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

Json to_json(const ExactComplex& z);
Json to_json(const ApproxComplex& z);
Json to_json(const Poly& p, std::span<const std::string> names = {});
Json to_json(const LinearForm& f, std::span<const std::string> names = {});
Json to_json(const ApproxLinearForm& f);
Json to_json(const FactorList& f);
Json to_json(const Witness& w);
Json to_json(const WitnessCheck& c);
Json to_json(const VarietyVerdict& v);
Json to_json(const SpectraReport& s);
Json to_json(const Tolerance& t);
Json to_json(const PolyComparison& c, std::span<const std::string> names = {});
Json to_json(const PptExampleReport& r);

ExactComplex exact_complex_from_json(const Json& j, const std::string& field);
Poly poly_from_json(const Json& j, const std::string& field);
/// Inverse of to_json(Witness); doubles round-trip bit for bit.
Witness witness_from_json(const Json& j);

}  // namespace detvar
