#pragma once

#include <optional>
#include <string>

#include "detvar/multipoly.hpp"

namespace detvar {

/// x^3 + y^3 + z^3 - lambda xyz, tracked through lambda^3 so no cube roots
/// are needed.
struct HesseCubic {
  ExactComplex lambda_cubed;
  std::string provenance;
};

/// a r1^3 + b r2^3 + c r3^3 + d r1 r2 r3 with abc != 0 rescales to Hesse form
/// with lambda^3 = -d^3 / (abc). Throws NotHesseShape.
HesseCubic hesse_reduce(const Poly& p);

struct ModuliValue {
  /// Empty when lambda^3 = 27 (three lines).
  std::optional<ExactComplex> value;

  bool degenerate() const { return !value; }
  std::string to_string() const;
};

/// K(c) = c (c + 216)^3 / (27 - c)^3 at c = lambda^3.
ModuliValue moduli_value(const HesseCubic& h);
ModuliValue moduli_value(const ExactComplex& lambda_cubed);

enum class LuComparison { DistinguishedInequivalent, NotDistinguished };

const char* to_string(LuComparison c) noexcept;

/// Distinguished only when both moduli are finite and differ.
LuComparison lu_compare(const HesseCubic& a, const HesseCubic& b);

/// lambda^3 = (t^3 + 2)^3 / t^3 for the cubic family.
HesseCubic cubic_family_hesse(const ExactComplex& t_cubed);

}  // namespace detvar
