#pragma once

#include <random>
#include <vector>

#include "ecnoc/config.hpp"
#include "ecnoc/fields.hpp"
#include "oracles.hpp"

namespace fixtures {

using namespace ecnoc;

inline FieldPtr gf17() { return FieldSpec::prime(U256{17}); }
inline FieldPtr gf2_3() { return FieldSpec::binary(3, U256{0xb}); }
inline FieldPtr gf2_4() { return FieldSpec::binary(4, U256{0x13}); }

inline FieldElement el(const FieldPtr& f, std::uint64_t v) { return FieldElement(f, U256{v}); }

/// Uniform-ish random element: random bits of the element width, reduced.
inline FieldElement random_element(const FieldPtr& f, std::mt19937_64& rng) {
  U256 v;
  for (std::size_t i = 0; i < f->limbs(); ++i) v.limb[i] = rng();
  const std::size_t bits = f->element_bits();
  if (bits % 64 != 0) v.limb[f->limbs() - 1] &= (std::uint64_t{1} << (bits % 64)) - 1;
  return FieldElement::reduce(f, v);
}

inline std::vector<FieldElement> all_elements(const FieldPtr& f) {
  std::vector<FieldElement> out;
  for (std::uint64_t v = 0; v < f->order_u64(); ++v) out.push_back(el(f, v));
  return out;
}

inline oracle::PrimeCurve toy17_oracle() { return {17, 2, 2}; }
inline oracle::BinaryCurve toy2_4_oracle() { return {0x13, 4, 0x8, 0x9}; }

inline oracle::Point to_oracle(const AffinePoint& p) {
  if (p.is_infinity()) return std::nullopt;
  return std::pair{p.x().value().low(), p.y().value().low()};
}

inline AffinePoint from_oracle(const CurveParams& c, const oracle::Point& p) {
  if (!p) return AffinePoint::infinity();
  return AffinePoint(FieldElement(c.field(), U256{p->first}), FieldElement(c.field(), U256{p->second}));
}

/// Every affine point of a toy curve plus infinity, by enumeration.
template <class OracleCurve>
std::vector<AffinePoint> all_points(const CurveParams& c, const OracleCurve& o) {
  std::vector<AffinePoint> out;
  for (const auto& p : o.points()) out.push_back(from_oracle(c, p));
  return out;
}

}  // namespace fixtures
