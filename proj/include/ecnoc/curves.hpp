#pragma once

#include <optional>
#include <string>
#include <utility>

#include "ecnoc/fields.hpp"
#include "ecnoc/op_counts.hpp"

namespace ecnoc {

enum class CoordinateSystem { Jacobian, LopezDahab };

std::string_view to_string(CoordinateSystem system);

/// Short Weierstrass curve y^2 = x^3 + ax + b over GF(p), or the
/// non-supersingular y^2 + xy = x^3 + ax^2 + b over GF(2^m).
class CurveParams {
 public:
  /// Throws FieldMismatch if a and b live in different fields, InvalidParameter
  /// for a singular curve (4a^3 + 27b^2 = 0, or b = 0 in characteristic 2).
  CurveParams(FieldElement a, FieldElement b);

  const FieldPtr& field() const { return a_.field(); }
  FieldKind kind() const { return a_.spec().kind(); }
  const FieldElement& a() const { return a_; }
  const FieldElement& b() const { return b_; }

  /// Jacobian for prime curves, Lopez-Dahab for binary curves.
  CoordinateSystem system() const {
    return kind() == FieldKind::Prime ? CoordinateSystem::Jacobian : CoordinateSystem::LopezDahab;
  }

  FieldElement element(std::uint64_t v) const { return FieldElement::from_u64(field(), v); }

 private:
  FieldElement a_;
  FieldElement b_;
};

class AffinePoint {
 public:
  static AffinePoint infinity() { return AffinePoint(); }
  AffinePoint(FieldElement x, FieldElement y);

  bool is_infinity() const { return !coords_.has_value(); }
  /// Throws InvalidParameter on the point at infinity.
  const FieldElement& x() const;
  const FieldElement& y() const;

  /// "inf" or "(x, y)" in hex.
  std::string to_string() const;

  friend bool operator==(const AffinePoint& a, const AffinePoint& b);

 private:
  AffinePoint() = default;
  std::optional<std::pair<FieldElement, FieldElement>> coords_;
};

/// (X : Y : Z) in Jacobian (x = X/Z^2, y = Y/Z^3) or Lopez-Dahab
/// (x = X/Z, y = Y/Z^2) form. Z = 0 is the point at infinity.
struct ProjectivePoint {
  CoordinateSystem system;
  FieldElement X;
  FieldElement Y;
  FieldElement Z;

  bool is_infinity() const { return Z.is_zero(); }
  std::string to_string() const;
};

/// Canonical (1 : 1 : 0) for the curve's coordinate system.
ProjectivePoint projective_infinity(const CurveParams& curve);

bool is_on_curve(const CurveParams& curve, const AffinePoint& p);

AffinePoint point_neg(const CurveParams& curve, const AffinePoint& p);
AffinePoint point_add_affine(const CurveParams& curve, const AffinePoint& p, const AffinePoint& q);
AffinePoint point_double_affine(const CurveParams& curve, const AffinePoint& p);

ProjectivePoint to_projective(const CurveParams& curve, const AffinePoint& p);

/// One inversion of Z when Z != 0; counted into `counts` when given.
AffinePoint to_affine(const CurveParams& curve, const ProjectivePoint& p, OpCounts* counts = nullptr);

/// Inversion-free mixed addition P + Q with Q affine and finite.
ProjectivePoint point_add_projective(const CurveParams& curve, const ProjectivePoint& p,
                                     const AffinePoint& q, OpCounts* counts = nullptr);
ProjectivePoint point_double_projective(const CurveParams& curve, const ProjectivePoint& p,
                                        OpCounts* counts = nullptr);

/// Representative-independent equality via cross-multiplication. Untraced.
bool projective_equal(const CurveParams& curve, const ProjectivePoint& p, const ProjectivePoint& q);

/// Rescales a finite projective point by lambda != 0 (λ²X, λ³Y, λZ) or (λX, λ²Y, λZ).
ProjectivePoint rescale(const ProjectivePoint& p, const FieldElement& lambda);

}  // namespace ecnoc
