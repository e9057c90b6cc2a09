#include "ecnoc/curves.hpp"

#include "ecnoc/detail/formulas.hpp"

namespace ecnoc {

namespace {

using detail::CountingArithmetic;
using detail::Triple;

Triple<FieldElement> as_triple(const ProjectivePoint& p) { return {p.X, p.Y, p.Z}; }

ProjectivePoint from_triple(const CurveParams& curve, Triple<FieldElement> t) {
  if (t.Z.is_zero()) return projective_infinity(curve);
  return {curve.system(), std::move(t.X), std::move(t.Y), std::move(t.Z)};
}

void require_system(const CurveParams& curve, const ProjectivePoint& p) {
  if (p.system != curve.system())
    throw Error(ErrorCode::SystemMismatch, std::string(to_string(p.system)) + " point on a " +
                                               std::string(to_string(curve.field()->kind())) +
                                               " curve");
  if (!same_field(p.X.field(), curve.field()) || !same_field(p.Y.field(), curve.field()) ||
      !same_field(p.Z.field(), curve.field()))
    throw Error(ErrorCode::FieldMismatch, "projective coordinates outside the curve field");
}

void require_on_curve(const CurveParams& curve, const AffinePoint& p) {
  if (!is_on_curve(curve, p)) throw Error(ErrorCode::NotOnCurve, p.to_string());
}

}  // namespace

std::string_view to_string(CoordinateSystem system) {
  return system == CoordinateSystem::Jacobian ? "jacobian" : "lopez-dahab";
}

CurveParams::CurveParams(FieldElement a, FieldElement b) : a_(std::move(a)), b_(std::move(b)) {
  if (!same_field(a_.field(), b_.field()))
    throw Error(ErrorCode::FieldMismatch, "curve coefficients from different fields");
  if (kind() == FieldKind::Prime) {
    const FieldElement four = element(4), twenty_seven = element(27);
    const FieldElement disc = four * ff_sqr(a_) * a_ + twenty_seven * ff_sqr(b_);
    if (disc.is_zero())
      throw Error(ErrorCode::InvalidParameter, "singular curve: 4a^3 + 27b^2 = 0");
  } else if (b_.is_zero()) {
    throw Error(ErrorCode::InvalidParameter, "singular binary curve: b = 0");
  }
}

// ---- AffinePoint ----

AffinePoint::AffinePoint(FieldElement x, FieldElement y) {
  if (!same_field(x.field(), y.field()))
    throw Error(ErrorCode::FieldMismatch, "point coordinates from different fields");
  coords_.emplace(std::move(x), std::move(y));
}

const FieldElement& AffinePoint::x() const {
  if (!coords_) throw Error(ErrorCode::InvalidParameter, "x of the point at infinity");
  return coords_->first;
}

const FieldElement& AffinePoint::y() const {
  if (!coords_) throw Error(ErrorCode::InvalidParameter, "y of the point at infinity");
  return coords_->second;
}

std::string AffinePoint::to_string() const {
  if (!coords_) return "inf";
  return "(" + coords_->first.to_hex() + ", " + coords_->second.to_hex() + ")";
}

bool operator==(const AffinePoint& a, const AffinePoint& b) {
  if (a.is_infinity() || b.is_infinity()) return a.is_infinity() == b.is_infinity();
  return a.x() == b.x() && a.y() == b.y();
}

std::string ProjectivePoint::to_string() const {
  return "(" + X.to_hex() + " : " + Y.to_hex() + " : " + Z.to_hex() + ")";
}

ProjectivePoint projective_infinity(const CurveParams& curve) {
  const auto one = FieldElement::one(curve.field());
  return {curve.system(), one, one, FieldElement::zero(curve.field())};
}

// ---- affine group law ----

bool is_on_curve(const CurveParams& curve, const AffinePoint& p) {
  if (p.is_infinity()) return true;
  if (!same_field(p.x().field(), curve.field()))
    throw Error(ErrorCode::FieldMismatch, "point outside the curve field");
  const FieldElement& x = p.x();
  const FieldElement& y = p.y();
  const FieldElement x2 = ff_sqr(x);
  if (curve.kind() == FieldKind::Prime) return ff_sqr(y) == x2 * x + curve.a() * x + curve.b();
  return ff_sqr(y) + x * y == x2 * x + curve.a() * x2 + curve.b();
}

AffinePoint point_neg(const CurveParams& curve, const AffinePoint& p) {
  require_on_curve(curve, p);
  if (p.is_infinity()) return p;
  if (curve.kind() == FieldKind::Prime) return {p.x(), ff_neg(p.y())};
  return {p.x(), p.x() + p.y()};
}

AffinePoint point_double_affine(const CurveParams& curve, const AffinePoint& p) {
  require_on_curve(curve, p);
  if (p.is_infinity()) return p;
  const FieldElement& x = p.x();
  const FieldElement& y = p.y();
  if (curve.kind() == FieldKind::Prime) {
    if (y.is_zero()) return AffinePoint::infinity();
    const FieldElement lambda =
        (curve.element(3) * ff_sqr(x) + curve.a()) * ff_inv(y + y);
    const FieldElement x3 = ff_sqr(lambda) - (x + x);
    return {x3, lambda * (x - x3) - y};
  }
  if (x.is_zero()) return AffinePoint::infinity();
  const FieldElement lambda = x + y * ff_inv(x);
  const FieldElement x3 = ff_sqr(lambda) + lambda + curve.a();
  return {x3, ff_sqr(x) + (lambda + FieldElement::one(curve.field())) * x3};
}

AffinePoint point_add_affine(const CurveParams& curve, const AffinePoint& p, const AffinePoint& q) {
  require_on_curve(curve, p);
  require_on_curve(curve, q);
  if (p.is_infinity()) return q;
  if (q.is_infinity()) return p;
  if (p.x() == q.x()) {
    if (p.y() == q.y()) return point_double_affine(curve, p);
    return AffinePoint::infinity();  // q = -p
  }
  const FieldElement& x1 = p.x();
  const FieldElement& y1 = p.y();
  const FieldElement& x2 = q.x();
  const FieldElement& y2 = q.y();
  if (curve.kind() == FieldKind::Prime) {
    const FieldElement lambda = (y2 - y1) * ff_inv(x2 - x1);
    const FieldElement x3 = ff_sqr(lambda) - x1 - x2;
    return {x3, lambda * (x1 - x3) - y1};
  }
  const FieldElement lambda = (y1 + y2) * ff_inv(x1 + x2);
  const FieldElement x3 = ff_sqr(lambda) + lambda + x1 + x2 + curve.a();
  return {x3, lambda * (x1 + x3) + x3 + y1};
}

// ---- projective ----

ProjectivePoint to_projective(const CurveParams& curve, const AffinePoint& p) {
  require_on_curve(curve, p);
  if (p.is_infinity()) return projective_infinity(curve);
  return {curve.system(), p.x(), p.y(), FieldElement::one(curve.field())};
}

AffinePoint to_affine(const CurveParams& curve, const ProjectivePoint& p, OpCounts* counts) {
  require_system(curve, p);
  CountingArithmetic ar(counts);
  auto xy = detail::convert_to_affine(ar, p.system, as_triple(p));
  if (!xy) return AffinePoint::infinity();
  return {std::move(xy->first), std::move(xy->second)};
}

ProjectivePoint point_add_projective(const CurveParams& curve, const ProjectivePoint& p,
                                     const AffinePoint& q, OpCounts* counts) {
  require_system(curve, p);
  require_on_curve(curve, q);
  if (q.is_infinity())
    throw Error(ErrorCode::InvalidParameter, "mixed addition needs a finite affine operand");
  CountingArithmetic ar(counts);
  return from_triple(curve, detail::add_mixed(ar, curve, as_triple(p), q.x(), q.y()));
}

ProjectivePoint point_double_projective(const CurveParams& curve, const ProjectivePoint& p,
                                        OpCounts* counts) {
  require_system(curve, p);
  CountingArithmetic ar(counts);
  return from_triple(curve, detail::double_point(ar, curve, as_triple(p)));
}

bool projective_equal(const CurveParams& curve, const ProjectivePoint& p, const ProjectivePoint& q) {
  require_system(curve, p);
  require_system(curve, q);
  if (p.is_infinity() || q.is_infinity()) return p.is_infinity() == q.is_infinity();
  if (curve.system() == CoordinateSystem::Jacobian) {
    const auto pz2 = ff_sqr(p.Z), qz2 = ff_sqr(q.Z);
    return p.X * qz2 == q.X * pz2 && p.Y * qz2 * q.Z == q.Y * pz2 * p.Z;
  }
  return p.X * q.Z == q.X * p.Z && p.Y * ff_sqr(q.Z) == q.Y * ff_sqr(p.Z);
}

ProjectivePoint rescale(const ProjectivePoint& p, const FieldElement& lambda) {
  if (lambda.is_zero()) throw Error(ErrorCode::InvalidParameter, "rescale by zero");
  const FieldElement l2 = ff_sqr(lambda);
  if (p.system == CoordinateSystem::Jacobian) return {p.system, l2 * p.X, l2 * lambda * p.Y, lambda * p.Z};
  return {p.system, lambda * p.X, l2 * p.Y, lambda * p.Z};
}

}  // namespace ecnoc
