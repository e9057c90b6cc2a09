#pragma once

// Projective group-law formulas written once over an arithmetic backend.
//
// A backend supplies a Value type and add/sub/mul/sqr/inv, a constant()
// lifting of plain field elements, and is_zero() for the data-dependent
// exceptional cases. The concrete backend evaluates and counts operations;
// procmodel's backend additionally records each operation as a task.

#include <concepts>
#include <optional>
#include <utility>

#include "ecnoc/curves.hpp"
#include "ecnoc/fields.hpp"

namespace ecnoc::detail {

template <class A>
concept FieldArithmetic = requires(A& ar, const typename A::Value& v, const FieldElement& e) {
  { ar.add(v, v) } -> std::same_as<typename A::Value>;
  { ar.sub(v, v) } -> std::same_as<typename A::Value>;
  { ar.mul(v, v) } -> std::same_as<typename A::Value>;
  { ar.sqr(v) } -> std::same_as<typename A::Value>;
  { ar.inv(v) } -> std::same_as<typename A::Value>;
  { ar.constant(e) } -> std::same_as<typename A::Value>;
  { ar.is_zero(v) } -> std::same_as<bool>;
};

template <class V>
struct Triple {
  V X, Y, Z;
};

template <FieldArithmetic A>
Triple<typename A::Value> infinity_triple(A& ar, const CurveParams& curve) {
  const auto one = ar.constant(FieldElement::one(curve.field()));
  return {one, one, ar.constant(FieldElement::zero(curve.field()))};
}

template <FieldArithmetic A>
Triple<typename A::Value> embed(A& ar, const CurveParams& curve, const typename A::Value& x,
                                const typename A::Value& y) {
  return {x, y, ar.constant(FieldElement::one(curve.field()))};
}

// Jacobian doubling for general a: M = 3X^2 + aZ^4, S = 4XY^2,
// X3 = M^2 - 2S, Y3 = M(S - X3) - 8Y^4, Z3 = 2YZ.
template <FieldArithmetic A>
Triple<typename A::Value> jacobian_double(A& ar, const CurveParams& curve,
                                          const Triple<typename A::Value>& p) {
  if (ar.is_zero(p.Z)) return infinity_triple(ar, curve);
  const auto a = ar.constant(curve.a());
  const auto xx = ar.sqr(p.X);
  const auto zz = ar.sqr(p.Z);
  const auto z4 = ar.sqr(zz);
  const auto az4 = ar.mul(a, z4);
  auto m = ar.add(xx, xx);
  m = ar.add(m, xx);
  m = ar.add(m, az4);
  const auto yy = ar.sqr(p.Y);
  auto s = ar.mul(p.X, yy);
  s = ar.add(s, s);
  s = ar.add(s, s);
  auto x3 = ar.sqr(m);
  const auto s2 = ar.add(s, s);
  x3 = ar.sub(x3, s2);
  const auto y4 = ar.sqr(yy);
  auto y8 = ar.add(y4, y4);
  y8 = ar.add(y8, y8);
  y8 = ar.add(y8, y8);
  auto y3 = ar.sub(s, x3);
  y3 = ar.mul(m, y3);
  y3 = ar.sub(y3, y8);
  auto z3 = ar.mul(p.Y, p.Z);
  z3 = ar.add(z3, z3);
  if (ar.is_zero(z3)) return infinity_triple(ar, curve);
  return {x3, y3, z3};
}

// Jacobian + affine mixed addition (Hankerson-Menezes-Vanstone Alg. 3.22 order).
template <FieldArithmetic A>
Triple<typename A::Value> jacobian_add_mixed(A& ar, const CurveParams& curve,
                                             const Triple<typename A::Value>& p,
                                             const typename A::Value& qx,
                                             const typename A::Value& qy) {
  if (ar.is_zero(p.Z)) return embed(ar, curve, qx, qy);
  auto t1 = ar.sqr(p.Z);
  auto t2 = ar.mul(t1, p.Z);
  t1 = ar.mul(t1, qx);
  t2 = ar.mul(t2, qy);
  t1 = ar.sub(t1, p.X);
  t2 = ar.sub(t2, p.Y);
  if (ar.is_zero(t1)) {
    if (ar.is_zero(t2)) return jacobian_double(ar, curve, embed(ar, curve, qx, qy));
    return infinity_triple(ar, curve);
  }
  const auto z3 = ar.mul(p.Z, t1);
  auto t3 = ar.sqr(t1);
  auto t4 = ar.mul(t3, t1);
  t3 = ar.mul(t3, p.X);
  t1 = ar.add(t3, t3);
  auto x3 = ar.sqr(t2);
  x3 = ar.sub(x3, t1);
  x3 = ar.sub(x3, t4);
  t3 = ar.sub(t3, x3);
  t3 = ar.mul(t3, t2);
  t4 = ar.mul(t4, p.Y);
  const auto y3 = ar.sub(t3, t4);
  return {x3, y3, z3};
}

// Lopez-Dahab doubling: Z3 = X^2 Z^2, X3 = X^4 + bZ^4,
// Y3 = bZ^4 Z3 + X3 (aZ3 + Y^2 + bZ^4).
template <FieldArithmetic A>
Triple<typename A::Value> ld_double(A& ar, const CurveParams& curve,
                                    const Triple<typename A::Value>& p) {
  if (ar.is_zero(p.Z)) return infinity_triple(ar, curve);
  const auto a = ar.constant(curve.a());
  const auto b = ar.constant(curve.b());
  const auto x2 = ar.sqr(p.X);
  const auto z2 = ar.sqr(p.Z);
  const auto z3 = ar.mul(x2, z2);
  const auto x4 = ar.sqr(x2);
  const auto z4 = ar.sqr(z2);
  const auto bz4 = ar.mul(b, z4);
  const auto x3 = ar.add(x4, bz4);
  const auto y2 = ar.sqr(p.Y);
  const auto az3 = ar.mul(a, z3);
  auto t = ar.add(az3, y2);
  t = ar.add(t, bz4);
  t = ar.mul(x3, t);
  const auto u = ar.mul(bz4, z3);
  const auto y3 = ar.add(u, t);
  if (ar.is_zero(z3)) return infinity_triple(ar, curve);
  return {x3, y3, z3};
}

// Lopez-Dahab + affine mixed addition for general a:
// A = y2 Z1^2 + Y1, B = x2 Z1 + X1, C = Z1 B, D = B^2 (C + aZ1^2), Z3 = C^2,
// E = AC, X3 = A^2 + D + E, F = X3 + x2 Z3, G = (x2 + y2) Z3^2,
// Y3 = (E + Z3) F + G.
template <FieldArithmetic A>
Triple<typename A::Value> ld_add_mixed(A& ar, const CurveParams& curve,
                                       const Triple<typename A::Value>& p,
                                       const typename A::Value& qx, const typename A::Value& qy) {
  if (ar.is_zero(p.Z)) return embed(ar, curve, qx, qy);
  const auto a = ar.constant(curve.a());
  const auto z1s = ar.sqr(p.Z);
  auto ta = ar.mul(qy, z1s);
  ta = ar.add(ta, p.Y);
  auto tb = ar.mul(qx, p.Z);
  tb = ar.add(tb, p.X);
  if (ar.is_zero(tb)) {
    if (ar.is_zero(ta)) return ld_double(ar, curve, embed(ar, curve, qx, qy));
    return infinity_triple(ar, curve);
  }
  const auto tc = ar.mul(p.Z, tb);
  const auto az1s = ar.mul(a, z1s);
  auto td = ar.add(tc, az1s);
  const auto b2 = ar.sqr(tb);
  td = ar.mul(b2, td);
  const auto z3 = ar.sqr(tc);
  const auto te = ar.mul(ta, tc);
  const auto a2 = ar.sqr(ta);
  auto x3 = ar.add(a2, td);
  x3 = ar.add(x3, te);
  auto tf = ar.mul(qx, z3);
  tf = ar.add(x3, tf);
  const auto z3s = ar.sqr(z3);
  auto tg = ar.add(qx, qy);
  tg = ar.mul(tg, z3s);
  auto y3 = ar.add(te, z3);
  y3 = ar.mul(y3, tf);
  y3 = ar.add(y3, tg);
  return {x3, y3, z3};
}

template <FieldArithmetic A>
Triple<typename A::Value> double_point(A& ar, const CurveParams& curve,
                                       const Triple<typename A::Value>& p) {
  return curve.system() == CoordinateSystem::Jacobian ? jacobian_double(ar, curve, p)
                                                      : ld_double(ar, curve, p);
}

template <FieldArithmetic A>
Triple<typename A::Value> add_mixed(A& ar, const CurveParams& curve,
                                    const Triple<typename A::Value>& p,
                                    const typename A::Value& qx, const typename A::Value& qy) {
  return curve.system() == CoordinateSystem::Jacobian ? jacobian_add_mixed(ar, curve, p, qx, qy)
                                                      : ld_add_mixed(ar, curve, p, qx, qy);
}

// Single inversion of Z, remaining powers by multiplication and squaring.
template <FieldArithmetic A>
std::optional<std::pair<typename A::Value, typename A::Value>> convert_to_affine(
    A& ar, CoordinateSystem system, const Triple<typename A::Value>& p) {
  if (ar.is_zero(p.Z)) return std::nullopt;
  const auto zi = ar.inv(p.Z);
  if (system == CoordinateSystem::Jacobian) {
    const auto zi2 = ar.sqr(zi);
    const auto x = ar.mul(p.X, zi2);
    const auto zi3 = ar.mul(zi2, zi);
    const auto y = ar.mul(p.Y, zi3);
    return std::pair{x, y};
  }
  const auto x = ar.mul(p.X, zi);
  const auto zi2 = ar.sqr(zi);
  const auto y = ar.mul(p.Y, zi2);
  return std::pair{x, y};
}

/// Concrete backend: evaluates with the fields module and tallies operations.
class CountingArithmetic {
 public:
  using Value = FieldElement;

  explicit CountingArithmetic(OpCounts* counts = nullptr) : counts_(counts) {}

  void set_counts(OpCounts* counts) { counts_ = counts; }

  Value add(const Value& a, const Value& b) {
    tally(FieldOp::Add);
    return ff_add(a, b);
  }
  Value sub(const Value& a, const Value& b) {
    tally(FieldOp::Sub);
    return ff_sub(a, b);
  }
  Value mul(const Value& a, const Value& b) {
    tally(FieldOp::Mul);
    return ff_mul(a, b);
  }
  Value sqr(const Value& a) {
    tally(FieldOp::Sqr);
    return ff_sqr(a);
  }
  Value inv(const Value& a) {
    tally(FieldOp::Inv);
    return ff_inv(a);
  }
  Value constant(const FieldElement& e) const { return e; }
  bool is_zero(const Value& v) const { return v.is_zero(); }

 private:
  void tally(FieldOp op) {
    if (counts_) ++(*counts_)[op];
  }
  OpCounts* counts_;
};

}  // namespace ecnoc::detail
