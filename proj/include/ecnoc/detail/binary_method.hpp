#pragma once

#include <optional>
#include <utility>

#include "ecnoc/detail/formulas.hpp"
#include "ecnoc/scalarmul.hpp"

namespace ecnoc::detail {

template <class A>
concept PhasedArithmetic = FieldArithmetic<A> && requires(A& ar) {
  ar.enter(Phase::Init, PointOp::None);
};

/// Left-to-right binary method for k >= 1 and a finite base point:
///   Q <- P; for i = l-2 .. 0: Q <- 2Q; if k_i = 1: Q <- Q + P
/// in projective coordinates, followed by one conversion to affine.
/// Returns nullopt when kP is the point at infinity.
template <PhasedArithmetic A>
std::optional<std::pair<typename A::Value, typename A::Value>> binary_method(
    A& ar, const CurveParams& curve, const Scalar& k, const typename A::Value& px,
    const typename A::Value& py) {
  ar.enter(Phase::Init, PointOp::None);
  Triple<typename A::Value> q = embed(ar, curve, px, py);
  for (std::size_t i = k.bit_length() - 1; i-- > 0;) {
    ar.enter(Phase::Iterate, PointOp::Double);
    q = double_point(ar, curve, q);
    if (k.bit(i)) {
      ar.enter(Phase::Iterate, PointOp::Add);
      q = add_mixed(ar, curve, q, px, py);
    }
  }
  ar.enter(Phase::Convert, PointOp::None);
  return convert_to_affine(ar, curve.system(), q);
}

}  // namespace ecnoc::detail
