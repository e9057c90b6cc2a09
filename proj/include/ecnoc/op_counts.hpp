#pragma once

#include <cstdint>
#include <string_view>

namespace ecnoc {

enum class FieldOp { Add, Sub, Mul, Sqr, Inv };

inline constexpr FieldOp kFieldOps[] = {FieldOp::Add, FieldOp::Sub, FieldOp::Mul, FieldOp::Sqr,
                                        FieldOp::Inv};

constexpr std::string_view to_string(FieldOp op) {
  switch (op) {
    case FieldOp::Add: return "ADD";
    case FieldOp::Sub: return "SUB";
    case FieldOp::Mul: return "MUL";
    case FieldOp::Sqr: return "SQR";
    case FieldOp::Inv: return "INV";
  }
  return "?";
}

/// Stage of a scalar multiplication: (i) initialization, (ii) the
/// double/add iteration, (iii) conversion back to affine coordinates.
enum class Phase { Init, Iterate, Convert };

/// Point operation a field operation belongs to, if any.
enum class PointOp { None, Double, Add };

constexpr std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::Init: return "Init";
    case Phase::Iterate: return "Iterate";
    case Phase::Convert: return "Convert";
  }
  return "?";
}

/// Field-operation tally for one bucket of work.
struct OpCounts {
  std::uint64_t add = 0;
  std::uint64_t sub = 0;
  std::uint64_t mul = 0;
  std::uint64_t sqr = 0;
  std::uint64_t inv = 0;

  constexpr std::uint64_t& operator[](FieldOp op) {
    switch (op) {
      case FieldOp::Add: return add;
      case FieldOp::Sub: return sub;
      case FieldOp::Mul: return mul;
      case FieldOp::Sqr: return sqr;
      case FieldOp::Inv: return inv;
    }
    return add;
  }
  constexpr std::uint64_t operator[](FieldOp op) const {
    return const_cast<OpCounts&>(*this)[op];
  }

  constexpr std::uint64_t total() const { return add + sub + mul + sqr + inv; }

  constexpr OpCounts& operator+=(const OpCounts& o) {
    add += o.add;
    sub += o.sub;
    mul += o.mul;
    sqr += o.sqr;
    inv += o.inv;
    return *this;
  }
  friend constexpr OpCounts operator+(OpCounts a, const OpCounts& b) { return a += b; }
  friend constexpr bool operator==(const OpCounts&, const OpCounts&) = default;
};

}  // namespace ecnoc
