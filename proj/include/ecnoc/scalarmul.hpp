#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ecnoc/curves.hpp"
#include "ecnoc/op_counts.hpp"
#include "ecnoc/wide_uint.hpp"

namespace ecnoc {

/// Non-negative scalar k with binary expansion (k_{l-1} ... k_1 k_0).
class Scalar {
 public:
  Scalar() = default;
  explicit Scalar(const U256& v) : value_(v) {}
  explicit Scalar(std::uint64_t v) : value_(v) {}

  /// Decimal, or hex with a 0x prefix. Throws ParseError.
  static Scalar parse(std::string_view text);

  const U256& value() const { return value_; }
  bool is_zero() const { return value_.is_zero(); }
  std::size_t bit_length() const { return value_.bit_length(); }
  bool bit(std::size_t i) const { return value_.bit(i); }
  std::size_t hamming_weight() const { return value_.popcount(); }

  std::string to_hex() const { return value_.to_hex(); }

  friend bool operator==(const Scalar&, const Scalar&) = default;

 private:
  U256 value_;
};

/// Field-operation counts of one scalar multiplication, split by phase and,
/// inside the iteration, by point operation.
struct OpTrace {
  OpCounts init;
  OpCounts doubling;  ///< iterate phase, point doublings
  OpCounts addition;  ///< iterate phase, point additions
  OpCounts convert;
  std::uint64_t doublings = 0;
  std::uint64_t additions = 0;

  OpCounts iterate() const { return doubling + addition; }
  OpCounts phase(Phase p) const;
  OpCounts total() const { return init + iterate() + convert; }

  friend bool operator==(const OpTrace&, const OpTrace&) = default;
};

/// kP by the binary method in Jacobian / Lopez-Dahab coordinates with a
/// single final inversion. k = 0 or P = Infinity return Infinity before the
/// loop. The trace, if given, is reset and then populated.
AffinePoint scalar_mul(const CurveParams& curve, const Scalar& k, const AffinePoint& p,
                       OpTrace* trace = nullptr);

/// Largest k accepted by scalar_mul_reference.
inline constexpr std::uint64_t kReferenceBound = 1u << 16;

/// P + P + ... + P by repeated affine addition. Throws OracleBoundExceeded
/// for k > 2^16.
AffinePoint scalar_mul_reference(const CurveParams& curve, const Scalar& k, const AffinePoint& p);

// ---- operation-count audit ----

/// One column group of the printed operation-count table.
struct TableCells {
  std::uint64_t add = 0;
  std::uint64_t mul = 0;
  std::uint64_t inv = 0;
  std::uint64_t sqr = 0;
  friend bool operator==(const TableCells&, const TableCells&) = default;
};

struct ReferenceCounts {
  TableCells point_add;     ///< M-Add
  TableCells point_double;  ///< M-Double
  TableCells conversion;    ///< M-xy
};

/// The printed values; the table lists the same numbers for both systems.
ReferenceCounts reference_counts(CoordinateSystem system);

enum class TableColumn { PointAdd, PointDouble, Conversion };
enum class TableRow { Add, Mul, Inv, Sqr };

std::string_view to_string(TableColumn column);
std::string_view to_string(TableRow row);

struct CountCell {
  TableColumn column;
  TableRow row;
  std::uint64_t printed;
  /// Average per point op (per conversion for M-xy); nullopt when that point
  /// op never ran. The ADD row counts field additions plus subtractions.
  std::optional<double> measured;
  std::optional<double> deviation;  ///< measured - printed
};

struct CountReport {
  CoordinateSystem system;
  std::uint64_t n_doubles;
  std::uint64_t n_adds;
  OpTrace trace;
  std::vector<CountCell> cells;  ///< column-major: M-Add, M-Double, M-xy x ADD, MUL, INV, SQR

  const CountCell& cell(TableColumn column, TableRow row) const;
};

/// Throws EmptyTrace when no point operation ran, InvalidParameter when the
/// given counts disagree with the trace.
CountReport count_report(CoordinateSystem system, const OpTrace& trace, std::uint64_t n_doubles,
                         std::uint64_t n_adds);

void to_json(nlohmann::json& j, const CountReport& report);

struct ExpectedTotals {
  TableCells exact;  ///< for the given Hamming weight
  struct {
    double add, mul, inv, sqr;
  } average;  ///< with Hamming weight l/2
};

/// Table-1 composition: (l-1)*M-Double + (hamming-1)*M-Add + M-xy.
ExpectedTotals expected_op_totals(CoordinateSystem system, std::uint64_t bit_length,
                                  std::uint64_t hamming);

}  // namespace ecnoc
