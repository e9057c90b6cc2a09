#include "ecnoc/scalarmul.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "ecnoc/detail/binary_method.hpp"

namespace ecnoc {

namespace {

/// Counting backend that routes each operation into the OpTrace bucket of the
/// current phase and point operation.
class TracingArithmetic : public detail::CountingArithmetic {
 public:
  explicit TracingArithmetic(OpTrace* trace) : trace_(trace) {}

  void enter(Phase phase, PointOp op) {
    if (!trace_) return;
    switch (phase) {
      case Phase::Init: set_counts(&trace_->init); break;
      case Phase::Convert: set_counts(&trace_->convert); break;
      case Phase::Iterate:
        if (op == PointOp::Add) {
          ++trace_->additions;
          set_counts(&trace_->addition);
        } else {
          ++trace_->doublings;
          set_counts(&trace_->doubling);
        }
        break;
    }
  }

 private:
  OpTrace* trace_;
};

double per_op(std::uint64_t count, std::uint64_t n) {
  return static_cast<double>(count) / static_cast<double>(n);
}

std::uint64_t row_value(const TableCells& c, TableRow row) {
  switch (row) {
    case TableRow::Add: return c.add;
    case TableRow::Mul: return c.mul;
    case TableRow::Inv: return c.inv;
    case TableRow::Sqr: return c.sqr;
  }
  return 0;
}

std::uint64_t row_value(const OpCounts& c, TableRow row) {
  switch (row) {
    case TableRow::Add: return c.add + c.sub;
    case TableRow::Mul: return c.mul;
    case TableRow::Inv: return c.inv;
    case TableRow::Sqr: return c.sqr;
  }
  return 0;
}

constexpr TableColumn kColumns[] = {TableColumn::PointAdd, TableColumn::PointDouble,
                                    TableColumn::Conversion};
constexpr TableRow kRows[] = {TableRow::Add, TableRow::Mul, TableRow::Inv, TableRow::Sqr};

nlohmann::json counts_json(const OpCounts& c) {
  nlohmann::json j = nlohmann::json::object();
  for (FieldOp op : kFieldOps) j[std::string(to_string(op))] = c[op];
  return j;
}

}  // namespace

Scalar Scalar::parse(std::string_view text) {
  std::optional<U256> v;
  if (text.starts_with("0x") || text.starts_with("0X"))
    v = U256::from_hex(text);
  else
    v = U256::from_dec(text);
  if (!v) throw Error(ErrorCode::ParseError, "malformed scalar '" + std::string(text) + "'");
  return Scalar(*v);
}

OpCounts OpTrace::phase(Phase p) const {
  switch (p) {
    case Phase::Init: return init;
    case Phase::Iterate: return iterate();
    case Phase::Convert: return convert;
  }
  return {};
}

AffinePoint scalar_mul(const CurveParams& curve, const Scalar& k, const AffinePoint& p,
                       OpTrace* trace) {
  if (!is_on_curve(curve, p)) throw Error(ErrorCode::NotOnCurve, p.to_string());
  if (trace) *trace = OpTrace{};
  if (k.is_zero() || p.is_infinity()) return AffinePoint::infinity();
  TracingArithmetic ar(trace);
  auto xy = detail::binary_method(ar, curve, k, p.x(), p.y());
  if (!xy) return AffinePoint::infinity();
  return {std::move(xy->first), std::move(xy->second)};
}

AffinePoint scalar_mul_reference(const CurveParams& curve, const Scalar& k, const AffinePoint& p) {
  if (k.value() > U256{kReferenceBound})
    throw Error(ErrorCode::OracleBoundExceeded,
                "repeated-addition oracle limited to k <= 65536, got 0x" + k.to_hex());
  if (!is_on_curve(curve, p)) throw Error(ErrorCode::NotOnCurve, p.to_string());
  AffinePoint q = AffinePoint::infinity();
  for (std::uint64_t i = 0; i < k.value().low(); ++i) q = point_add_affine(curve, q, p);
  return q;
}

ReferenceCounts reference_counts(CoordinateSystem) {
  // Identical for the Lopez-Dahab and Jacobian columns as printed.
  return ReferenceCounts{
      .point_add = {.add = 2, .mul = 4, .inv = 0, .sqr = 1},
      .point_double = {.add = 1, .mul = 2, .inv = 0, .sqr = 4},
      .conversion = {.add = 6, .mul = 10, .inv = 1, .sqr = 1},
  };
}

std::string_view to_string(TableColumn column) {
  switch (column) {
    case TableColumn::PointAdd: return "M-Add";
    case TableColumn::PointDouble: return "M-Double";
    case TableColumn::Conversion: return "M-xy";
  }
  return "?";
}

std::string_view to_string(TableRow row) {
  switch (row) {
    case TableRow::Add: return "ADD";
    case TableRow::Mul: return "MUL";
    case TableRow::Inv: return "INV";
    case TableRow::Sqr: return "SQR";
  }
  return "?";
}

const CountCell& CountReport::cell(TableColumn column, TableRow row) const {
  for (const auto& c : cells)
    if (c.column == column && c.row == row) return c;
  throw Error(ErrorCode::InvalidParameter, "no such table cell");
}

CountReport count_report(CoordinateSystem system, const OpTrace& trace, std::uint64_t n_doubles,
                         std::uint64_t n_adds) {
  if (n_doubles + n_adds == 0 || trace.doublings + trace.additions == 0)
    throw Error(ErrorCode::EmptyTrace, "no point doubling or addition was executed");
  if (n_doubles != trace.doublings || n_adds != trace.additions)
    throw Error(ErrorCode::InvalidParameter,
                "expected " + std::to_string(n_doubles) + " doublings / " + std::to_string(n_adds) +
                    " additions, trace recorded " + std::to_string(trace.doublings) + " / " +
                    std::to_string(trace.additions));

  const ReferenceCounts ref = reference_counts(system);
  CountReport report{system, n_doubles, n_adds, trace, {}};
  for (TableColumn column : kColumns) {
    const TableCells* printed = nullptr;
    const OpCounts* measured = nullptr;
    std::uint64_t n = 0;
    switch (column) {
      case TableColumn::PointAdd:
        printed = &ref.point_add, measured = &trace.addition, n = n_adds;
        break;
      case TableColumn::PointDouble:
        printed = &ref.point_double, measured = &trace.doubling, n = n_doubles;
        break;
      case TableColumn::Conversion:
        printed = &ref.conversion, measured = &trace.convert, n = 1;
        break;
    }
    for (TableRow row : kRows) {
      CountCell cell{column, row, row_value(*printed, row), std::nullopt, std::nullopt};
      if (n > 0) {
        cell.measured = per_op(row_value(*measured, row), n);
        cell.deviation = *cell.measured - static_cast<double>(cell.printed);
      }
      report.cells.push_back(cell);
    }
  }
  return report;
}

void to_json(nlohmann::json& j, const CountReport& report) {
  j = nlohmann::json::object();
  j["system"] = std::string(to_string(report.system));
  j["n_doubles"] = report.n_doubles;
  j["n_adds"] = report.n_adds;
  j["phases"] = {
      {"init", counts_json(report.trace.init)},
      {"iterate", counts_json(report.trace.iterate())},
      {"iterate_double", counts_json(report.trace.doubling)},
      {"iterate_add", counts_json(report.trace.addition)},
      {"convert", counts_json(report.trace.convert)},
      {"total", counts_json(report.trace.total())},
  };
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : report.cells) {
    nlohmann::json jc = {
        {"column", std::string(to_string(c.column))},
        {"op", std::string(to_string(c.row))},
        {"printed", c.printed},
    };
    jc["measured"] = c.measured ? nlohmann::json(*c.measured) : nlohmann::json(nullptr);
    jc["deviation"] = c.deviation ? nlohmann::json(*c.deviation) : nlohmann::json(nullptr);
    cells.push_back(std::move(jc));
  }
  j["cells"] = std::move(cells);
}

ExpectedTotals expected_op_totals(CoordinateSystem system, std::uint64_t bit_length,
                                  std::uint64_t hamming) {
  if (bit_length < 1 || hamming < 1 || hamming > bit_length)
    throw Error(ErrorCode::InvalidParameter, "need 1 <= hamming <= bit length");
  const ReferenceCounts t = reference_counts(system);
  const std::uint64_t dbl = bit_length - 1, add = hamming - 1;
  ExpectedTotals out{};
  out.exact.add = dbl * t.point_double.add + add * t.point_add.add + t.conversion.add;
  out.exact.mul = dbl * t.point_double.mul + add * t.point_add.mul + t.conversion.mul;
  out.exact.inv = dbl * t.point_double.inv + add * t.point_add.inv + t.conversion.inv;
  out.exact.sqr = dbl * t.point_double.sqr + add * t.point_add.sqr + t.conversion.sqr;

  const double d = static_cast<double>(dbl);
  const double a = std::max(0.0, static_cast<double>(bit_length) / 2.0 - 1.0);
  auto avg = [&](std::uint64_t cd, std::uint64_t ca, std::uint64_t cx) {
    return d * static_cast<double>(cd) + a * static_cast<double>(ca) + static_cast<double>(cx);
  };
  out.average.add = avg(t.point_double.add, t.point_add.add, t.conversion.add);
  out.average.mul = avg(t.point_double.mul, t.point_add.mul, t.conversion.mul);
  out.average.inv = avg(t.point_double.inv, t.point_add.inv, t.conversion.inv);
  out.average.sqr = avg(t.point_double.sqr, t.point_add.sqr, t.conversion.sqr);
  return out;
}

}  // namespace ecnoc
