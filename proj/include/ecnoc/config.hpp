#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ecnoc/curves.hpp"
#include "ecnoc/nocsim.hpp"
#include "ecnoc/procmodel.hpp"

namespace ecnoc {

/// A curve together with its base point.
struct CurveSetup {
  std::string name;
  CurveParams curve;
  AffinePoint base;
  std::optional<U256> order;  ///< order of the base point, when known
};

/// Contents of a run configuration file:
///
///   # comment
///   [curve]
///   field = prime            # or binary
///   p = fff1                 # prime fields
///   degree = 17              # binary fields, decimal
///   poly = 20009             # binary fields, bit i = coefficient of z^i
///   a = 2
///   b = 3
///   gx = 1
///   gy = 76cb
///   order = ...              # optional
///   [mesh]   cols rows hop_cycles flits_per_value
///   [roles]  CTRL ADD_UNIT MUL_UNIT SQR_UNIT INV_UNIT IO
///   [costs]  add sub mul sqr inv
///
/// Field values are hex (optional 0x prefix), everything else decimal.
/// Unset mesh/cost entries fall back to the field-dependent defaults.
struct RunConfig {
  std::optional<CurveSetup> curve;
  std::optional<unsigned> cols, rows, hop_cycles, flits_per_value;
  std::array<std::optional<unsigned>, 6> roles;
  std::optional<std::uint64_t> cost_add, cost_sub, cost_mul, cost_sqr, cost_inv;

  MeshConfig mesh_for(const FieldSpec& field) const;
  RoleCounts role_counts() const;
  CostModel costs_for(FieldKind kind) const;
};

/// Throws ParseError naming the line, or the curve/field validation error.
RunConfig parse_run_config(std::istream& in, const std::string& source = "");
RunConfig load_run_config(const std::string& path);

/// Built-in curves: toy17, toy2_4, p16, p32, p64, b17, b33, b63.
const std::vector<std::string>& preset_names();
/// Throws InvalidParameter for an unknown name.
CurveSetup curve_preset(const std::string& name);

}  // namespace ecnoc
