#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "ecnoc/config.hpp"
#include "ecnoc/scalarmul.hpp"

namespace ecnoc::cli {

struct Options {
  std::string curve;   ///< preset name; toy17 when neither this nor a config curve is given
  std::string config;  ///< run configuration file
  std::string k;       ///< decimal or 0x-hex; random (from seed) when empty, except for mul
  std::string out;     ///< output file (graph) or directory (simulate)
  std::string format = "human";
  std::uint64_t seed = 1;
  std::vector<std::string> placements;
  std::string graph;        ///< task-graph text file for simulate
  std::string k_range = "0:64";
  unsigned samples = 0;     ///< extra random k <= 2^16 for verify
};

using MulFn = std::function<AffinePoint(const CurveParams&, const Scalar&, const AffinePoint&)>;

int cmd_mul(const Options& opt, std::ostream& out, std::ostream& err);
/// Compares `mul` with the repeated-addition oracle; prints the first mismatch.
int cmd_verify(const Options& opt, std::ostream& out, std::ostream& err, const MulFn& mul = {});
int cmd_simulate(const Options& opt, std::ostream& out, std::ostream& err);
int cmd_compare(const Options& opt, std::ostream& out, std::ostream& err);
int cmd_graph(const Options& opt, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches. Returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ecnoc::cli
