#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ecnoc/fields.hpp"
#include "ecnoc/procmodel.hpp"

namespace ecnoc {

/// Mesh coordinate; col is the X dimension, row the Y dimension.
struct Tile {
  unsigned col = 0;
  unsigned row = 0;
  friend auto operator<=>(const Tile&, const Tile&) = default;
};

/// Directed router-to-router link between neighbouring tiles.
struct Link {
  Tile from;
  Tile to;
  friend auto operator<=>(const Link&, const Link&) = default;
};

struct MeshConfig {
  unsigned cols = 4;
  unsigned rows = 3;
  unsigned hop_cycles = 1;
  unsigned flits_per_value = 1;

  /// 4x3 mesh, 1 cycle per hop, ceil(field bits / 32) flits per value.
  static MeshConfig defaults(const FieldSpec& field);

  std::size_t tiles() const { return static_cast<std::size_t>(cols) * rows; }
  bool contains(Tile t) const { return t.col < cols && t.row < rows; }
  /// Throws InvalidParameter when any parameter is 0.
  void validate() const;
};

enum class CoreRole { Ctrl, AddUnit, MulUnit, SqrUnit, InvUnit, Io };

inline constexpr std::array<CoreRole, 6> kCoreRoles = {CoreRole::Ctrl,    CoreRole::AddUnit,
                                                       CoreRole::MulUnit, CoreRole::SqrUnit,
                                                       CoreRole::InvUnit, CoreRole::Io};

std::string_view to_string(CoreRole role);
std::optional<CoreRole> core_role_from_string(std::string_view s);

/// Functional unit that executes a task kind (SUB runs on ADD units).
CoreRole role_for(TaskKind kind);

/// Core multiplicity per role, indexed by CoreRole.
struct RoleCounts {
  std::array<unsigned, 6> count{1, 3, 4, 2, 1, 1};  // 12 cores

  unsigned& operator[](CoreRole r) { return count[static_cast<std::size_t>(r)]; }
  unsigned operator[](CoreRole r) const { return count[static_cast<std::size_t>(r)]; }
  unsigned total() const;
};

/// Tasks per role, indexed by CoreRole.
using RoleUsage = std::array<std::uint64_t, 6>;
RoleUsage role_usage(const TaskGraph& graph);

struct CoreId {
  CoreRole role;
  unsigned instance;
  friend auto operator<=>(const CoreId&, const CoreId&) = default;
  std::string to_string() const;  // e.g. "MUL_UNIT#2"
};

/// Injective map from core instances to mesh tiles.
struct Placement {
  struct Entry {
    CoreId core;
    Tile tile;
    friend bool operator==(const Entry&, const Entry&) = default;
  };
  std::vector<Entry> cores;

  /// Throws OutOfMesh, or InvalidParameter for shared tiles / duplicate cores.
  void validate(const MeshConfig& mesh) const;
  std::optional<Tile> tile_of(const CoreId& core) const;

  friend bool operator==(const Placement&, const Placement&) = default;
};

/// X-first then Y dimension-order route. Throws OutOfMesh.
std::vector<Link> xy_route(const MeshConfig& mesh, Tile src, Tile dst);

std::size_t manhattan(Tile a, Tile b);

/// Sum of Manhattan distances from t to every tile of the mesh.
std::size_t distance_sum(const MeshConfig& mesh, Tile t);

/// Busiest cores on the most central tiles. Tiles by ascending distance sum,
/// then (col, row); cores by descending usage per instance of their role
/// (usage / multiplicity), then role enum order, then instance. Throws TooManyCores.
Placement default_placement(const MeshConfig& mesh, const RoleCounts& roles, const RoleUsage& usage);
/// The reverse assignment: busiest cores in the corners.
Placement corner_first_placement(const MeshConfig& mesh, const RoleCounts& roles,
                                 const RoleUsage& usage);

/// Placement file: one "<ROLE> <instance> <col> <row>" per line, '#' comments.
Placement parse_placement(std::istream& in);
void write_placement(std::ostream& out, const Placement& placement);

struct ScheduledTask {
  std::size_t task;
  CoreId core;
  std::uint64_t start;
  std::uint64_t end;
};

/// One operand packet from the producing core to a consuming core.
struct Transfer {
  std::size_t producer;
  CoreId src;
  CoreId dst;
  std::uint64_t inject;
  std::uint64_t arrival;
  unsigned flits;
  unsigned hops;
  /// (link, cycle at which a flit enters it), for every flit on every hop.
  std::vector<std::pair<Link, std::uint64_t>> flit_slots;
};

struct SimReport {
  std::uint64_t makespan_cycles = 0;
  std::uint64_t total_flit_hops = 0;
  std::uint64_t sequential_baseline_cycles = 0;
  std::uint64_t critical_path_cycles = 0;
  /// Sum over transfers of (arrival - inject), contention included.
  std::uint64_t transfer_cycles = 0;
  double speedup = 1.0;
  std::vector<std::pair<Link, std::uint64_t>> per_link_flits;      ///< links that carried traffic
  std::vector<std::pair<CoreId, std::uint64_t>> per_core_busy_cycles;  ///< placement order
  std::vector<ScheduledTask> schedule;                             ///< task order
  std::vector<Transfer> transfers;                                 ///< injection order
};

/// Sum of task costs on a single ALU with free data movement.
std::uint64_t sequential_baseline(const TaskGraph& graph, const CostModel& costs);

/// Deterministic list-scheduled execution of the graph on the placed cores.
/// Throws MissingCoreRole, OutOfMesh, InvalidParameter.
SimReport simulate(const TaskGraph& graph, const CostModel& costs, const MeshConfig& mesh,
                   const Placement& placement);

struct NamedPlacement {
  std::string name;
  Placement placement;
};

struct PlacementRanking {
  std::size_t rank;  ///< 1-based
  std::size_t input_index;
  std::string name;
  SimReport report;
};

/// Ranked by makespan, then flit-hops, then input order. Needs >= 2 placements.
std::vector<PlacementRanking> compare_placements(const TaskGraph& graph, const CostModel& costs,
                                                 const MeshConfig& mesh,
                                                 const std::vector<NamedPlacement>& placements);

void to_json(nlohmann::json& j, const SimReport& report);
/// "task,kind,core,start_cycle,end_cycle" rows in task order.
void write_schedule_csv(std::ostream& out, const TaskGraph& graph, const SimReport& report);

}  // namespace ecnoc
