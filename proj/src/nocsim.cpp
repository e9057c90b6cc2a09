#include "ecnoc/nocsim.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

namespace ecnoc {

namespace {

std::uint64_t diff(unsigned a, unsigned b) { return a > b ? a - b : b - a; }

void require_in_mesh(const MeshConfig& mesh, Tile t) {
  if (!mesh.contains(t))
    throw Error(ErrorCode::OutOfMesh, "tile (" + std::to_string(t.col) + "," + std::to_string(t.row) +
                                          ") outside " + std::to_string(mesh.cols) + "x" +
                                          std::to_string(mesh.rows) + " mesh");
}

/// Core instances by descending usage / multiplicity of their role, then
/// role, then instance. Compared exactly by cross-multiplication.
std::vector<CoreId> cores_by_usage(const RoleCounts& roles, const RoleUsage& usage) {
  std::vector<CoreId> cores;
  for (CoreRole r : kCoreRoles)
    for (unsigned i = 0; i < roles[r]; ++i) cores.push_back({r, i});
  std::stable_sort(cores.begin(), cores.end(), [&](const CoreId& a, const CoreId& b) {
    const auto ua = usage[static_cast<std::size_t>(a.role)] * roles[b.role];
    const auto ub = usage[static_cast<std::size_t>(b.role)] * roles[a.role];
    if (ua != ub) return ua > ub;
    return a < b;
  });
  return cores;
}

std::vector<Tile> tiles_by_centrality(const MeshConfig& mesh, bool most_central_first) {
  std::vector<std::pair<std::size_t, Tile>> tiles;
  for (unsigned c = 0; c < mesh.cols; ++c)
    for (unsigned r = 0; r < mesh.rows; ++r) tiles.push_back({distance_sum(mesh, {c, r}), {c, r}});
  std::sort(tiles.begin(), tiles.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return most_central_first ? a.first < b.first : a.first > b.first;
    return a.second < b.second;
  });
  std::vector<Tile> out;
  for (const auto& [_, t] : tiles) out.push_back(t);
  return out;
}

Placement greedy_placement(const MeshConfig& mesh, const RoleCounts& roles, const RoleUsage& usage,
                           bool central) {
  mesh.validate();
  if (roles.total() > mesh.tiles())
    throw Error(ErrorCode::TooManyCores, std::to_string(roles.total()) + " cores on a " +
                                             std::to_string(mesh.cols) + "x" +
                                             std::to_string(mesh.rows) + " mesh");
  const auto cores = cores_by_usage(roles, usage);
  const auto tiles = tiles_by_centrality(mesh, central);
  Placement p;
  for (std::size_t i = 0; i < cores.size(); ++i) p.cores.push_back({cores[i], tiles[i]});
  return p;
}

/// Per-cycle occupancy of every directed link.
class LinkTable {
 public:
  explicit LinkTable(const MeshConfig& mesh) : mesh_(mesh), slots_(mesh.tiles() * 4) {}

  /// Earliest free cycle >= t on the link; marks it taken.
  std::uint64_t reserve(const Link& l, std::uint64_t t) {
    auto& used = slots_[index(l)];
    while (used.count(t) != 0) ++t;
    used.insert(t);
    return t;
  }

 private:
  std::size_t index(const Link& l) const {
    const std::size_t tile = static_cast<std::size_t>(l.from.row) * mesh_.cols + l.from.col;
    std::size_t dir;
    if (l.to.col > l.from.col) dir = 0;
    else if (l.to.col < l.from.col) dir = 1;
    else if (l.to.row > l.from.row) dir = 2;
    else dir = 3;
    return tile * 4 + dir;
  }

  const MeshConfig& mesh_;
  std::vector<std::set<std::uint64_t>> slots_;
};

}  // namespace

// ---- mesh / roles ----

MeshConfig MeshConfig::defaults(const FieldSpec& field) {
  MeshConfig m;
  m.flits_per_value = static_cast<unsigned>(std::max<std::size_t>(1, (field.element_bits() + 31) / 32));
  return m;
}

void MeshConfig::validate() const {
  if (cols == 0 || rows == 0 || hop_cycles == 0 || flits_per_value == 0)
    throw Error(ErrorCode::InvalidParameter, "mesh parameters must all be >= 1");
}

std::string_view to_string(CoreRole role) {
  switch (role) {
    case CoreRole::Ctrl: return "CTRL";
    case CoreRole::AddUnit: return "ADD_UNIT";
    case CoreRole::MulUnit: return "MUL_UNIT";
    case CoreRole::SqrUnit: return "SQR_UNIT";
    case CoreRole::InvUnit: return "INV_UNIT";
    case CoreRole::Io: return "IO";
  }
  return "?";
}

std::optional<CoreRole> core_role_from_string(std::string_view s) {
  for (CoreRole r : kCoreRoles)
    if (to_string(r) == s) return r;
  return std::nullopt;
}

CoreRole role_for(TaskKind kind) {
  switch (kind) {
    case TaskKind::Add:
    case TaskKind::Sub: return CoreRole::AddUnit;
    case TaskKind::Mul: return CoreRole::MulUnit;
    case TaskKind::Sqr: return CoreRole::SqrUnit;
    case TaskKind::Inv: return CoreRole::InvUnit;
    case TaskKind::Xfer: return CoreRole::Io;
  }
  return CoreRole::Ctrl;
}

unsigned RoleCounts::total() const {
  unsigned n = 0;
  for (unsigned c : count) n += c;
  return n;
}

RoleUsage role_usage(const TaskGraph& graph) {
  RoleUsage u{};
  for (const Task& t : graph.tasks()) ++u[static_cast<std::size_t>(role_for(t.kind))];
  return u;
}

std::string CoreId::to_string() const {
  return std::string(ecnoc::to_string(role)) + "#" + std::to_string(instance);
}

// ---- placement ----

void Placement::validate(const MeshConfig& mesh) const {
  std::set<Tile> tiles;
  std::set<CoreId> ids;
  for (const auto& e : cores) {
    require_in_mesh(mesh, e.tile);
    if (!tiles.insert(e.tile).second)
      throw Error(ErrorCode::InvalidParameter, e.core.to_string() + " shares tile (" +
                                                   std::to_string(e.tile.col) + "," +
                                                   std::to_string(e.tile.row) + ") with another core");
    if (!ids.insert(e.core).second)
      throw Error(ErrorCode::InvalidParameter, e.core.to_string() + " placed twice");
  }
}

std::optional<Tile> Placement::tile_of(const CoreId& core) const {
  for (const auto& e : cores)
    if (e.core == core) return e.tile;
  return std::nullopt;
}

std::size_t manhattan(Tile a, Tile b) { return diff(a.col, b.col) + diff(a.row, b.row); }

std::size_t distance_sum(const MeshConfig& mesh, Tile t) {
  std::size_t s = 0;
  for (unsigned c = 0; c < mesh.cols; ++c)
    for (unsigned r = 0; r < mesh.rows; ++r) s += manhattan(t, {c, r});
  return s;
}

std::vector<Link> xy_route(const MeshConfig& mesh, Tile src, Tile dst) {
  require_in_mesh(mesh, src);
  require_in_mesh(mesh, dst);
  std::vector<Link> route;
  Tile cur = src;
  while (cur.col != dst.col) {
    Tile next = cur;
    next.col = cur.col < dst.col ? cur.col + 1 : cur.col - 1;
    route.push_back({cur, next});
    cur = next;
  }
  while (cur.row != dst.row) {
    Tile next = cur;
    next.row = cur.row < dst.row ? cur.row + 1 : cur.row - 1;
    route.push_back({cur, next});
    cur = next;
  }
  return route;
}

Placement default_placement(const MeshConfig& mesh, const RoleCounts& roles, const RoleUsage& usage) {
  return greedy_placement(mesh, roles, usage, true);
}

Placement corner_first_placement(const MeshConfig& mesh, const RoleCounts& roles,
                                 const RoleUsage& usage) {
  return greedy_placement(mesh, roles, usage, false);
}

Placement parse_placement(std::istream& in) {
  Placement p;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string w; ls >> w;) tok.push_back(w);
    if (tok.empty()) continue;
    auto fail = [&](const std::string& what) {
      return Error(ErrorCode::ParseError, "placement line " + std::to_string(lineno) + ": " + what);
    };
    if (tok.size() != 4) throw fail("expected '<ROLE> <instance> <col> <row>'");
    const auto role = core_role_from_string(tok[0]);
    if (!role) throw fail("unknown role '" + tok[0] + "'");
    unsigned v[3];
    for (int i = 0; i < 3; ++i) {
      const std::string& s = tok[static_cast<std::size_t>(i) + 1];
      if (s.empty() || s.size() > 6 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw fail("bad number '" + s + "'");
      v[i] = static_cast<unsigned>(std::stoul(s));
    }
    p.cores.push_back({{*role, v[0]}, {v[1], v[2]}});
  }
  return p;
}

void write_placement(std::ostream& out, const Placement& placement) {
  for (const auto& e : placement.cores)
    out << to_string(e.core.role) << " " << e.core.instance << " " << e.tile.col << " " << e.tile.row
        << "\n";
}

// ---- simulation ----

std::uint64_t sequential_baseline(const TaskGraph& graph, const CostModel& costs) {
  std::uint64_t total = 0;
  for (const Task& t : graph.tasks()) total += costs.cost(t.kind);
  return total;
}

SimReport simulate(const TaskGraph& graph, const CostModel& costs, const MeshConfig& mesh,
                   const Placement& placement) {
  costs.validate();
  mesh.validate();
  placement.validate(mesh);

  const auto& tasks = graph.tasks();
  const std::size_t n = tasks.size();
  const auto succ = graph.successors();
  const auto level = bottom_levels(graph, costs);

  const auto& cores = placement.cores;
  std::map<CoreRole, std::vector<std::size_t>> by_role;
  for (std::size_t c = 0; c < cores.size(); ++c) by_role[cores[c].core.role].push_back(c);
  for (const Task& t : tasks)
    if (by_role[role_for(t.kind)].empty())
      throw Error(ErrorCode::MissingCoreRole, "no " + std::string(to_string(role_for(t.kind))) +
                                                  " core for " + std::string(to_string(t.kind)) +
                                                  " tasks");

  SimReport rep;
  rep.sequential_baseline_cycles = sequential_baseline(graph, costs);
  rep.critical_path_cycles = critical_path(graph, costs);

  LinkTable links(mesh);
  std::vector<std::uint64_t> core_free(cores.size(), 0), busy(cores.size(), 0);
  std::vector<std::size_t> task_core(n, 0);
  std::vector<std::uint64_t> finish(n, 0);
  std::vector<std::size_t> remaining(n, 0);
  std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> delivered;  // (producer, core) -> arrival
  std::map<Link, std::uint64_t> link_flits;
  rep.schedule.resize(n);

  const unsigned flits = mesh.flits_per_value;
  auto uncontended = [&](std::size_t producer, std::size_t core, std::uint64_t now) {
    const std::size_t src = task_core[producer];
    if (src == core) return finish[producer];
    if (auto it = delivered.find({producer, core}); it != delivered.end()) return it->second;
    const std::size_t hops = manhattan(cores[src].tile, cores[core].tile);
    return std::max(now, finish[producer]) + hops * mesh.hop_cycles + flits - 1;
  };

  auto send = [&](std::size_t producer, std::size_t core, std::uint64_t now) {
    const std::size_t src = task_core[producer];
    if (src == core) return finish[producer];
    if (auto it = delivered.find({producer, core}); it != delivered.end()) return it->second;
    const auto route = xy_route(mesh, cores[src].tile, cores[core].tile);
    Transfer tr{producer, cores[src].core, cores[core].core, std::max(now, finish[producer]), 0,
                flits, static_cast<unsigned>(route.size()), {}};
    std::vector<std::uint64_t> prev_flit(route.size(), 0);
    std::uint64_t last_exit = tr.inject;
    for (unsigned j = 0; j < flits; ++j) {
      std::uint64_t t = tr.inject;
      for (std::size_t i = 0; i < route.size(); ++i) {
        if (j > 0) t = std::max(t, prev_flit[i] + 1);
        const std::uint64_t slot = links.reserve(route[i], t);
        tr.flit_slots.push_back({route[i], slot});
        prev_flit[i] = slot;
        ++link_flits[route[i]];
        t = slot + mesh.hop_cycles;
      }
      last_exit = t;
    }
    tr.arrival = last_exit;
    rep.total_flit_hops += static_cast<std::uint64_t>(tr.flits) * tr.hops;
    rep.transfer_cycles += tr.arrival - tr.inject;
    delivered[{producer, core}] = tr.arrival;
    rep.transfers.push_back(std::move(tr));
    return rep.transfers.back().arrival;
  };

  // (ready time, -bottom level, id), smallest first.
  using Entry = std::tuple<std::uint64_t, std::int64_t, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> ready;
  for (std::size_t i = 0; i < n; ++i) {
    std::set<std::size_t> preds;
    for (const Operand& o : tasks[i].operands)
      if (o.is_task()) preds.insert(o.index);
    remaining[i] = preds.size();
    if (remaining[i] == 0) ready.push({0, -static_cast<std::int64_t>(level[i]), i});
  }

  std::size_t done = 0;
  while (!ready.empty()) {
    const auto [now, neg_level, id] = ready.top();
    ready.pop();
    const Task& t = tasks[id];

    std::vector<std::size_t> producers;
    for (const Operand& o : t.operands)
      if (o.is_task() && std::find(producers.begin(), producers.end(), o.index) == producers.end())
        producers.push_back(o.index);

    // Earliest estimated start, then fewest operand hops, then placement order.
    std::size_t best = 0;
    std::pair<std::uint64_t, std::size_t> best_key;
    bool have = false;
    for (std::size_t c : by_role[role_for(t.kind)]) {
      std::uint64_t est = std::max(core_free[c], now);
      std::size_t hops = 0;
      for (std::size_t p : producers) {
        est = std::max(est, uncontended(p, c, now));
        if (!delivered.count({p, c})) hops += manhattan(cores[task_core[p]].tile, cores[c].tile);
      }
      const std::pair key{est, hops};
      if (!have || key < best_key) {
        best = c;
        best_key = key;
        have = true;
      }
    }

    std::uint64_t start = std::max(core_free[best], now);
    for (std::size_t p : producers) start = std::max(start, send(p, best, now));
    const std::uint64_t end = start + costs.cost(t.kind);
    core_free[best] = end;
    busy[best] += costs.cost(t.kind);
    task_core[id] = best;
    finish[id] = end;
    rep.schedule[id] = {id, cores[best].core, start, end};
    rep.makespan_cycles = std::max(rep.makespan_cycles, end);
    ++done;

    for (std::size_t s : succ[id]) {
      if (--remaining[s] != 0) continue;
      std::uint64_t r = 0;
      for (const Operand& o : tasks[s].operands)
        if (o.is_task()) r = std::max(r, finish[o.index]);
      ready.push({r, -static_cast<std::int64_t>(level[s]), s});
    }
  }
  if (done != n) throw Error(ErrorCode::MalformedGraph, "simulation did not schedule every task");

  for (const auto& [l, f] : link_flits) rep.per_link_flits.push_back({l, f});
  for (std::size_t c = 0; c < cores.size(); ++c) rep.per_core_busy_cycles.push_back({cores[c].core, busy[c]});
  rep.speedup = rep.makespan_cycles == 0
                    ? 1.0
                    : static_cast<double>(rep.sequential_baseline_cycles) /
                          static_cast<double>(rep.makespan_cycles);
  return rep;
}

std::vector<PlacementRanking> compare_placements(const TaskGraph& graph, const CostModel& costs,
                                                 const MeshConfig& mesh,
                                                 const std::vector<NamedPlacement>& placements) {
  if (placements.size() < 2)
    throw Error(ErrorCode::InvalidParameter, "compare needs at least two placements");
  std::vector<PlacementRanking> out;
  for (std::size_t i = 0; i < placements.size(); ++i)
    out.push_back({0, i, placements[i].name, simulate(graph, costs, mesh, placements[i].placement)});
  std::stable_sort(out.begin(), out.end(), [](const PlacementRanking& a, const PlacementRanking& b) {
    return std::tie(a.report.makespan_cycles, a.report.total_flit_hops, a.input_index) <
           std::tie(b.report.makespan_cycles, b.report.total_flit_hops, b.input_index);
  });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = i + 1;
  return out;
}

// ---- output ----

void to_json(nlohmann::json& j, const SimReport& r) {
  using nlohmann::json;
  auto tile = [](Tile t) { return json::array({t.col, t.row}); };
  j = json::object();
  j["makespan_cycles"] = r.makespan_cycles;
  j["total_flit_hops"] = r.total_flit_hops;
  j["sequential_baseline_cycles"] = r.sequential_baseline_cycles;
  j["critical_path_cycles"] = r.critical_path_cycles;
  j["transfer_cycles"] = r.transfer_cycles;
  j["speedup"] = r.speedup;
  j["transfers"] = r.transfers.size();
  json links = json::array();
  for (const auto& [l, f] : r.per_link_flits)
    links.push_back({{"from", tile(l.from)}, {"to", tile(l.to)}, {"flits", f}});
  j["per_link_flits"] = std::move(links);
  json busy = json::array();
  for (const auto& [c, b] : r.per_core_busy_cycles)
    busy.push_back({{"core", c.to_string()}, {"busy_cycles", b}});
  j["per_core_busy_cycles"] = std::move(busy);
  json sched = json::array();
  for (const auto& s : r.schedule)
    sched.push_back({{"task", s.task}, {"core", s.core.to_string()}, {"start", s.start}, {"end", s.end}});
  j["schedule"] = std::move(sched);
}

void write_schedule_csv(std::ostream& out, const TaskGraph& graph, const SimReport& report) {
  out << "task,kind,core,start_cycle,end_cycle\n";
  for (const auto& s : report.schedule)
    out << s.task << "," << to_string(graph.tasks()[s.task].kind) << "," << s.core.to_string() << ","
        << s.start << "," << s.end << "\n";
}

}  // namespace ecnoc
