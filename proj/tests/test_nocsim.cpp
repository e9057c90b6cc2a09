#include <gtest/gtest.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "ecnoc/config.hpp"
#include "ecnoc/nocsim.hpp"
#include "support/fixtures.hpp"
#include "support/schedule_check.hpp"

using namespace ecnoc;

namespace {

MeshConfig mesh43() { return MeshConfig{}; }

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "nothing thrown";
  return ErrorCode::ParseError;
}

struct Run {
  TaskGraph graph;
  CostModel costs;
  MeshConfig mesh;
};

Run compiled(const std::string& preset, std::uint64_t k) {
  auto s = curve_preset(preset);
  auto g = compile_scalar_mul(s.curve, Scalar(k), s.base);
  auto f = s.curve.field();
  return {std::move(g), CostModel::defaults(f->kind()), MeshConfig::defaults(*f)};
}

Placement mirrored(const Placement& p, const MeshConfig& m, bool cols, bool rows) {
  Placement out = p;
  for (auto& e : out.cores) {
    if (cols) e.tile.col = m.cols - 1 - e.tile.col;
    if (rows) e.tile.row = m.rows - 1 - e.tile.row;
  }
  return out;
}

}  // namespace

TEST(Routing, FrozenExamples) {
  const auto m = mesh43();
  EXPECT_EQ(xy_route(m, {0, 0}, {3, 2}).size(), 5u);
  EXPECT_TRUE(xy_route(m, {2, 1}, {2, 1}).empty());
  const auto r = xy_route(m, {1, 2}, {3, 0});
  ASSERT_EQ(r.size(), 4u);
  EXPECT_EQ(r[0].to, (Tile{2, 2}));
  EXPECT_EQ(r[1].to, (Tile{3, 2}));
  EXPECT_EQ(r[2].to, (Tile{3, 1}));
  EXPECT_EQ(r[3].to, (Tile{3, 0}));
}

TEST(Routing, ExhaustiveXYOrderAndLength) {
  const auto m = mesh43();
  for (unsigned a = 0; a < 12; ++a)
    for (unsigned b = 0; b < 12; ++b) {
      const Tile s{a % 4, a / 4}, d{b % 4, b / 4};
      const auto r = xy_route(m, s, d);
      ASSERT_EQ(r.size(), manhattan(s, d));
      Tile cur = s;
      bool in_y = false;
      for (const auto& l : r) {
        ASSERT_EQ(l.from, cur);
        ASSERT_EQ(manhattan(l.from, l.to), 1u);
        const bool y_step = l.from.col == l.to.col;
        ASSERT_FALSE(in_y && !y_step) << "X step after Y step";
        in_y = in_y || y_step;
        cur = l.to;
      }
      ASSERT_EQ(cur, d);
    }
}

TEST(Routing, OutOfMesh) {
  EXPECT_EQ(code_of([] { xy_route(mesh43(), {4, 0}, {0, 0}); }), ErrorCode::OutOfMesh);
  EXPECT_EQ(code_of([] { xy_route(mesh43(), {0, 0}, {0, 3}); }), ErrorCode::OutOfMesh);
}

TEST(Placement, DistanceSums) {
  const auto m = mesh43();
  EXPECT_EQ(distance_sum(m, {1, 1}), 20u);
  EXPECT_EQ(distance_sum(m, {2, 1}), 20u);
  EXPECT_EQ(distance_sum(m, {1, 0}), 24u);
  EXPECT_EQ(distance_sum(m, {0, 1}), 26u);
  EXPECT_EQ(distance_sum(m, {0, 0}), 30u);
  EXPECT_EQ(distance_sum(m, {3, 2}), 30u);
}

TEST(Placement, BusiestCoresInTheMiddle) {
  const auto m = mesh43();
  RoleUsage usage{};
  usage[static_cast<std::size_t>(CoreRole::MulUnit)] = 400;
  usage[static_cast<std::size_t>(CoreRole::AddUnit)] = 90;
  usage[static_cast<std::size_t>(CoreRole::SqrUnit)] = 100;
  usage[static_cast<std::size_t>(CoreRole::InvUnit)] = 1;
  usage[static_cast<std::size_t>(CoreRole::Io)] = 2;
  const auto p = default_placement(m, RoleCounts{}, usage);
  ASSERT_NO_THROW(p.validate(m));
  ASSERT_EQ(p.cores.size(), 12u);
  EXPECT_EQ(*p.tile_of({CoreRole::MulUnit, 0}), (Tile{1, 1}));
  EXPECT_EQ(*p.tile_of({CoreRole::MulUnit, 1}), (Tile{2, 1}));
  EXPECT_EQ(*p.tile_of({CoreRole::MulUnit, 2}), (Tile{1, 0}));
  // least used go to the corners: CTRL (0), INV (1), IO (2), then the last ADD unit
  std::set<Tile> corners = {{0, 0}, {0, 2}, {3, 0}, {3, 2}};
  for (CoreId c : {CoreId{CoreRole::Ctrl, 0}, CoreId{CoreRole::InvUnit, 0}, CoreId{CoreRole::Io, 0}})
    EXPECT_TRUE(corners.count(*p.tile_of(c))) << c.to_string();

  const auto q = corner_first_placement(m, RoleCounts{}, usage);
  ASSERT_NO_THROW(q.validate(m));
  EXPECT_TRUE(corners.count(*q.tile_of({CoreRole::MulUnit, 0})));
  EXPECT_EQ(*q.tile_of({CoreRole::Ctrl, 0}), (Tile{2, 1}));
}

TEST(Placement, SingleCore) {
  RoleCounts one;
  one.count = {0, 0, 1, 0, 0, 0};
  for (auto [cols, rows, want] : {std::tuple{4u, 3u, Tile{1, 1}}, {3u, 3u, Tile{1, 1}}, {2u, 2u, Tile{0, 0}},
                                  {1u, 1u, Tile{0, 0}}}) {
    MeshConfig m{cols, rows, 1, 1};
    EXPECT_EQ(default_placement(m, one, RoleUsage{}).cores.at(0).tile, want);
  }
}

TEST(Placement, Errors) {
  MeshConfig small{3, 3, 1, 1};
  EXPECT_EQ(code_of([&] { default_placement(small, RoleCounts{}, RoleUsage{}); }), ErrorCode::TooManyCores);
  EXPECT_EQ(code_of([&] { corner_first_placement(small, RoleCounts{}, RoleUsage{}); }), ErrorCode::TooManyCores);
  Placement p{{{{CoreRole::MulUnit, 0}, {0, 0}}, {{CoreRole::AddUnit, 0}, {0, 0}}}};
  EXPECT_EQ(code_of([&] { p.validate(mesh43()); }), ErrorCode::InvalidParameter);
  Placement q{{{{CoreRole::MulUnit, 0}, {4, 0}}}};
  EXPECT_EQ(code_of([&] { q.validate(mesh43()); }), ErrorCode::OutOfMesh);
  Placement d{{{{CoreRole::MulUnit, 0}, {0, 0}}, {{CoreRole::MulUnit, 0}, {1, 0}}}};
  EXPECT_EQ(code_of([&] { d.validate(mesh43()); }), ErrorCode::InvalidParameter);
  EXPECT_EQ(code_of([] { MeshConfig{4, 3, 0, 1}.validate(); }), ErrorCode::InvalidParameter);
}

TEST(Placement, FileRoundTrip) {
  const auto p = default_placement(mesh43(), RoleCounts{}, RoleUsage{1, 2, 3, 4, 5, 6});
  std::stringstream ss;
  write_placement(ss, p);
  EXPECT_EQ(parse_placement(ss), p);
  std::istringstream text("# comment\nMUL_UNIT 0 1 1\n\nIO 0 3 2  # trailing\n");
  const auto q = parse_placement(text);
  ASSERT_EQ(q.cores.size(), 2u);
  EXPECT_EQ(q.cores[1].core, (CoreId{CoreRole::Io, 0}));
  std::istringstream bad("MUL_UNIT 0 1 1\nFOO 0 1 1\n");
  try {
    parse_placement(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(Simulate, SingleMulHandTrace) {
  auto f = fixtures::gf17();
  const TaskGraph g(f, {fixtures::el(f, 3), fixtures::el(f, 5)},
                    {Task{0, TaskKind::Mul, {Operand::constant(0), Operand::constant(1)}, Phase::Iterate, PointOp::None, std::nullopt},
                     Task{1, TaskKind::Xfer, {Operand::task(0)}, Phase::Convert, PointOp::None, std::nullopt}},
                    std::pair{Operand::task(1), Operand::task(1)});
  const MeshConfig m{4, 3, 1, 2};
  const Placement p{{{{CoreRole::MulUnit, 0}, {0, 0}}, {{CoreRole::Io, 0}, {1, 0}}}};
  const CostModel cm;
  const auto r = simulate(g, cm, m, p);
  // MUL 0..4, flit 0 on the link at 4, flit 1 at 5, both across by 6
  EXPECT_EQ(r.makespan_cycles, 6u);
  EXPECT_EQ(r.total_flit_hops, 2u);
  ASSERT_EQ(r.transfers.size(), 1u);
  EXPECT_EQ(r.transfers[0].inject, 4u);
  EXPECT_EQ(r.transfers[0].arrival, 6u);
  EXPECT_EQ(r.schedule[1].start, 6u);
  EXPECT_EQ(r.sequential_baseline_cycles, 4u);
  EXPECT_EQ(schedule_check::validate(g, cm, m, p, r), "");
}

TEST(Simulate, SequentialBaseline) {
  auto f = fixtures::gf17();
  const auto c0 = Operand::constant(0);
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < 3; ++i) tasks.push_back({i, TaskKind::Mul, {c0, c0}, Phase::Iterate, PointOp::None, std::nullopt});
  for (std::size_t i = 3; i < 5; ++i) tasks.push_back({i, TaskKind::Add, {c0, c0}, Phase::Iterate, PointOp::None, std::nullopt});
  const TaskGraph g(f, {fixtures::el(f, 3)}, tasks, std::nullopt);
  EXPECT_EQ(sequential_baseline(g, CostModel{}), 14u);
  EXPECT_EQ(sequential_baseline(TaskGraph(f, {}, {}, std::nullopt), CostModel{}), 0u);
  EXPECT_GE(sequential_baseline(g, CostModel{}), critical_path(g, CostModel{}));
}

TEST(Simulate, EmptyAndConversionOnlyGraphs) {
  auto r0 = compiled("toy17", 0);
  const auto p0 = default_placement(r0.mesh, RoleCounts{}, role_usage(r0.graph));
  const auto s0 = simulate(r0.graph, r0.costs, r0.mesh, p0);
  EXPECT_EQ(s0.makespan_cycles, 0u);
  EXPECT_EQ(s0.speedup, 1.0);

  auto r1 = compiled("toy17", 1);
  for (const auto& t : r1.graph.tasks()) EXPECT_NE(t.phase, Phase::Iterate);
  const auto p1 = default_placement(r1.mesh, RoleCounts{}, role_usage(r1.graph));
  const auto s1 = simulate(r1.graph, r1.costs, r1.mesh, p1);
  EXPECT_GE(s1.makespan_cycles, s1.critical_path_cycles);
  EXPECT_EQ(schedule_check::validate(r1.graph, r1.costs, r1.mesh, p1, s1), "");
}

TEST(Simulate, InvariantsOnCompiledGraphs) {
  std::mt19937_64 rng(77);
  for (const auto& name : preset_names()) {
    for (int i = 0; i < 6; ++i) {
      auto r = compiled(name, rng() >> (rng() % 56));
      const auto usage = role_usage(r.graph);
      for (const auto& p : {default_placement(r.mesh, RoleCounts{}, usage),
                            corner_first_placement(r.mesh, RoleCounts{}, usage)}) {
        const auto s = simulate(r.graph, r.costs, r.mesh, p);
        ASSERT_EQ(schedule_check::validate(r.graph, r.costs, r.mesh, p, s), "") << name;
      }
    }
  }
}

TEST(Simulate, ContentionAndSlowLinks) {
  auto r = compiled("b17", 0xbeef);
  for (MeshConfig m : {MeshConfig{4, 3, 3, 4}, MeshConfig{6, 2, 2, 1}, MeshConfig{12, 1, 1, 3}}) {
    const auto p = default_placement(m, RoleCounts{}, role_usage(r.graph));
    const auto s = simulate(r.graph, r.costs, m, p);
    EXPECT_EQ(schedule_check::validate(r.graph, r.costs, m, p, s), "") << m.cols << "x" << m.rows;
  }
  RoleCounts lean;
  lean.count = {0, 1, 1, 1, 1, 1};
  const auto p = default_placement(mesh43(), lean, role_usage(r.graph));
  const auto s = simulate(r.graph, r.costs, mesh43(), p);
  EXPECT_EQ(schedule_check::validate(r.graph, r.costs, mesh43(), p, s), "");
}

TEST(Simulate, Determinism) {
  auto r = compiled("p32", 0xdeadbeef);
  const auto p = default_placement(r.mesh, RoleCounts{}, role_usage(r.graph));
  const auto a = nlohmann::json(simulate(r.graph, r.costs, r.mesh, p)).dump();
  const auto b = nlohmann::json(simulate(r.graph, r.costs, r.mesh, p)).dump();
  EXPECT_EQ(a, b);
  std::ostringstream ca, cb;
  write_schedule_csv(ca, r.graph, simulate(r.graph, r.costs, r.mesh, p));
  write_schedule_csv(cb, r.graph, simulate(r.graph, r.costs, r.mesh, p));
  EXPECT_EQ(ca.str(), cb.str());
  EXPECT_EQ(ca.str().substr(0, 38), "task,kind,core,start_cycle,end_cycle\n0");
}

TEST(Simulate, MissingRole) {
  auto r = compiled("toy17", 7);
  RoleCounts no_inv;
  no_inv.count = {1, 3, 4, 2, 0, 1};
  const auto p = default_placement(r.mesh, no_inv, role_usage(r.graph));
  EXPECT_EQ(code_of([&] { simulate(r.graph, r.costs, r.mesh, p); }), ErrorCode::MissingCoreRole);
}

TEST(Simulate, MirrorSymmetry) {
  auto r = compiled("b33", 0x1f00ff);
  const auto p = default_placement(r.mesh, RoleCounts{}, role_usage(r.graph));
  const auto base = simulate(r.graph, r.costs, r.mesh, p);
  for (auto [c, w] : {std::pair{true, false}, {false, true}, {true, true}}) {
    const auto s = simulate(r.graph, r.costs, r.mesh, mirrored(p, r.mesh, c, w));
    EXPECT_EQ(s.total_flit_hops, base.total_flit_hops);
    EXPECT_EQ(s.makespan_cycles, base.makespan_cycles);
  }
}

TEST(Simulate, ReportJsonReparses) {
  auto r = compiled("toy2_4", 13);
  const auto p = default_placement(r.mesh, RoleCounts{}, role_usage(r.graph));
  const auto s = simulate(r.graph, r.costs, r.mesh, p);
  const auto j = nlohmann::json::parse(nlohmann::json(s).dump(2));
  EXPECT_EQ(j["makespan_cycles"].get<std::uint64_t>(), s.makespan_cycles);
  EXPECT_EQ(j["total_flit_hops"].get<std::uint64_t>(), s.total_flit_hops);
  EXPECT_EQ(j["schedule"].size(), r.graph.size());
  EXPECT_DOUBLE_EQ(j["speedup"].get<double>(), s.speedup);
}

TEST(Compare, RankingAndDuplicates) {
  auto r = compiled("p16", 0xb00b);
  const auto usage = role_usage(r.graph);
  const auto d = default_placement(r.mesh, RoleCounts{}, usage);
  const auto c = corner_first_placement(r.mesh, RoleCounts{}, usage);
  const auto ranked = compare_placements(r.graph, r.costs, r.mesh, {{"corner", c}, {"default", d}, {"again", d}});
  ASSERT_EQ(ranked.size(), 3u);
  EXPECT_EQ(ranked[0].name, "default");
  EXPECT_EQ(ranked[1].name, "again");
  EXPECT_EQ(ranked[0].report.total_flit_hops, ranked[1].report.total_flit_hops);
  EXPECT_EQ(ranked[0].report.makespan_cycles, ranked[1].report.makespan_cycles);
  EXPECT_EQ(ranked[2].name, "corner");
  EXPECT_LE(ranked[0].report.total_flit_hops, ranked[2].report.total_flit_hops);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(ranked[i].rank, i + 1);
  EXPECT_EQ(code_of([&] { compare_placements(r.graph, r.costs, r.mesh, {{"only", d}}); }), ErrorCode::InvalidParameter);
}
