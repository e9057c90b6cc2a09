#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ecnoc/nocsim.hpp"
#include "ecnoc/procmodel.hpp"

namespace ecnoc::cli {

namespace {

using nlohmann::json;

struct Context {
  RunConfig config;
  CurveSetup setup;
};

Context load(const Options& opt) {
  Context ctx{opt.config.empty() ? RunConfig{} : load_run_config(opt.config), curve_preset("toy17")};
  if (ctx.config.curve) {
    if (!opt.curve.empty())
      throw Error(ErrorCode::InvalidParameter, "--curve conflicts with the [curve] section of " + opt.config);
    ctx.setup = *ctx.config.curve;
  } else if (!opt.curve.empty()) {
    ctx.setup = curve_preset(opt.curve);
  }
  if (opt.format != "human" && opt.format != "json" && opt.format != "csv")
    throw Error(ErrorCode::InvalidParameter, "unknown format '" + opt.format + "'");
  return ctx;
}

Scalar scalar_for(const Options& opt, const FieldSpec& field) {
  if (!opt.k.empty()) return Scalar::parse(opt.k);
  std::mt19937_64 rng(opt.seed);
  const std::size_t bits = std::min<std::size_t>(field.element_bits(), 64);
  std::uint64_t k = rng();
  if (bits < 64) k &= (std::uint64_t{1} << bits) - 1;
  return Scalar(std::max<std::uint64_t>(k, 2));
}

json point_json(const AffinePoint& p) {
  if (p.is_infinity()) return "infinity";
  return {{"x", p.x().to_hex()}, {"y", p.y().to_hex()}};
}

json counts_json(const OpCounts& c) {
  json j = json::object();
  for (FieldOp op : kFieldOps) j[std::string(to_string(op))] = c[op];
  return j;
}

json trace_json(const OpTrace& t) {
  return {{"doublings", t.doublings},
          {"additions", t.additions},
          {"init", counts_json(t.init)},
          {"iterate_double", counts_json(t.doubling)},
          {"iterate_add", counts_json(t.addition)},
          {"convert", counts_json(t.convert)},
          {"total", counts_json(t.total())}};
}

void print_counts(std::ostream& out, const char* label, const OpCounts& c) {
  out << "  " << std::left << std::setw(16) << label;
  for (FieldOp op : kFieldOps) out << " " << to_string(op) << "=" << c[op];
  out << "\n";
}

TaskGraph graph_for(const Options& opt, const Context& ctx) {
  if (!opt.graph.empty()) {
    std::ifstream in(opt.graph);
    if (!in) throw Error(ErrorCode::InvalidParameter, "cannot open task graph '" + opt.graph + "'");
    return parse_task_graph(in);
  }
  return compile_scalar_mul(ctx.setup.curve, scalar_for(opt, *ctx.setup.curve.field()),
                            ctx.setup.base);
}

Placement read_placement(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidParameter, "cannot open placement file '" + path + "'");
  try {
    return parse_placement(in);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + std::string(e.what()).substr(to_string(e.code()).size() + 2));
  }
}

std::string format_speedup(double s) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << s;
  return os.str();
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return 2;
}

}  // namespace

int cmd_mul(const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opt.k.empty()) throw Error(ErrorCode::InvalidParameter, "mul needs --k");
    const Context ctx = load(opt);
    const Scalar k = Scalar::parse(opt.k);
    const auto& curve = ctx.setup.curve;
    OpTrace trace;
    const AffinePoint q = scalar_mul(curve, k, ctx.setup.base, &trace);
    std::optional<CountReport> report;
    if (trace.doublings + trace.additions > 0)
      report = count_report(curve.system(), trace, trace.doublings, trace.additions);

    if (opt.format == "json") {
      json j = {{"curve", ctx.setup.name},
                {"system", std::string(to_string(curve.system()))},
                {"k", k.to_hex()},
                {"base", point_json(ctx.setup.base)},
                {"result", point_json(q)},
                {"trace", trace_json(trace)}};
      j["count_report"] = report ? json(*report) : json(nullptr);
      out << j.dump(2) << "\n";
    } else if (opt.format == "csv") {
      out << "column,op,printed,measured,deviation\n";
      if (report)
        for (const auto& c : report->cells)
          out << to_string(c.column) << "," << to_string(c.row) << "," << c.printed << "," << *c.measured
              << "," << *c.deviation << "\n";
    } else {
      out << "kP = " << q.to_string() << "\n";
      out << "system " << to_string(curve.system()) << ", " << trace.doublings << " doublings, "
          << trace.additions << " additions\n";
      print_counts(out, "init", trace.init);
      print_counts(out, "iterate/double", trace.doubling);
      print_counts(out, "iterate/add", trace.addition);
      print_counts(out, "convert", trace.convert);
      print_counts(out, "total", trace.total());
      if (report) {
        out << "per-operation counts (printed | measured):\n";
        for (const auto& c : report->cells)
          out << "  " << std::left << std::setw(9) << to_string(c.column) << std::setw(4)
              << to_string(c.row) << " " << c.printed << " | " << *c.measured << "\n";
      }
    }
    return 0;
  });
}

int cmd_verify(const Options& opt, std::ostream& out, std::ostream& err, const MulFn& mul) {
  return guarded(err, [&] {
    const Context ctx = load(opt);
    const MulFn f = mul ? mul : MulFn([](const CurveParams& c, const Scalar& k, const AffinePoint& p) {
      return scalar_mul(c, k, p);
    });

    const auto colon = opt.k_range.find(':');
    if (colon == std::string::npos)
      throw Error(ErrorCode::ParseError, "k-range must be '<from>:<to>', got '" + opt.k_range + "'");
    const Scalar lo = Scalar::parse(opt.k_range.substr(0, colon));
    const Scalar hi = Scalar::parse(opt.k_range.substr(colon + 1));

    std::vector<Scalar> ks;
    if (lo.value() <= hi.value()) {
      if (hi.value() > U256{kReferenceBound})
        throw Error(ErrorCode::OracleBoundExceeded, "k-range ends above 65536");
      for (std::uint64_t k = lo.value().low(); k <= hi.value().low(); ++k) ks.emplace_back(k);
    }
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<std::uint64_t> dist(0, kReferenceBound);
    for (unsigned i = 0; i < opt.samples; ++i) ks.emplace_back(dist(rng));
    if (ks.empty()) {
      err << "warning: empty k-range, nothing verified\n";
      return 0;
    }

    for (const Scalar& k : ks) {
      const AffinePoint got = f(ctx.setup.curve, k, ctx.setup.base);
      const AffinePoint want = scalar_mul_reference(ctx.setup.curve, k, ctx.setup.base);
      if (!(got == want)) {
        out << "MISMATCH k=0x" << k.to_hex() << " P=" << ctx.setup.base.to_string()
            << " scalar_mul=" << got.to_string() << " reference=" << want.to_string() << "\n";
        return 1;
      }
    }
    out << "verified " << ks.size() << " scalars on " << ctx.setup.name << "\n";
    return 0;
  });
}

int cmd_simulate(const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Context ctx = load(opt);
    const TaskGraph g = graph_for(opt, ctx);
    const FieldSpec& field = *g.field();
    const MeshConfig mesh = ctx.config.mesh_for(field);
    const CostModel costs = ctx.config.costs_for(field.kind());
    Placement pl;
    if (opt.placements.size() > 1)
      throw Error(ErrorCode::InvalidParameter, "simulate takes at most one --placement");
    if (opt.placements.empty())
      pl = default_placement(mesh, ctx.config.role_counts(), role_usage(g));
    else
      pl = read_placement(opt.placements.front());
    const SimReport rep = simulate(g, costs, mesh, pl);

    const std::string report_json = json(rep).dump(2) + "\n";
    std::ostringstream csv;
    write_schedule_csv(csv, g, rep);
    if (!opt.out.empty()) {
      std::filesystem::create_directories(opt.out);
      std::ofstream(std::filesystem::path(opt.out) / "report.json") << report_json;
      std::ofstream(std::filesystem::path(opt.out) / "schedule.csv") << csv.str();
    }
    if (opt.format == "json")
      out << report_json;
    else if (opt.format == "csv")
      out << csv.str();
    else
      out << "tasks " << g.size() << "\nmakespan " << rep.makespan_cycles << " cycles\nflit-hops "
          << rep.total_flit_hops << "\nsequential baseline " << rep.sequential_baseline_cycles
          << " cycles\ncritical path " << rep.critical_path_cycles << " cycles\nspeedup "
          << format_speedup(rep.speedup) << "\n";
    return 0;
  });
}

int cmd_compare(const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Context ctx = load(opt);
    const TaskGraph g = graph_for(opt, ctx);
    const FieldSpec& field = *g.field();
    const MeshConfig mesh = ctx.config.mesh_for(field);
    const CostModel costs = ctx.config.costs_for(field.kind());
    std::vector<NamedPlacement> named;
    if (opt.placements.empty()) {
      const RoleCounts roles = ctx.config.role_counts();
      const RoleUsage usage = role_usage(g);
      named.push_back({"default", default_placement(mesh, roles, usage)});
      named.push_back({"corner-first", corner_first_placement(mesh, roles, usage)});
    } else {
      for (const auto& path : opt.placements) named.push_back({path, read_placement(path)});
    }
    const auto ranking = compare_placements(g, costs, mesh, named);

    if (opt.format == "json") {
      json rows = json::array();
      for (const auto& r : ranking)
        rows.push_back({{"rank", r.rank},
                        {"placement", r.name},
                        {"makespan_cycles", r.report.makespan_cycles},
                        {"total_flit_hops", r.report.total_flit_hops},
                        {"speedup", r.report.speedup}});
      out << rows.dump(2) << "\n";
    } else if (opt.format == "csv") {
      out << "rank,placement,makespan_cycles,total_flit_hops,speedup\n";
      for (const auto& r : ranking)
        out << r.rank << "," << r.name << "," << r.report.makespan_cycles << "," << r.report.total_flit_hops
            << "," << format_speedup(r.report.speedup) << "\n";
    } else {
      out << "rank  makespan  flit-hops  speedup  placement\n";
      for (const auto& r : ranking)
        out << std::left << std::setw(6) << r.rank << std::setw(10) << r.report.makespan_cycles
            << std::setw(11) << r.report.total_flit_hops << std::setw(9) << format_speedup(r.report.speedup)
            << r.name << "\n";
    }
    return 0;
  });
}

int cmd_graph(const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Context ctx = load(opt);
    const TaskGraph g = graph_for(opt, ctx);
    if (opt.out.empty()) {
      write_task_graph(out, g);
    } else {
      std::ofstream f(opt.out);
      if (!f) throw Error(ErrorCode::InvalidParameter, "cannot write '" + opt.out + "'");
      write_task_graph(f, g);
    }
    return 0;
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Elliptic-curve scalar multiplication and mesh NoC simulation"};
  app.require_subcommand(1);
  Options opt;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--curve", opt.curve, "built-in curve preset")
        ->check(CLI::IsMember(preset_names()));
    sub->add_option("--config", opt.config, "run configuration file");
    sub->add_option("--k", opt.k, "scalar, decimal or 0x-hex");
    sub->add_option("--format", opt.format, "output format")->check(CLI::IsMember({"human", "json", "csv"}));
    sub->add_option("--seed", opt.seed, "seed for randomly drawn scalars");
  };

  auto* mul = app.add_subcommand("mul", "compute kP and its operation counts");
  common(mul);
  auto* verify = app.add_subcommand("verify", "check scalar_mul against repeated addition");
  common(verify);
  verify->add_option("--k-range", opt.k_range, "inclusive range <from>:<to>");
  verify->add_option("--samples", opt.samples, "additional random scalars <= 65536");
  auto* sim = app.add_subcommand("simulate", "simulate the task graph on the mesh");
  common(sim);
  sim->add_option("--placement", opt.placements, "placement file");
  sim->add_option("--graph", opt.graph, "task graph file instead of compiling one");
  sim->add_option("--out", opt.out, "directory for report.json and schedule.csv");
  auto* cmp = app.add_subcommand("compare", "rank placements by makespan, then flit-hops");
  common(cmp);
  cmp->add_option("--placement", opt.placements, "placement file (repeat)");
  cmp->add_option("--graph", opt.graph, "task graph file instead of compiling one");
  auto* graph = app.add_subcommand("graph", "print the task graph of kP");
  common(graph);
  graph->add_option("--out", opt.out, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  if (*mul) return cmd_mul(opt, out, err);
  if (*verify) return cmd_verify(opt, out, err);
  if (*sim) return cmd_simulate(opt, out, err);
  if (*cmp) return cmd_compare(opt, out, err);
  return cmd_graph(opt, out, err);
}

}  // namespace ecnoc::cli
