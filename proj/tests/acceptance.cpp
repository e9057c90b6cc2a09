// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 on any failure.
//   acceptance                 run all criteria
//   acceptance --update-golden rewrite tests/golden/count_audit.json first

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "ecnoc/config.hpp"
#include "ecnoc/nocsim.hpp"
#include "ecnoc/procmodel.hpp"
#include "ecnoc/scalarmul.hpp"
#include "support/audit.hpp"
#include "support/fixtures.hpp"
#include "support/schedule_check.hpp"

using namespace ecnoc;

namespace {

/// Collects the first few failures of one criterion.
struct Check {
  std::size_t checks = 0, failures = 0;
  std::string first;
  void expect(bool ok, const std::function<std::string()>& what) {
    ++checks;
    if (ok) return;
    if (failures++ == 0) first = what();
  }
};

struct Toy {
  CurveSetup s;
  std::vector<AffinePoint> points;
  std::function<std::uint64_t(const AffinePoint&)> order;
};

std::vector<Toy> toys() {
  auto a = curve_preset("toy17");
  auto b = curve_preset("toy2_4");
  const auto oa = fixtures::toy17_oracle();
  const auto ob = fixtures::toy2_4_oracle();
  return {{a, fixtures::all_points(a.curve, oa),
           [oa](const AffinePoint& p) { return oracle::point_order(oa, fixtures::to_oracle(p)); }},
          {b, fixtures::all_points(b.curve, ob),
           [ob](const AffinePoint& p) { return oracle::point_order(ob, fixtures::to_oracle(p)); }}};
}

std::uint64_t full_width_scalar(std::mt19937_64& rng, std::size_t bits) {
  std::uint64_t k = rng();
  if (bits < 64) k &= (std::uint64_t{1} << bits) - 1;
  return k | (std::uint64_t{1} << (std::min<std::size_t>(bits, 64) - 1)) | 2;
}

void field_axioms(Check& c, const FieldElement& a, const FieldElement& b, const FieldElement& d) {
  const auto& f = a.field();
  const auto zero = FieldElement::zero(f), one = FieldElement::one(f);
  auto tag = [&] { return f->describe() + " a=" + a.to_hex() + " b=" + b.to_hex() + " c=" + d.to_hex(); };
  c.expect(a + b == b + a, tag);
  c.expect(a * b == b * a, tag);
  c.expect((a + b) + d == a + (b + d), tag);
  c.expect((a * b) * d == a * (b * d), tag);
  c.expect(a * (b + d) == a * b + a * d, tag);
  c.expect(a + zero == a && a * one == a, tag);
  c.expect(a + (-a) == zero && a - b == a + (-b), tag);
  c.expect(ff_sqr(a) == a * a, tag);
  if (!a.is_zero()) c.expect(a * ff_inv(a) == one && ff_inv(ff_inv(a)) == a, tag);
}

std::string criterion1() {
  Check c;
  for (const auto& f : {fixtures::gf17(), fixtures::gf2_3(), fixtures::gf2_4()}) {
    const auto all = fixtures::all_elements(f);
    for (const auto& a : all)
      for (const auto& b : all)
        for (const auto& d : all) field_axioms(c, a, b, d);
  }
  std::mt19937_64 rng(1001);
  for (const auto& f : {FieldSpec::prime(U256{0xfffffffbu}), FieldSpec::binary(33, U256{0x200000401u}),
                        FieldSpec::prime(U256{0xffffffffffffffc5u}), FieldSpec::binary(63, U256{0x8000000000000003u})})
    for (int i = 0; i < 1000; ++i)
      field_axioms(c, fixtures::random_element(f, rng), fixtures::random_element(f, rng),
                   fixtures::random_element(f, rng));
  if (c.failures) return c.first;
  return "";
}

std::string criterion2() {
  Check c;
  for (const auto& t : toys()) {
    const auto& cv = t.s.curve;
    const auto O = AffinePoint::infinity();
    for (const auto& p : t.points) {
      auto tag = [&] { return t.s.name + " P=" + p.to_string(); };
      c.expect(point_add_affine(cv, p, O) == p && point_add_affine(cv, O, p) == p, tag);
      c.expect(point_add_affine(cv, p, point_neg(cv, p)).is_infinity(), tag);
      const auto P = to_projective(cv, p);
      c.expect(to_affine(cv, P) == p, tag);
      c.expect(to_affine(cv, point_double_projective(cv, P)) == point_double_affine(cv, p), tag);
      for (const auto& q : t.points) {
        const auto s = point_add_affine(cv, p, q);
        c.expect(is_on_curve(cv, s), tag);
        c.expect(s == point_add_affine(cv, q, p), tag);
        if (!q.is_infinity()) c.expect(to_affine(cv, point_add_projective(cv, P, q)) == s, tag);
      }
    }
    std::mt19937_64 rng(2002);
    for (int i = 0; i < 500; ++i) {
      const auto& p = t.points[rng() % t.points.size()];
      const auto& q = t.points[rng() % t.points.size()];
      const auto& r = t.points[rng() % t.points.size()];
      c.expect(point_add_affine(cv, point_add_affine(cv, p, q), r) == point_add_affine(cv, p, point_add_affine(cv, q, r)),
               [&] { return t.s.name + " associativity " + p.to_string() + q.to_string() + r.to_string(); });
    }
  }
  std::mt19937_64 rng(2003);
  for (const char* name : {"p32", "b33"}) {
    const auto s = curve_preset(name);
    const auto& cv = s.curve;
    std::vector<AffinePoint> pts{s.base};
    for (int i = 0; i < 40; ++i) pts.push_back(point_add_affine(cv, pts.back(), point_double_affine(cv, pts[i / 2])));
    for (int i = 0; i < 500; ++i) {
      const auto& p = pts[rng() % pts.size()];
      const auto& q = pts[rng() % pts.size()];
      const auto& r = pts[rng() % pts.size()];
      c.expect(point_add_affine(cv, point_add_affine(cv, p, q), r) == point_add_affine(cv, p, point_add_affine(cv, q, r)),
               [&] { return std::string(name) + " associativity"; });
    }
  }
  return c.failures ? c.first : "";
}

std::string criterion3() {
  Check c;
  std::mt19937_64 rng(3003);
  for (const auto& t : toys()) {
    const auto& cv = t.s.curve;
    for (const auto& p : t.points) {
      for (std::uint64_t k = 0; k <= 64; ++k)
        c.expect(scalar_mul(cv, Scalar(k), p) == scalar_mul_reference(cv, Scalar(k), p),
                 [&] { return t.s.name + " k=" + std::to_string(k) + " P=" + p.to_string(); });
      const auto n = t.order(p);
      c.expect(scalar_mul(cv, Scalar(n), p).is_infinity() && scalar_mul(cv, Scalar(n + 1), p) == p,
               [&] { return t.s.name + " order " + std::to_string(n) + " P=" + p.to_string(); });
    }
    for (int i = 0; i < 200; ++i) {
      const Scalar k(rng() % (kReferenceBound + 1));
      const auto& p = t.points[rng() % t.points.size()];
      c.expect(scalar_mul(cv, k, p) == scalar_mul_reference(cv, k, p),
               [&] { return t.s.name + " k=0x" + k.to_hex() + " P=" + p.to_string(); });
    }
  }
  const auto t = toys();
  c.expect(t[0].order(t[0].s.base) == 19, [] { return std::string("toy17 base order is not 19"); });
  return c.failures ? c.first : "";
}

std::string criterion4() {
  Check c;
  auto run = [&](const CurveSetup& s, const Scalar& k, const AffinePoint& p) {
    OpTrace tr;
    const auto q = scalar_mul(s.curve, k, p, &tr);
    auto tag = [&] { return s.name + " k=0x" + k.to_hex() + " P=" + p.to_string(); };
    c.expect(tr.init.inv == 0 && tr.iterate().inv == 0, tag);
    // a point-at-infinity result has Z = 0 and skips the conversion
    c.expect(tr.convert.inv == (q.is_infinity() ? 0u : 1u), tag);
  };
  for (const auto& t : toys())
    for (const auto& p : t.points)
      for (std::uint64_t k = 2; k <= 64; ++k) run(t.s, Scalar(k), p);
  std::mt19937_64 rng(4004);
  for (const auto& name : preset_names()) {
    const auto s = curve_preset(name);
    for (int i = 0; i < 100; ++i) run(s, Scalar(2 + (rng() >> (rng() % 62))), s.base);
  }
  return c.failures ? c.first : "";
}

std::string criterion5() {
  Check c;
  const TableCells add{2, 4, 0, 1}, dbl{1, 2, 0, 4}, conv{6, 10, 1, 1};
  for (auto sys : {CoordinateSystem::Jacobian, CoordinateSystem::LopezDahab}) {
    const auto t = reference_counts(sys);
    c.expect(t.point_add == add && t.point_double == dbl && t.conversion == conv,
             [&] { return "printed cells differ for " + std::string(to_string(sys)); });
  }
  const auto audit = audit::count_audit();
  for (const auto& [sys, entry] : audit.items()) {
    const auto& cells = entry["report"]["cells"];
    c.expect(cells.size() == 12, [&] { return sys + ": expected 12 cells"; });
    const auto printed = reference_counts(sys == "jacobian" ? CoordinateSystem::Jacobian : CoordinateSystem::LopezDahab);
    for (const auto& cell : cells) {
      const std::string col = cell["column"], row = cell["op"];
      const TableCells& src = col == "M-Add" ? printed.point_add : col == "M-Double" ? printed.point_double : printed.conversion;
      const std::uint64_t want = row == "ADD" ? src.add : row == "MUL" ? src.mul : row == "INV" ? src.inv : src.sqr;
      c.expect(cell["printed"].get<std::uint64_t>() == want, [&] { return sys + " " + col + " " + row; });
      c.expect(cell["deviation"].get<double>() == cell["measured"].get<double>() - static_cast<double>(want),
               [&] { return sys + " deviation " + col + " " + row; });
    }
  }
  c.expect(audit::count_audit_text() == audit::count_audit_text(), [] { return std::string("audit not deterministic"); });
  const auto golden = audit::read_file(audit::golden_path());
  c.expect(!golden.empty(), [] { return "missing golden file " + audit::golden_path(); });
  c.expect(golden.empty() || golden == audit::count_audit_text(),
           [] { return std::string("audit differs from the golden file"); });
  return c.failures ? c.first : "";
}

std::string criterion6() {
  Check c;
  auto run = [&](const CurveSetup& s, const Scalar& k, const AffinePoint& p) {
    c.expect(replay(compile_scalar_mul(s.curve, k, p), s.curve) == scalar_mul(s.curve, k, p),
             [&] { return s.name + " k=0x" + k.to_hex() + " P=" + p.to_string(); });
  };
  for (const auto& t : toys())
    for (const auto& p : t.points)
      for (std::uint64_t k = 0; k <= 64; ++k) run(t.s, Scalar(k), p);
  std::mt19937_64 rng(6006);
  for (const auto& name : preset_names()) {
    const auto s = curve_preset(name);
    for (int i = 0; i < 20; ++i) run(s, Scalar(rng() >> (rng() % 62)), s.base);
  }
  return c.failures ? c.first : "";
}

std::string criterion7() {
  Check c;
  const MeshConfig m43{};
  for (unsigned a = 0; a < 12; ++a)
    for (unsigned b = 0; b < 12; ++b) {
      const Tile s{a % 4, a / 4}, d{b % 4, b / 4};
      const auto r = xy_route(m43, s, d);
      bool ordered = true, seen_y = false;
      Tile cur = s;
      for (const auto& l : r) {
        ordered = ordered && l.from == cur && manhattan(l.from, l.to) == 1;
        const bool y = l.from.col == l.to.col;
        ordered = ordered && !(seen_y && !y);
        seen_y = seen_y || y;
        cur = l.to;
      }
      c.expect(r.size() == manhattan(s, d) && ordered && cur == d,
               [&] { return "route " + std::to_string(a) + " -> " + std::to_string(b); });
    }

  auto run = [&](const CurveSetup& s, const Scalar& k) {
    const auto g = compile_scalar_mul(s.curve, k, s.base);
    const auto f = s.curve.field();
    const auto cm = CostModel::defaults(f->kind());
    const auto mesh = MeshConfig::defaults(*f);
    const auto usage = role_usage(g);
    for (const auto& pl : {default_placement(mesh, RoleCounts{}, usage), corner_first_placement(mesh, RoleCounts{}, usage)}) {
      const auto r1 = simulate(g, cm, mesh, pl);
      const auto why = schedule_check::validate(g, cm, mesh, pl, r1);
      c.expect(why.empty(), [&] { return s.name + " k=0x" + k.to_hex() + ": " + why; });
      const auto r2 = simulate(g, cm, mesh, pl);
      std::ostringstream c1, c2;
      write_schedule_csv(c1, g, r1);
      write_schedule_csv(c2, g, r2);
      c.expect(nlohmann::json(r1).dump() == nlohmann::json(r2).dump() && c1.str() == c2.str(),
               [&] { return s.name + " k=0x" + k.to_hex() + ": runs differ"; });
    }
  };
  for (const auto& t : toys())
    for (std::uint64_t k = 0; k <= 64; ++k) run(t.s, Scalar(k));
  std::mt19937_64 rng(7007);
  for (const auto& name : preset_names()) {
    const auto s = curve_preset(name);
    for (int i = 0; i < 10; ++i) run(s, Scalar(rng() >> (rng() % 62)));
  }
  return c.failures ? c.first : "";
}

std::string criterion8(std::string& summary) {
  Check c;
  std::mt19937_64 rng(8008);
  double worst = 1e9;
  std::size_t graphs = 0;
  for (const char* name : {"p16", "p32", "p64", "b17", "b33", "b63"}) {
    const auto s = curve_preset(name);
    const auto f = s.curve.field();
    const auto cm = CostModel::defaults(f->kind());
    const auto mesh = MeshConfig::defaults(*f);
    for (int i = 0; i < 50; ++i) {
      const Scalar k(full_width_scalar(rng, f->element_bits()));
      const auto g = compile_scalar_mul(s.curve, k, s.base);
      const auto usage = role_usage(g);
      const auto d = simulate(g, cm, mesh, default_placement(mesh, RoleCounts{}, usage));
      const auto x = simulate(g, cm, mesh, corner_first_placement(mesh, RoleCounts{}, usage));
      ++graphs;
      worst = std::min(worst, d.speedup);
      c.expect(d.total_flit_hops <= x.total_flit_hops, [&] {
        return std::string(name) + " k=0x" + k.to_hex() + ": flit-hops " + std::to_string(d.total_flit_hops) +
               " > corner-first " + std::to_string(x.total_flit_hops);
      });
      c.expect(d.makespan_cycles < d.sequential_baseline_cycles, [&] {
        return std::string(name) + " k=0x" + k.to_hex() + ": makespan " + std::to_string(d.makespan_cycles) +
               " >= baseline " + std::to_string(d.sequential_baseline_cycles);
      });
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%zu graphs, min speedup %.3f", graphs, worst);
  summary = buf;
  return c.failures ? c.first : "";
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--update-golden") {
      std::ofstream(audit::golden_path(), std::ios::binary) << audit::count_audit_text();
      std::cout << "wrote " << audit::golden_path() << "\n";
    } else {
      std::cerr << "usage: acceptance [--update-golden]\n";
      return 2;
    }
  }

  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<std::string(std::string&)> body;
  };
  const Criterion criteria[] = {
      {1, "field axioms", 10, [](std::string&) { return criterion1(); }},
      {2, "group law", 0, [](std::string&) { return criterion2(); }},
      {3, "scalar multiplication vs oracle", 0, [](std::string&) { return criterion3(); }},
      {4, "inversion discipline", 0, [](std::string&) { return criterion4(); }},
      {5, "operation-count audit", 0, [](std::string&) { return criterion5(); }},
      {6, "task-graph replay", 0, [](std::string&) { return criterion6(); }},
      {7, "NoC invariants", 0, [](std::string&) { return criterion7(); }},
      {8, "default placement vs corner-first", 60, criterion8},
  };

  int failed = 0;
  for (const auto& cr : criteria) {
    std::string summary, why;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      why = cr.body(summary);
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (why.empty() && cr.limit_s > 0 && s >= cr.limit_s) why = "took longer than " + std::to_string(int(cr.limit_s)) + " s";
    char time[32];
    std::snprintf(time, sizeof time, "%.2f s", s);
    std::cout << (why.empty() ? "PASS" : "FAIL") << " criterion " << cr.id << ": " << cr.name << " (" << time
              << (summary.empty() ? "" : ", " + summary) << ")" << (why.empty() ? "" : " -- " + why) << "\n";
    if (!why.empty()) ++failed;
  }
  return failed ? 1 : 0;
}
