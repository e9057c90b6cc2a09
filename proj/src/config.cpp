#include "ecnoc/config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

namespace ecnoc {

namespace {

struct PresetText {
  const char* name;
  bool prime;
  unsigned degree;
  const char* modulus;
  const char* a;
  const char* b;
  const char* gx;
  const char* gy;
  const char* order;
};

constexpr PresetText kPresets[] = {
    {"toy17", true, 0, "11", "2", "2", "5", "1", "13"},
    {"toy2_4", false, 4, "13", "8", "9", "2", "f", "16"},
    {"p16", true, 0, "fff1", "2", "3", "1", "76cb", nullptr},
    {"p32", true, 0, "fffffffb", "2", "3", "2", "3bf04ca9", nullptr},
    {"p64", true, 0, "ffffffffffffffc5", "2", "3", "1", "34987f5c859e6e23", nullptr},
    {"b17", false, 17, "20009", "1", "3", "3", "17589", nullptr},
    {"b33", false, 33, "200000401", "1", "3", "5", "186d97524", nullptr},
    {"b63", false, 63, "8000000000000003", "1", "3", "3", "688080038003033c", nullptr},
};

U256 hex(const char* s) { return *U256::from_hex(s); }

CurveSetup build_curve(const std::string& name, const FieldPtr& field, const U256& a, const U256& b,
                       const U256& gx, const U256& gy, std::optional<U256> order) {
  auto el = [&](const U256& v) { return FieldElement(field, v); };
  return CurveSetup{name, CurveParams(el(a), el(b)), AffinePoint(el(gx), el(gy)), order};
}

class Parser {
 public:
  Parser(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  RunConfig run() {
    RunConfig cfg;
    std::string line, section;
    std::map<std::string, std::pair<std::string, std::size_t>> curve;
    while (std::getline(in_, line)) {
      ++lineno_;
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') throw fail("unterminated section header");
        section = trim(line.substr(1, line.size() - 2));
        if (section != "curve" && section != "mesh" && section != "roles" && section != "costs")
          throw fail("unknown section [" + section + "]");
        if (!seen_.insert(section).second) throw fail("duplicate section [" + section + "]");
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw fail("expected 'key = value'");
      const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
      if (key.empty() || value.empty()) throw fail("expected 'key = value'");
      if (section.empty()) throw fail("key '" + key + "' outside any section");
      if (!keys_.insert(section + "." + key).second) throw fail("duplicate key '" + key + "'");

      if (section == "curve") {
        static const char* known[] = {"field", "p", "degree", "poly", "a", "b", "gx", "gy", "order"};
        if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return key == k; }) ==
            std::end(known))
          throw fail("unknown key '" + key + "' in [curve]");
        curve[key] = {value, lineno_};
      } else if (section == "mesh") {
        if (key == "cols") cfg.cols = small(value);
        else if (key == "rows") cfg.rows = small(value);
        else if (key == "hop_cycles") cfg.hop_cycles = small(value);
        else if (key == "flits_per_value") cfg.flits_per_value = small(value);
        else throw fail("unknown key '" + key + "' in [mesh]");
      } else if (section == "roles") {
        const auto role = core_role_from_string(key);
        if (!role) throw fail("unknown key '" + key + "' in [roles]");
        cfg.roles[static_cast<std::size_t>(*role)] = small(value);
      } else {
        if (key == "add") cfg.cost_add = number(value);
        else if (key == "sub") cfg.cost_sub = number(value);
        else if (key == "mul") cfg.cost_mul = number(value);
        else if (key == "sqr") cfg.cost_sqr = number(value);
        else if (key == "inv") cfg.cost_inv = number(value);
        else throw fail("unknown key '" + key + "' in [costs]");
      }
    }
    if (seen_.count("curve")) cfg.curve = build(curve);
    return cfg;
  }

 private:
  static std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
  }

  Error fail(const std::string& what, std::size_t line = 0) const {
    return Error(ErrorCode::ParseError, (source_.empty() ? "" : source_ + ":") + "line " +
                                             std::to_string(line ? line : lineno_) + ": " + what);
  }

  std::uint64_t number(const std::string& v) const {
    if (v.size() > 18 || !std::all_of(v.begin(), v.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw fail("expected a decimal number, got '" + v + "'");
    return std::stoull(v);
  }

  unsigned small(const std::string& v) const {
    const auto n = number(v);
    if (n > 1u << 20) throw fail("value " + v + " too large");
    return static_cast<unsigned>(n);
  }

  CurveSetup build(const std::map<std::string, std::pair<std::string, std::size_t>>& kv) const {
    auto get = [&](const std::string& k) -> const std::pair<std::string, std::size_t>& {
      auto it = kv.find(k);
      if (it == kv.end()) throw fail("[curve] is missing '" + k + "'");
      return it->second;
    };
    auto hexval = [&](const std::string& k) {
      const auto& [v, line] = get(k);
      auto parsed = U256::from_hex(v);
      if (!parsed) throw fail("'" + k + "' is not a hex value: '" + v + "'", line);
      return *parsed;
    };
    const auto& [kind, kind_line] = get("field");
    FieldPtr field;
    if (kind == "prime") {
      for (const char* k : {"degree", "poly"})
        if (kv.count(k)) throw fail("'" + std::string(k) + "' is only valid for binary fields", kv.at(k).second);
      field = FieldSpec::prime(hexval("p"));
    } else if (kind == "binary") {
      if (kv.count("p")) throw fail("'p' is only valid for prime fields", kv.at("p").second);
      const auto& [deg, deg_line] = get("degree");
      std::uint64_t m = 0;
      try {
        m = number(deg);
      } catch (const Error&) {
        throw fail("'degree' must be decimal, got '" + deg + "'", deg_line);
      }
      field = FieldSpec::binary(static_cast<unsigned>(std::min<std::uint64_t>(m, 1u << 20)), hexval("poly"));
    } else {
      throw fail("field must be 'prime' or 'binary', got '" + kind + "'", kind_line);
    }
    std::optional<U256> order;
    if (kv.count("order")) order = hexval("order");
    auto element = [&](const std::string& k) {
      const U256 v = hexval(k);
      if (!field->contains(v)) throw fail("'" + k + "' is not a field element", get(k).second);
      return v;
    };
    return build_curve("config", field, element("a"), element("b"), element("gx"), element("gy"), order);
  }

  std::istream& in_;
  std::string source_;
  std::size_t lineno_ = 0;
  std::set<std::string> seen_;
  std::set<std::string> keys_;
};

}  // namespace

MeshConfig RunConfig::mesh_for(const FieldSpec& field) const {
  MeshConfig m = MeshConfig::defaults(field);
  if (cols) m.cols = *cols;
  if (rows) m.rows = *rows;
  if (hop_cycles) m.hop_cycles = *hop_cycles;
  if (flits_per_value) m.flits_per_value = *flits_per_value;
  return m;
}

RoleCounts RunConfig::role_counts() const {
  RoleCounts rc;
  for (std::size_t i = 0; i < roles.size(); ++i)
    if (roles[i]) rc.count[i] = *roles[i];
  return rc;
}

CostModel RunConfig::costs_for(FieldKind kind) const {
  CostModel cm = CostModel::defaults(kind);
  if (cost_add) cm.add = *cost_add;
  if (cost_sub) cm.sub = *cost_sub;
  if (cost_mul) cm.mul = *cost_mul;
  if (cost_sqr) cm.sqr = *cost_sqr;
  if (cost_inv) cm.inv = *cost_inv;
  return cm;
}

RunConfig parse_run_config(std::istream& in, const std::string& source) {
  return Parser(in, source).run();
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidParameter, "cannot open config file '" + path + "'");
  return parse_run_config(in, path);
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& p : kPresets) v.emplace_back(p.name);
    return v;
  }();
  return names;
}

CurveSetup curve_preset(const std::string& name) {
  for (const auto& p : kPresets) {
    if (name != p.name) continue;
    const FieldPtr field = p.prime ? FieldSpec::prime(hex(p.modulus)) : FieldSpec::binary(p.degree, hex(p.modulus));
    std::optional<U256> order;
    if (p.order) order = hex(p.order);
    return build_curve(p.name, field, hex(p.a), hex(p.b), hex(p.gx), hex(p.gy), order);
  }
  throw Error(ErrorCode::InvalidParameter, "unknown curve preset '" + name + "'");
}

}  // namespace ecnoc
