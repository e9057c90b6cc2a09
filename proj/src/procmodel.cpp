#include "ecnoc/procmodel.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "ecnoc/detail/binary_method.hpp"

namespace ecnoc {

namespace {

std::size_t arity(TaskKind kind) {
  switch (kind) {
    case TaskKind::Add:
    case TaskKind::Sub:
    case TaskKind::Mul: return 2;
    default: return 1;
  }
}

std::string_view to_string(PointOp op) {
  switch (op) {
    case PointOp::Double: return "Double";
    case PointOp::Add: return "Add";
    case PointOp::None: break;
  }
  return "-";
}

/// Backend that evaluates concretely (for the data-dependent branches) and
/// records every operation as a task.
class GraphArithmetic {
 public:
  struct Value {
    FieldElement value;
    Operand ref;
  };

  explicit GraphArithmetic(FieldPtr field) : field_(std::move(field)) {}

  Value add(const Value& a, const Value& b) { return emit(TaskKind::Add, ff_add(a.value, b.value), {a, b}); }
  Value sub(const Value& a, const Value& b) { return emit(TaskKind::Sub, ff_sub(a.value, b.value), {a, b}); }
  Value mul(const Value& a, const Value& b) { return emit(TaskKind::Mul, ff_mul(a.value, b.value), {a, b}); }
  Value sqr(const Value& a) { return emit(TaskKind::Sqr, ff_sqr(a.value), {a}); }
  Value inv(const Value& a) { return emit(TaskKind::Inv, ff_inv(a.value), {a}); }
  Value xfer(const Value& a) { return emit(TaskKind::Xfer, a.value, {a}); }

  Value constant(const FieldElement& e) {
    for (std::size_t i = 0; i < constants_.size(); ++i)
      if (constants_[i].value() == e.value()) return {constants_[i], Operand::constant(i)};
    constants_.push_back(e);
    return {e, Operand::constant(constants_.size() - 1)};
  }

  bool is_zero(const Value& v) const { return v.value.is_zero(); }

  void enter(Phase phase, PointOp op) {
    phase_ = phase;
    op_ = op;
    if (phase == Phase::Iterate) ++point_op_count_;
  }

  TaskGraph finish(TaskGraph::Result result) && {
    return TaskGraph(field_, std::move(constants_), std::move(tasks_), std::move(result));
  }

 private:
  Value emit(TaskKind kind, FieldElement value, std::initializer_list<Value> args) {
    Task t{tasks_.size(), kind, {}, phase_, op_, std::nullopt};
    if (phase_ == Phase::Iterate) t.point_op_index = point_op_count_;
    for (const Value& v : args) t.operands.push_back(v.ref);
    tasks_.push_back(std::move(t));
    return {std::move(value), Operand::task(tasks_.size() - 1)};
  }

  FieldPtr field_;
  std::vector<FieldElement> constants_;
  std::vector<Task> tasks_;
  Phase phase_ = Phase::Init;
  PointOp op_ = PointOp::None;
  std::size_t point_op_count_ = 0;
};

FieldOp field_op(TaskKind kind) {
  switch (kind) {
    case TaskKind::Add: return FieldOp::Add;
    case TaskKind::Sub: return FieldOp::Sub;
    case TaskKind::Mul: return FieldOp::Mul;
    case TaskKind::Sqr: return FieldOp::Sqr;
    case TaskKind::Inv: return FieldOp::Inv;
    case TaskKind::Xfer: break;
  }
  throw Error(ErrorCode::InvalidParameter, "XFER is not a field operation");
}

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::MalformedGraph, what); }

std::string operand_text(const Operand& o) {
  return (o.is_task() ? "t" : "c") + std::to_string(o.index);
}

}  // namespace

std::string_view to_string(TaskKind kind) {
  switch (kind) {
    case TaskKind::Add: return "ADD";
    case TaskKind::Sub: return "SUB";
    case TaskKind::Mul: return "MUL";
    case TaskKind::Sqr: return "SQR";
    case TaskKind::Inv: return "INV";
    case TaskKind::Xfer: return "XFER";
  }
  return "?";
}

std::optional<TaskKind> task_kind_from_string(std::string_view s) {
  for (TaskKind k : kTaskKinds)
    if (to_string(k) == s) return k;
  return std::nullopt;
}

// ---- TaskGraph ----

TaskGraph::TaskGraph(FieldPtr field, std::vector<FieldElement> constants, std::vector<Task> tasks,
                     Result result)
    : field_(std::move(field)),
      constants_(std::move(constants)),
      tasks_(std::move(tasks)),
      result_(std::move(result)) {
  if (!field_) malformed("graph without a field");
  for (const auto& c : constants_)
    if (!same_field(c.field(), field_)) throw Error(ErrorCode::FieldMismatch, "graph constant outside the graph field");
  auto check_operand = [&](const Operand& o, std::size_t limit, const std::string& where) {
    if (o.is_task()) {
      if (o.index >= limit)
        malformed(where + " references t" + std::to_string(o.index) + " which is not an earlier task");
    } else if (o.index >= constants_.size()) {
      malformed(where + " references missing constant c" + std::to_string(o.index));
    }
  };
  for (std::size_t i = 0; i < tasks_.size(); ++i) {
    const Task& t = tasks_[i];
    const std::string where = "task " + std::to_string(i);
    if (t.id != i) malformed(where + " carries id " + std::to_string(t.id));
    if (t.operands.size() != arity(t.kind))
      malformed(where + " (" + std::string(to_string(t.kind)) + ") has " +
                std::to_string(t.operands.size()) + " operands");
    if (t.kind == TaskKind::Inv && t.phase != Phase::Convert)
      malformed(where + " is an inversion outside the conversion phase");
    for (const Operand& o : t.operands) check_operand(o, i, where);
  }
  if (result_) {
    check_operand(result_->first, tasks_.size(), "result");
    check_operand(result_->second, tasks_.size(), "result");
  }
}

std::vector<std::vector<std::size_t>> TaskGraph::successors() const {
  std::vector<std::vector<std::size_t>> succ(tasks_.size());
  for (const Task& t : tasks_) {
    for (const Operand& o : t.operands) {
      if (!o.is_task()) continue;
      auto& s = succ[o.index];
      if (s.empty() || s.back() != t.id) s.push_back(t.id);
    }
  }
  return succ;
}

OpTrace TaskGraph::op_trace() const {
  OpTrace trace;
  for (const Task& t : tasks_) {
    if (t.kind == TaskKind::Xfer) continue;
    OpCounts* bucket = &trace.init;
    if (t.phase == Phase::Convert) {
      bucket = &trace.convert;
    } else if (t.phase == Phase::Iterate) {
      bucket = t.point_op == PointOp::Add ? &trace.addition : &trace.doubling;
    }
    ++(*bucket)[field_op(t.kind)];
  }
  return trace;
}

std::size_t TaskGraph::count(TaskKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(tasks_.begin(), tasks_.end(), [kind](const Task& t) { return t.kind == kind; }));
}

bool operator==(const TaskGraph& a, const TaskGraph& b) {
  if (!same_field(a.field_, b.field_) || a.constants_.size() != b.constants_.size()) return false;
  for (std::size_t i = 0; i < a.constants_.size(); ++i)
    if (a.constants_[i].value() != b.constants_[i].value()) return false;
  return a.tasks_ == b.tasks_ && a.result_ == b.result_;
}

// ---- CostModel ----

CostModel CostModel::defaults(FieldKind kind) {
  CostModel cm;
  cm.sqr = kind == FieldKind::Binary ? 1 : 2;
  return cm;
}

std::uint64_t CostModel::cost(TaskKind kind) const {
  switch (kind) {
    case TaskKind::Add: return add;
    case TaskKind::Sub: return sub;
    case TaskKind::Mul: return mul;
    case TaskKind::Sqr: return sqr;
    case TaskKind::Inv: return inv;
    case TaskKind::Xfer: return 0;
  }
  return 0;
}

void CostModel::validate() const {
  for (TaskKind k : {TaskKind::Add, TaskKind::Sub, TaskKind::Mul, TaskKind::Sqr, TaskKind::Inv})
    if (cost(k) == 0)
      throw Error(ErrorCode::InvalidParameter, "cost of " + std::string(to_string(k)) + " must be >= 1");
}

// ---- compile / replay ----

TaskGraph compile_scalar_mul(const CurveParams& curve, const Scalar& k, const AffinePoint& p) {
  if (!is_on_curve(curve, p)) throw Error(ErrorCode::NotOnCurve, p.to_string());
  GraphArithmetic ar(curve.field());
  if (k.is_zero() || p.is_infinity()) return std::move(ar).finish(std::nullopt);
  const auto px = ar.constant(p.x());
  const auto py = ar.constant(p.y());
  auto xy = detail::binary_method(ar, curve, k, px, py);
  if (!xy) return std::move(ar).finish(std::nullopt);
  const auto x = ar.xfer(xy->first);
  const auto y = ar.xfer(xy->second);
  return std::move(ar).finish(std::pair{x.ref, y.ref});
}

AffinePoint replay(const TaskGraph& graph, const CurveParams& curve) {
  if (!same_field(graph.field(), curve.field()))
    throw Error(ErrorCode::FieldMismatch, "graph and curve fields differ");
  std::vector<FieldElement> values;
  values.reserve(graph.size());
  auto fetch = [&](const Operand& o) -> const FieldElement& {
    if (o.is_task()) {
      if (o.index >= values.size()) malformed("dangling reference t" + std::to_string(o.index));
      return values[o.index];
    }
    if (o.index >= graph.constants().size()) malformed("dangling reference c" + std::to_string(o.index));
    return graph.constants()[o.index];
  };
  for (const Task& t : graph.tasks()) {
    const auto& ops = t.operands;
    switch (t.kind) {
      case TaskKind::Add: values.push_back(ff_add(fetch(ops[0]), fetch(ops[1]))); break;
      case TaskKind::Sub: values.push_back(ff_sub(fetch(ops[0]), fetch(ops[1]))); break;
      case TaskKind::Mul: values.push_back(ff_mul(fetch(ops[0]), fetch(ops[1]))); break;
      case TaskKind::Sqr: values.push_back(ff_sqr(fetch(ops[0]))); break;
      case TaskKind::Inv: values.push_back(ff_inv(fetch(ops[0]))); break;
      case TaskKind::Xfer: values.push_back(fetch(ops[0])); break;
    }
  }
  if (!graph.result()) return AffinePoint::infinity();
  return {fetch(graph.result()->first), fetch(graph.result()->second)};
}

std::vector<std::uint64_t> bottom_levels(const TaskGraph& graph, const CostModel& costs) {
  const auto succ = graph.successors();
  std::vector<std::uint64_t> level(graph.size(), 0);
  for (std::size_t i = graph.size(); i-- > 0;) {
    std::uint64_t best = 0;
    for (std::size_t s : succ[i]) best = std::max(best, level[s]);
    level[i] = best + costs.cost(graph.tasks()[i].kind);
  }
  return level;
}

std::uint64_t critical_path(const TaskGraph& graph, const CostModel& costs) {
  const auto level = bottom_levels(graph, costs);
  return level.empty() ? 0 : *std::max_element(level.begin(), level.end());
}

// ---- text format ----

void write_task_graph(std::ostream& out, const TaskGraph& graph) {
  const FieldSpec& f = *graph.field();
  out << "ecnoc-taskgraph 1\n";
  if (f.is_prime())
    out << "field prime " << f.modulus().to_hex() << "\n";
  else
    out << "field binary " << f.degree() << " " << f.reduction_poly().to_hex() << "\n";
  for (std::size_t i = 0; i < graph.constants().size(); ++i)
    out << "const " << i << " " << graph.constants()[i].to_hex() << "\n";
  for (const Task& t : graph.tasks()) {
    out << "task " << t.id << " " << to_string(t.kind) << " " << to_string(t.phase) << " "
        << to_string(t.point_op) << " "
        << (t.point_op_index ? std::to_string(*t.point_op_index) : std::string("-"));
    for (const Operand& o : t.operands) out << " " << operand_text(o);
    out << "\n";
  }
  if (graph.result())
    out << "result " << operand_text(graph.result()->first) << " "
        << operand_text(graph.result()->second) << "\n";
  else
    out << "result inf\n";
}

std::string task_graph_to_text(const TaskGraph& graph) {
  std::ostringstream os;
  write_task_graph(os, graph);
  return os.str();
}

TaskGraph parse_task_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& what) -> Error {
    return Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": " + what);
  };
  auto parse_index = [&](const std::string& s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) throw fail("bad index '" + s + "'");
    return static_cast<std::size_t>(std::stoull(s));
  };
  auto parse_hex = [&](const std::string& s) {
    auto v = U256::from_hex(s);
    if (!v) throw fail("bad hex value '" + s + "'");
    return *v;
  };
  auto parse_operand = [&](const std::string& s) {
    if (s.size() < 2 || (s[0] != 't' && s[0] != 'c')) throw fail("bad operand '" + s + "'");
    const std::size_t i = parse_index(s.substr(1));
    return s[0] == 't' ? Operand::task(i) : Operand::constant(i);
  };

  FieldPtr field;
  std::vector<FieldElement> constants;
  std::vector<Task> tasks;
  TaskGraph::Result result;
  bool have_header = false, have_result = false;

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string w; ls >> w;) tok.push_back(w);
    if (tok.empty() || tok[0].starts_with("#")) continue;
    if (!have_header) {
      if (tok.size() != 2 || tok[0] != "ecnoc-taskgraph" || tok[1] != "1")
        throw fail("expected header 'ecnoc-taskgraph 1'");
      have_header = true;
      continue;
    }
    if (have_result) throw fail("content after result line");
    if (tok[0] == "field") {
      if (field) throw fail("duplicate field line");
      try {
        if (tok.size() == 3 && tok[1] == "prime")
          field = FieldSpec::prime(parse_hex(tok[2]));
        else if (tok.size() == 4 && tok[1] == "binary")
          field = FieldSpec::binary(static_cast<unsigned>(parse_index(tok[2])), parse_hex(tok[3]));
        else
          throw fail("expected 'field prime <p>' or 'field binary <m> <f>'");
      } catch (const Error& e) {
        if (e.code() == ErrorCode::ParseError) throw;
        throw fail(e.what());
      }
    } else if (tok[0] == "const") {
      if (!field) throw fail("const before field");
      if (tok.size() != 3) throw fail("expected 'const <i> <hex>'");
      if (parse_index(tok[1]) != constants.size()) throw fail("constants must be numbered in order");
      const U256 v = parse_hex(tok[2]);
      if (!field->contains(v)) throw fail("constant is not a canonical field element");
      constants.emplace_back(field, v);
    } else if (tok[0] == "task") {
      if (tok.size() < 6) throw fail("expected 'task <id> <KIND> <Phase> <PointOp> <index> <operands>'");
      Task t{parse_index(tok[1]), TaskKind::Add, {}, Phase::Init, PointOp::None, std::nullopt};
      auto kind = task_kind_from_string(tok[2]);
      if (!kind) throw fail("unknown task kind '" + tok[2] + "'");
      t.kind = *kind;
      if (tok[3] == "Init") t.phase = Phase::Init;
      else if (tok[3] == "Iterate") t.phase = Phase::Iterate;
      else if (tok[3] == "Convert") t.phase = Phase::Convert;
      else throw fail("unknown phase '" + tok[3] + "'");
      if (tok[4] == "Double") t.point_op = PointOp::Double;
      else if (tok[4] == "Add") t.point_op = PointOp::Add;
      else if (tok[4] != "-") throw fail("unknown point op '" + tok[4] + "'");
      if (tok[5] != "-") t.point_op_index = parse_index(tok[5]);
      for (std::size_t i = 6; i < tok.size(); ++i) t.operands.push_back(parse_operand(tok[i]));
      if (t.id != tasks.size()) throw fail("tasks must be numbered in order");
      const bool unary = t.kind == TaskKind::Sqr || t.kind == TaskKind::Inv || t.kind == TaskKind::Xfer;
      if (t.operands.size() != (unary ? 1u : 2u))
        throw fail(std::string(to_string(t.kind)) + " takes " + (unary ? "1 operand" : "2 operands"));
      for (const Operand& o : t.operands) {
        if (o.is_task() && o.index >= t.id) throw fail("operand t" + std::to_string(o.index) + " is not an earlier task");
        if (!o.is_task() && o.index >= constants.size())
          throw fail("operand c" + std::to_string(o.index) + " is not a defined constant");
      }
      tasks.push_back(std::move(t));
    } else if (tok[0] == "result") {
      if (tok.size() == 2 && tok[1] == "inf") {
        result = std::nullopt;
      } else if (tok.size() == 3) {
        result = std::pair{parse_operand(tok[1]), parse_operand(tok[2])};
      } else {
        throw fail("expected 'result inf' or 'result <x> <y>'");
      }
      have_result = true;
    } else {
      throw fail("unknown record '" + tok[0] + "'");
    }
  }
  if (!have_header) throw Error(ErrorCode::ParseError, "empty task graph");
  if (!field) throw Error(ErrorCode::ParseError, "missing field line");
  if (!have_result) throw Error(ErrorCode::ParseError, "missing result line");
  return TaskGraph(field, std::move(constants), std::move(tasks), std::move(result));
}

TaskGraph task_graph_from_text(const std::string& text) {
  std::istringstream is(text);
  return parse_task_graph(is);
}

}  // namespace ecnoc
