#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ecnoc/curves.hpp"
#include "ecnoc/op_counts.hpp"
#include "ecnoc/scalarmul.hpp"

namespace ecnoc {

/// Work item executed by one functional unit. XFER moves a value to the IO
/// core and has no arithmetic cost.
enum class TaskKind { Add, Sub, Mul, Sqr, Inv, Xfer };

inline constexpr std::array<TaskKind, 6> kTaskKinds = {TaskKind::Add, TaskKind::Sub, TaskKind::Mul,
                                                       TaskKind::Sqr, TaskKind::Inv, TaskKind::Xfer};

std::string_view to_string(TaskKind kind);
std::optional<TaskKind> task_kind_from_string(std::string_view s);

/// Reference to an earlier task's result or to a graph constant (curve
/// coefficients, base-point coordinates, 0 and 1).
struct Operand {
  enum class Source { Task, Constant };
  Source source;
  std::size_t index;

  static Operand task(std::size_t i) { return {Source::Task, i}; }
  static Operand constant(std::size_t i) { return {Source::Constant, i}; }
  bool is_task() const { return source == Source::Task; }

  friend bool operator==(const Operand&, const Operand&) = default;
};

struct Task {
  std::size_t id;
  TaskKind kind;
  std::vector<Operand> operands;
  Phase phase;
  PointOp point_op = PointOp::None;
  /// 1-based position of the producing doubling/addition in the iteration.
  std::optional<std::size_t> point_op_index;

  friend bool operator==(const Task&, const Task&) = default;
};

/// Straight-line dependency DAG of field operations for one scalar
/// multiplication. Validated on construction: tasks are numbered 0..n-1,
/// operands reference only earlier tasks or existing constants, arities
/// match, INV occurs only in the Convert phase.
class TaskGraph {
 public:
  using Result = std::optional<std::pair<Operand, Operand>>;

  TaskGraph(FieldPtr field, std::vector<FieldElement> constants, std::vector<Task> tasks,
            Result result);

  const FieldPtr& field() const { return field_; }
  const std::vector<FieldElement>& constants() const { return constants_; }
  const std::vector<Task>& tasks() const { return tasks_; }
  std::size_t size() const { return tasks_.size(); }
  /// Affine (x, y) of the result, or nullopt for the point at infinity.
  const Result& result() const { return result_; }

  /// Task ids consuming each task's output.
  std::vector<std::vector<std::size_t>> successors() const;

  /// Field-operation counts per phase/point-op bucket, in OpTrace form.
  /// XFER tasks are excluded; the doublings/additions counters stay zero.
  OpTrace op_trace() const;

  std::size_t count(TaskKind kind) const;

  friend bool operator==(const TaskGraph& a, const TaskGraph& b);

 private:
  FieldPtr field_;
  std::vector<FieldElement> constants_;
  std::vector<Task> tasks_;
  Result result_;
};

/// Cycles per operation. XFER always costs 0.
struct CostModel {
  std::uint64_t add = 1;
  std::uint64_t sub = 1;
  std::uint64_t mul = 4;
  std::uint64_t sqr = 1;
  std::uint64_t inv = 40;

  /// SQR = 1 on binary fields, 2 on prime fields.
  static CostModel defaults(FieldKind kind);

  std::uint64_t cost(TaskKind kind) const;
  /// Throws InvalidParameter if any cost is 0.
  void validate() const;

  friend bool operator==(const CostModel&, const CostModel&) = default;
};

/// Compiles the binary method for (curve, k, P) into a task graph whose
/// sequential replay equals scalar_mul(curve, k, P).
TaskGraph compile_scalar_mul(const CurveParams& curve, const Scalar& k, const AffinePoint& p);

/// Executes the graph in task order. Throws MalformedGraph or FieldMismatch.
AffinePoint replay(const TaskGraph& graph, const CurveParams& curve);

/// Longest cost-weighted dependency chain.
std::uint64_t critical_path(const TaskGraph& graph, const CostModel& costs);

/// Per-task longest remaining chain including the task itself.
std::vector<std::uint64_t> bottom_levels(const TaskGraph& graph, const CostModel& costs);

/// Line-oriented text form:
///   ecnoc-taskgraph 1
///   field prime <p> | field binary <m> <f>
///   const <i> <hex>
///   task <id> <KIND> <Phase> <Double|Add|-> <index|-> <t<id>|c<id>>...
///   result inf | result <operand> <operand>
void write_task_graph(std::ostream& out, const TaskGraph& graph);
std::string task_graph_to_text(const TaskGraph& graph);
/// Throws ParseError with a line number, or MalformedGraph.
TaskGraph parse_task_graph(std::istream& in);
TaskGraph task_graph_from_text(const std::string& text);

}  // namespace ecnoc
