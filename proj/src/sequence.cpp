#include "jcdp/sequence.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "text_util.hpp"

namespace jcdp {
namespace {

std::string span_text(JacobianSpan s) {
  return "(" + std::to_string(s.left) + " " + std::to_string(s.right) + ")";
}

// Empty when the step fits the chain.
std::string shape_error(const EliminationStep& step, std::size_t q) {
  if (is_accumulation(step.kind)) {
    if (step.right != step.left + 1 || step.right > q) {
      return "accumulation " + format_step(step) + " must span one link of the chain";
    }
  } else if (!(step.left < step.split && step.split < step.right && step.right <= q)) {
    return "elimination " + format_step(step) + " needs i-1 < k < j <= q";
  }
  if (step.pool.lo == 0 || step.pool.lo > step.pool.hi) {
    return "step " + format_step(step) + " has an empty machine pool";
  }
  return {};
}

}  // namespace

bool is_accumulation(StepKind kind) {
  return kind == StepKind::AccTan || kind == StepKind::AccAdj;
}

std::vector<JacobianSpan> EliminationStep::consumes() const {
  switch (kind) {
    case StepKind::AccTan:
    case StepKind::AccAdj:
      return {};
    case StepKind::EliTan:
      return {{left, split}};
    case StepKind::EliAdj:
      return {{split, right}};
    case StepKind::EliMul:
      return {{split, right}, {left, split}};
  }
  return {};
}

Cost step_cost(const EliminationStep& step, const JacobianChain& chain, MemoryLimit limit) {
  if (auto err = shape_error(step, chain.length()); !err.empty()) throw Error(err);
  switch (step.kind) {
    case StepKind::AccTan: {
      const auto& f = chain.element(step.right);
      return checked_mul(f.edges, f.n);
    }
    case StepKind::AccAdj: {
      const auto& f = chain.element(step.right);
      if (!limit.admits(f.edges)) {
        throw InfeasibleStepError("tape of " + format_step(step) + " exceeds the memory limit");
      }
      return checked_mul(f.edges, f.m);
    }
    case StepKind::EliTan:
      return checked_mul(chain.element(step.left + 1).n,
                         chain.edge_sum(step.split + 1, step.right));
    case StepKind::EliAdj: {
      const auto tape = chain.edge_sum(step.left + 1, step.split);
      if (!limit.admits(tape)) {
        throw InfeasibleStepError("tape of " + format_step(step) + " exceeds the memory limit");
      }
      return checked_mul(chain.element(step.right).m, tape);
    }
    case StepKind::EliMul:
      return multiply_cost(chain.element(step.right).m, chain.element(step.split).m,
                           chain.element(step.left + 1).n);
  }
  return 0;
}

void assign_costs(EliminationSequence& seq, const JacobianChain& chain, MemoryLimit limit) {
  for (auto& step : seq.steps) step.cost = step_cost(step, chain, limit);
}

std::vector<std::pair<std::size_t, std::size_t>> TaskGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t s = 0; s < successor.size(); ++s) {
    if (successor[s]) out.emplace_back(s, *successor[s]);
  }
  return out;
}

std::size_t TaskGraph::root() const {
  for (std::size_t s = 0; s < successor.size(); ++s) {
    if (!successor[s]) return s;
  }
  throw InvalidSequenceError("task graph has no root");
}

TaskGraph build_task_graph(const EliminationSequence& seq) {
  TaskGraph graph;
  graph.nodes = seq.steps;
  graph.successor.assign(seq.size(), std::nullopt);
  std::map<JacobianSpan, std::size_t> producer;
  for (std::size_t s = 0; s < seq.size(); ++s) {
    const auto& step = seq.steps[s];
    for (const auto& input : step.consumes()) {
      auto it = producer.find(input);
      if (it == producer.end()) {
        throw InvalidSequenceError("step " + std::to_string(s + 1) + " consumes " +
                                   span_text(input) + " which was never produced");
      }
      if (graph.successor[it->second]) {
        throw InvalidSequenceError("Jacobian " + span_text(input) +
                                   " consumed twice (out-degree > 1)");
      }
      graph.successor[it->second] = s;
    }
    if (!producer.emplace(step.produces(), s).second) {
      throw InvalidSequenceError("Jacobian " + span_text(step.produces()) + " produced twice");
    }
  }
  return graph;
}

ValidationResult validate(const EliminationSequence& seq, const JacobianChain& chain) {
  auto fail = [](std::string msg) { return ValidationResult{false, std::move(msg)}; };
  if (seq.steps.empty()) return fail("empty sequence");
  for (const auto& step : seq.steps) {
    if (auto err = shape_error(step, chain.length()); !err.empty()) return fail(err);
  }
  TaskGraph graph;
  try {
    graph = build_task_graph(seq);
  } catch (const InvalidSequenceError& e) {
    return fail(e.what());
  }
  std::size_t roots = 0;
  for (const auto& succ : graph.successor) roots += succ ? 0 : 1;
  if (roots != 1) {
    return fail("task graph has " + std::to_string(roots) + " roots, expected one");
  }
  const auto root = graph.nodes[graph.root()].produces();
  if (root.left != 0 || root.right != chain.length()) {
    return fail("root is not F'_{q,1}: final Jacobian is " + span_text(root));
  }
  return {};
}

std::string format_step(const EliminationStep& step) {
  std::string out;
  switch (step.kind) {
    case StepKind::AccTan: out = "ACC TAN"; break;
    case StepKind::AccAdj: out = "ACC ADJ"; break;
    case StepKind::EliTan: out = "ELI TAN"; break;
    case StepKind::EliAdj: out = "ELI ADJ"; break;
    case StepKind::EliMul: out = "ELI MUL"; break;
  }
  out += " (" + std::to_string(step.left) + " ";
  if (!is_accumulation(step.kind)) out += std::to_string(step.split) + " ";
  out += std::to_string(step.right) + ") [" + std::to_string(step.pool.lo);
  if (step.pool.hi != step.pool.lo) out += "," + std::to_string(step.pool.hi);
  out += "]";
  return out;
}

std::string format_sequence(const EliminationSequence& seq) {
  std::string out;
  for (std::size_t s = 0; s < seq.size(); ++s) {
    out += std::to_string(s + 1) + ": " + format_step(seq.steps[s]) + "\n";
  }
  return out;
}

EliminationStep parse_step(std::string_view text) {
  const std::string where = "step \"" + std::string(text) + "\"";
  const auto open = text.find('(');
  const auto close = text.find(')');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
    throw ParseError(where + ": missing \"( ... )\"");
  }
  const auto words = detail::split_fields(text.substr(0, open));
  if (words.size() != 2) throw ParseError(where + ": expected \"ACC|ELI TAN|ADJ|MUL\"");

  EliminationStep step;
  if (words[0] == "ACC" && words[1] == "TAN") {
    step.kind = StepKind::AccTan;
  } else if (words[0] == "ACC" && words[1] == "ADJ") {
    step.kind = StepKind::AccAdj;
  } else if (words[0] == "ELI" && words[1] == "TAN") {
    step.kind = StepKind::EliTan;
  } else if (words[0] == "ELI" && words[1] == "ADJ") {
    step.kind = StepKind::EliAdj;
  } else if (words[0] == "ELI" && words[1] == "MUL") {
    step.kind = StepKind::EliMul;
  } else {
    throw ParseError(where + ": unknown step kind");
  }

  const auto bounds = detail::split_fields(text.substr(open + 1, close - open - 1));
  const std::size_t expected = is_accumulation(step.kind) ? 2 : 3;
  if (bounds.size() != expected) {
    throw ParseError(where + ": expected " + std::to_string(expected) + " boundaries");
  }
  auto as_u32 = [&](std::string_view f) {
    const auto v = detail::parse_uint(f, where);
    if (v > UINT32_MAX) throw ParseError(where + ": boundary too large");
    return static_cast<std::uint32_t>(v);
  };
  step.left = as_u32(bounds.front());
  step.right = as_u32(bounds.back());
  if (expected == 3) step.split = as_u32(bounds[1]);

  auto rest = text.substr(close + 1);
  const auto fields = detail::split_fields(rest);
  if (!fields.empty()) {
    std::string pool;
    for (auto f : fields) pool += f;
    if (pool.size() < 3 || pool.front() != '[' || pool.back() != ']') {
      throw ParseError(where + ": malformed machine pool");
    }
    const std::string_view inner(pool.data() + 1, pool.size() - 2);
    const auto comma = inner.find(',');
    if (comma == std::string_view::npos) {
      step.pool.lo = step.pool.hi = as_u32(inner);
    } else {
      step.pool.lo = as_u32(inner.substr(0, comma));
      step.pool.hi = as_u32(inner.substr(comma + 1));
    }
  }
  if (auto err = shape_error(step, UINT32_MAX); !err.empty()) throw ParseError(where + ": " + err);
  return step;
}

EliminationSequence parse_sequence(std::string_view text) {
  EliminationSequence seq;
  std::size_t line_no = 0;
  for (auto line : detail::split_lines(text)) {
    ++line_no;
    if (detail::split_fields(line).empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError("line " + std::to_string(line_no) + ": missing \"n:\" prefix");
    }
    auto number_fields = detail::split_fields(line.substr(0, colon));
    if (number_fields.size() != 1 ||
        detail::parse_uint(number_fields[0], "line " + std::to_string(line_no)) !=
            seq.size() + 1) {
      throw ParseError("line " + std::to_string(line_no) + ": expected step number " +
                       std::to_string(seq.size() + 1));
    }
    seq.steps.push_back(parse_step(line.substr(colon + 1)));
  }
  return seq;
}

std::string export_dot(const TaskGraph& graph) {
  std::ostringstream out;
  out << "digraph elimination_sequence {\n";
  for (std::size_t s = 0; s < graph.nodes.size(); ++s) {
    out << "  " << s + 1 << " [label=\"" << s + 1 << ": " << format_step(graph.nodes[s])
        << "\"];\n";
  }
  for (const auto& [from, to] : graph.edges()) {
    out << "  " << from + 1 << " -> " << to + 1 << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace jcdp
