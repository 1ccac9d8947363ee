#include <algorithm>

#include "jcdp/sequence.hpp"

namespace jcdp {

ScheduleState simulate(const EliminationSequence& seq, std::uint32_t machines,
                       Occupancy occupancy) {
  const auto graph = build_task_graph(seq);
  const std::size_t n = seq.size();

  std::vector<Cost> ready(n, 0);
  ScheduleState st;
  st.start.assign(n, 0);
  st.completion.assign(n, 0);
  st.machine.assign(n, 0);
  st.available.assign(machines, 0);

  for (std::size_t s = 0; s < n; ++s) {
    const auto& step = seq.steps[s];
    if (step.pool.lo == 0 || step.pool.lo > step.pool.hi || step.pool.hi > machines) {
      throw Error("step " + std::to_string(s + 1) + " uses machines outside [1, " +
                  std::to_string(machines) + "]");
    }
    const auto lo = step.pool.lo - 1;
    const auto hi = occupancy == Occupancy::Pool ? step.pool.hi - 1 : lo;

    Cost start = ready[s];
    for (auto i = lo; i <= hi; ++i) start = std::max(start, st.available[i]);
    const Cost done = checked_add(start, step.cost);
    for (auto i = lo; i <= hi; ++i) st.available[i] = done;

    st.start[s] = start;
    st.completion[s] = done;
    st.machine[s] = step.pool.lo;
    st.makespan = std::max(st.makespan, done);
    if (const auto next = graph.successor[s]) ready[*next] = std::max(ready[*next], done);
  }
  return st;
}

Cost evaluate_makespan(const EliminationSequence& seq, std::uint32_t machines,
                       Occupancy occupancy) {
  return simulate(seq, machines, occupancy).makespan;
}

}  // namespace jcdp
