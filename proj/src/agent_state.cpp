#include "swarmta/agent_state.hpp"

#include <algorithm>

namespace swarmta {

const TaskInfo* PropagatorState::find(Cell location) const noexcept {
    auto it = std::lower_bound(task_info.begin(), task_info.end(), location,
                               [](const TaskInfo& e, Cell c) { return e.location < c; });
    if (it == task_info.end() || it->location != location) return nullptr;
    return &*it;
}

bool PropagatorState::has_fresh() const noexcept {
    return std::any_of(task_info.begin(), task_info.end(), [](const TaskInfo& e) { return e.fresh; });
}

bool is_committed_and_arrived(const AgentState& state) noexcept {
    if (const auto* h = std::get_if<HhtaAgentState>(&state)) return h->committed_task.has_value();
    if (const auto* f = std::get_if<FollowerState>(&state)) return f->committed_task.has_value();
    return false;
}

bool is_task_performer(const AgentState& state) noexcept {
    return !std::holds_alternative<PropagatorState>(state);
}

}  // namespace swarmta
