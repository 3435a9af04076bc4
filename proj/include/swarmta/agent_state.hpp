#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "swarmta/grid.hpp"
#include "swarmta/levy.hpp"

namespace swarmta {

using AgentId = std::uint32_t;

// ---- house hunting ---------------------------------------------------------

enum class CoreState : std::uint8_t { Home, Exploring, Recruiting, Committed };

inline constexpr char to_char(CoreState s) noexcept {
    constexpr char names[] = {'H', 'E', 'R', 'C'};
    return names[static_cast<int>(s)];
}

/// A task as an agent remembers it; remembered_rd may be stale.
struct TaskMemory {
    Cell location{};
    int remembered_rd = 1;

    friend bool operator==(const TaskMemory&, const TaskMemory&) = default;
};

struct HhtaAgentState {
    CoreState core_state = CoreState::Home;
    WalkState walk{};
    std::optional<TaskMemory> destination_task;
    std::optional<Cell> home_destination;
    std::optional<TaskMemory> recruitment_task;
    std::optional<Cell> committed_task;

    friend bool operator==(const HhtaAgentState&, const HhtaAgentState&) = default;
};

// ---- propagation -----------------------------------------------------------

/// One entry of a propagator's task map. `fresh` marks entries changed since
/// the last propagation wave (the newly-updated set).
struct TaskInfo {
    Cell location{};
    int residual_demand = 0;
    bool fresh = false;

    friend bool operator==(const TaskInfo&, const TaskInfo&) = default;
};

struct PropagatorState {
    Cell assigned_vertex{};
    std::vector<TaskInfo> task_info;  // sorted by location
    int propagation_ctr = 0;

    const TaskInfo* find(Cell location) const noexcept;
    bool has_fresh() const noexcept;

    friend bool operator==(const PropagatorState&, const PropagatorState&) = default;
};

/// Mobile task performer for PROP; the random-walk baseline uses the same
/// record with no propagators in the world.
struct FollowerState {
    std::optional<Cell> destination_task;
    std::optional<Cell> committed_task;
    WalkState walk{};

    friend bool operator==(const FollowerState&, const FollowerState&) = default;
};

using AgentState = std::variant<HhtaAgentState, PropagatorState, FollowerState>;

struct Agent {
    AgentId id = 0;
    Cell position{};
    AgentState state;

    friend bool operator==(const Agent&, const Agent&) = default;
};

/// True when the agent has won a claim and is working its task.
bool is_committed_and_arrived(const AgentState& state) noexcept;

/// Task performers are everything except propagators.
bool is_task_performer(const AgentState& state) noexcept;

}  // namespace swarmta
