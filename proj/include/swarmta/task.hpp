#pragma once

#include <optional>
#include <span>
#include <vector>

#include "swarmta/agent_state.hpp"
#include "swarmta/engine.hpp"
#include "swarmta/grid.hpp"
#include "swarmta/rng.hpp"
#include "swarmta/world.hpp"

namespace swarmta {

struct TaskSpec {
    int count = 1;
    int total_demand = 1;
    std::vector<int> demands;  // empty means near-equal split

    /// Throws ConfigError unless the demand vector (explicit or split) has
    /// `count` positive entries summing to total_demand and the total does
    /// not exceed `agent_count`.
    std::vector<int> resolve_demands(int agent_count) const;
};

/// Near-equal split; earlier entries take the remainder.
std::vector<int> split_demand(int total, int count);

/// Distinct, uniformly drawn non-home vertices paired with `demands`.
std::vector<TaskSite> place_tasks(RngStream& rng, std::span<const int> demands, GridDims dims, Rect home);

/// Uniformly chosen winners, min(|claimants|, rd) of them, returned in
/// ascending id order.
std::vector<AgentId> claim_task(std::span<const AgentId> claimants, int residual_demand, RngStream& rng);

/// Nearest task with positive residual demand inside the local mapping
/// (Euclidean, ties uniform). Reads only the snapshot.
std::optional<Cell> nearest_open_task(const LocalMapping& local, RngStream& rng);

/// Rule Q for one vertex: settles the final vertex state and marks each
/// claimant accepted or rejected. Non-claiming outcomes are always accepted.
VertexState reconcile(const VertexState& current, std::span<AgentOutcome> outcomes, RngStream& rng);

}  // namespace swarmta
