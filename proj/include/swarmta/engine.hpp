#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "swarmta/metrics.hpp"
#include "swarmta/rng.hpp"
#include "swarmta/world.hpp"

namespace swarmta {

/// What one agent asks for in phase one. The proposed agent state is written
/// by the policy into the `next` slot handed to AgentPolicy::propose.
struct AgentProposal {
    Direction direction = Direction::S;
    bool claims_task = false;  // asks to be one of the agents taking the vertex's task
};

struct AgentContext {
    const GridWorld& world;
    const Agent& agent;
    const LocalMapping& local;
    RngStream& rng;
    std::span<std::uint64_t> messages_sent;
};

/// The agent transition function. propose() must only read the round's
/// snapshot (world, local mapping) and may only write the `next` state and
/// the calling agent's own message counter.
class AgentPolicy {
public:
    virtual ~AgentPolicy() = default;

    virtual int influence_radius(const AgentState& state) const = 0;

    /// Called once per round after occupancy is built and before any
    /// proposal. Used for pre-passes such as message delivery.
    virtual void begin_round(const GridWorld& /*world*/, const Occupancy& /*occupancy*/,
                             std::uint64_t /*seed*/, std::span<std::uint64_t> /*messages_sent*/) {}

    /// `next` holds a copy of the agent's current state on entry.
    virtual AgentProposal propose(const AgentContext& ctx, AgentState& next) = 0;

    /// Called after moves are applied and the round counter advanced.
    virtual void end_round(GridWorld& /*world*/) {}
};

struct AgentOutcome {
    AgentId id = 0;
    Direction direction = Direction::S;
    bool claims_task = false;
    bool accepted = true;
};

/// Phase-one output for one vertex.
struct TransitionProposal {
    Cell vertex{};
    VertexState proposed_vertex_state{};
    std::vector<AgentOutcome> agent_outcomes;
};

/// Two-phase synchronous stepper. Holds scratch buffers so repeated steps do
/// not reallocate.
class Engine {
public:
    Engine(AgentPolicy& policy, std::uint64_t seed) : policy_(&policy), seed_(seed) {}

    /// Overrides the row-major vertex visiting order of phase one. Must be a
    /// permutation of [0, M*N).
    void set_vertex_order(std::vector<int> order) { vertex_order_ = std::move(order); }

    void step(GridWorld& world);

    std::uint64_t seed() const noexcept { return seed_; }

    /// Proposals of the most recent step, one per occupied vertex, with the
    /// reconciled accept flags filled in.
    const std::vector<TransitionProposal>& last_proposals() const noexcept { return proposals_; }

private:
    AgentPolicy* policy_;
    std::uint64_t seed_;
    std::vector<int> vertex_order_;
    Occupancy occupancy_;
    std::vector<AgentState> next_states_;
    std::vector<TransitionProposal> proposals_;
};

/// One synchronous round with a throwaway engine.
void step(GridWorld& world, AgentPolicy& policy, std::uint64_t seed);

/// Steps until total residual demand is zero or max_rounds elapse.
TrialTrace run_trial(GridWorld& world, AgentPolicy& policy, std::uint64_t seed, std::int64_t max_rounds);

/// Same, reusing a caller-supplied engine (e.g. one with a custom order).
TrialTrace run_trial(GridWorld& world, Engine& engine, std::int64_t max_rounds);

}  // namespace swarmta
