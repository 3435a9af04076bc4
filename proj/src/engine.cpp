#include "swarmta/engine.hpp"

#include <stdexcept>
#include <utility>

#include "swarmta/task.hpp"

namespace swarmta {

void Engine::step(GridWorld& world) {
    const auto round = static_cast<std::uint64_t>(world.round);
    const auto agent_count = world.agents.size();
    occupancy_.rebuild(world);
    std::span<std::uint64_t> counters(world.messages_sent);
    policy_->begin_round(world, occupancy_, seed_, counters);

    next_states_.resize(agent_count);
    for (std::size_t i = 0; i < agent_count; ++i) next_states_[i] = world.agents[i].state;

    // Phase one: every proposal reads only the snapshot taken above.
    const int vertex_count = world.dims.size();
    std::size_t used = 0;
    for (int k = 0; k < vertex_count; ++k) {
        const int v = vertex_order_.empty() ? k : vertex_order_[static_cast<std::size_t>(k)];
        const auto here = occupancy_.at(v);
        if (here.empty()) continue;
        if (used == proposals_.size()) proposals_.emplace_back();
        TransitionProposal& proposal = proposals_[used++];
        proposal.vertex = world.dims.cell(v);
        proposal.agent_outcomes.clear();
        for (const AgentId id : here) {
            const Agent& agent = world.agents[id];
            const LocalMapping local(world, occupancy_, proposal.vertex, policy_->influence_radius(agent.state));
            RngStream rng = RngStream::keyed(seed_, {round, static_cast<std::uint64_t>(Stream::agent), id});
            const AgentContext ctx{world, agent, local, rng, counters};
            const AgentProposal p = policy_->propose(ctx, next_states_[id]);
            proposal.agent_outcomes.push_back({id, p.direction, p.claims_task, true});
        }
        RngStream claim_rng =
            RngStream::keyed(seed_, {round, static_cast<std::uint64_t>(Stream::claim), static_cast<std::uint64_t>(v)});
        proposal.proposed_vertex_state =
            reconcile(world.vertices[static_cast<std::size_t>(v)], proposal.agent_outcomes, claim_rng);
    }
    proposals_.resize(used);

    // Phase two: commit vertex states, accepted agent states and all moves
    // at once. Rejected agents keep their state and stay.
    for (const auto& proposal : proposals_) {
        world.vertex(proposal.vertex) = proposal.proposed_vertex_state;
        for (const auto& outcome : proposal.agent_outcomes) {
            if (!outcome.accepted) continue;
            Agent& agent = world.agents[outcome.id];
            std::swap(agent.state, next_states_[outcome.id]);
            const Cell target = offset(agent.position, outcome.direction);
            if (world.dims.contains(target)) agent.position = target;
        }
    }
    ++world.round;
    policy_->end_round(world);
}

void step(GridWorld& world, AgentPolicy& policy, std::uint64_t seed) {
    Engine engine(policy, seed);
    engine.step(world);
}

TrialTrace run_trial(GridWorld& world, Engine& engine, std::int64_t max_rounds) {
    if (max_rounds < 1) throw std::invalid_argument("max_rounds must be at least 1");
    TrialTrace trace;
    trace.seed = engine.seed();
    trace.residual_demand.push_back(world.total_residual_demand());
    for (std::int64_t r = 0; r < max_rounds && trace.residual_demand.back() > 0; ++r) {
        engine.step(world);
        trace.residual_demand.push_back(world.total_residual_demand());
    }
    trace.completion_round = completion_time(trace);
    trace.timeout = !trace.completion_round.has_value();
    trace.messages_sent = world.messages_sent;
    return trace;
}

TrialTrace run_trial(GridWorld& world, AgentPolicy& policy, std::uint64_t seed, std::int64_t max_rounds) {
    Engine engine(policy, seed);
    return run_trial(world, engine, max_rounds);
}

}  // namespace swarmta
