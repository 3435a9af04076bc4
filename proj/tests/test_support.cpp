#include "test_support.hpp"

#include "swarmta/levy.hpp"
#include "swarmta/task.hpp"

namespace swarmta::testing {

AgentProposal GreedyClaimPolicy::propose(const AgentContext& ctx, AgentState& next) {
    auto& f = std::get<FollowerState>(next);
    if (f.committed_task) return {};
    const VertexState& here = ctx.local.here().vertex_state();
    if (here.is_task && here.residual_demand > 0) {
        f.committed_task = ctx.agent.position;
        return {Direction::S, true};
    }
    if (auto task = nearest_open_task(ctx.local, ctx.rng)) return {step_toward(ctx.agent.position, *task, ctx.rng)};
    return {};
}

}  // namespace swarmta::testing
