#include "swarmta/hhta.hpp"

#include <cmath>
#include <stdexcept>

#include "swarmta/task.hpp"

namespace swarmta {

void HhtaParams::validate() const {
    auto probability = [](double p, const char* name) {
        if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(std::string(name) + " must lie in [0, 1]");
    };
    probability(commit, "P_c");
    probability(explore, "P_e");
    probability(message_rate, "r_m");
    if (influence_radius < 0) throw ConfigError("influence radius must be non-negative");
    swarmta::validate(levy);
}

double explore_entry_probability(double L, double explore) {
    if (!(explore >= 0.0 && explore < 1.0)) throw ConfigError("P_e must lie in [0, 1) for the exploration rate");
    const double p = L * explore / (1.0 - explore);
    return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p);
}

double commit_probability(double commit, int residual_demand) {
    if (residual_demand < 1) throw std::invalid_argument("commit probability needs a positive residual demand");
    const double inverse = 1.0 / residual_demand;
    return commit > inverse ? commit : inverse;
}

double receipt_probability(double message_rate, int recruiters) {
    if (recruiters <= 0) return 0.0;
    return 1.0 - std::pow(1.0 - message_rate, recruiters);
}

double incomplete_beta_receipt_probability(double message_rate, int recruiters) {
    if (recruiters <= 0) return 0.0;
    if (recruiters == 1) return 1.0;  // limit of I_x(a, 2) as a -> 0
    return regularized_incomplete_beta(recruiters - 1.0, 2.0, 1.0 - message_rate);
}

namespace {

bool recruiting_at_home(const Agent& agent, const Rect& home) {
    const auto* s = std::get_if<HhtaAgentState>(&agent.state);
    return s && s->core_state == CoreState::Recruiting && !s->home_destination && home.contains(agent.position);
}

// One step along the way home; clears the destination once the next cell is
// a home cell.
Direction walk_home(HhtaAgentState& next, Cell pos, const Rect& home, RngStream& rng) {
    if (home.contains(pos)) {
        next.home_destination.reset();
        return Direction::S;
    }
    if (!next.home_destination) next.home_destination = home.clamp(pos);
    const Direction d = step_toward(pos, *next.home_destination, rng);
    if (home.contains(offset(pos, d))) next.home_destination.reset();
    return d;
}

void start_exploring(HhtaAgentState& next) {
    next.core_state = CoreState::Exploring;
    next.home_destination.reset();
    next.destination_task.reset();
    next.walk.reset();
}

}  // namespace

std::vector<std::vector<RecruitMessage>> deliver_recruitment_messages(const GridWorld& world,
                                                                      const Occupancy& occupancy,
                                                                      const HhtaParams& params, std::uint64_t seed,
                                                                      std::span<std::uint64_t> messages_sent) {
    std::vector<std::vector<RecruitMessage>> inbox(world.agents.size());
    if (params.message_rate <= 0.0) return inbox;
    const auto round = static_cast<std::uint64_t>(world.round);
    for (const Agent& sender : world.agents) {
        if (!recruiting_at_home(sender, world.home)) continue;
        const auto& task = *std::get<HhtaAgentState>(sender.state).recruitment_task;
        const LocalMapping local(world, occupancy, sender.position, params.influence_radius);
        local.for_each_vertex([&](Cell c, const VertexState&) {
            for (const AgentId target : occupancy.at(world.dims.index(c))) {
                if (target == sender.id) continue;
                const auto* s = std::get_if<HhtaAgentState>(&world.agents[target].state);
                if (!s || s->core_state != CoreState::Home) continue;
                RngStream draw = RngStream::keyed(
                    seed, {round, static_cast<std::uint64_t>(Stream::message), sender.id, target});
                if (!draw.bernoulli(params.message_rate)) continue;
                inbox[target].push_back({task, sender.id});
                ++messages_sent[sender.id];
            }
        });
    }
    return inbox;
}

AgentProposal hhta_transition(const HhtaAgentState& agent, Cell pos, const LocalMapping& local,
                              std::span<const RecruitMessage> inbox, const HhtaParams& params, RngStream& rng,
                              HhtaAgentState& next) {
    next = agent;
    const GridWorld& world = local.world();
    const Rect& home = world.home;
    const double L = 1.0 / (world.dims.width + world.dims.height);

    switch (agent.core_state) {
        case CoreState::Home: {
            const double p_explore = params.explore >= 1.0 ? 1.0 : explore_entry_probability(L, params.explore);
            if (rng.bernoulli(p_explore)) {
                start_exploring(next);
                return {};
            }
            if (!inbox.empty()) {
                const RecruitMessage& msg = inbox[rng.below(inbox.size())];
                if (rng.bernoulli(params.commit)) {
                    next.core_state = CoreState::Committed;
                    next.destination_task = msg.task;
                    next.home_destination.reset();
                    return {};
                }
                next.core_state = CoreState::Recruiting;
                next.recruitment_task = msg.task;
                return {walk_home(next, pos, home, rng)};
            }
            if (agent.home_destination) {
                // Still sensing on the way back.
                if (auto task = nearest_open_task(local, rng)) {
                    start_exploring(next);
                    next.destination_task = TaskMemory{*task, world.vertex(*task).residual_demand};
                    return {step_toward(pos, *task, rng)};
                }
                return {walk_home(next, pos, home, rng)};
            }
            return {};
        }

        case CoreState::Exploring: {
            const VertexState& here = local.here().vertex_state();
            if (here.is_task && here.residual_demand > 0) {
                next.destination_task.reset();
                if (rng.bernoulli(commit_probability(params.commit, here.residual_demand))) {
                    next.core_state = CoreState::Committed;
                    next.committed_task = pos;
                    return {Direction::S, true};
                }
                next.core_state = CoreState::Recruiting;
                next.recruitment_task = TaskMemory{pos, here.residual_demand};
                next.home_destination = home.clamp(pos);
                return {walk_home(next, pos, home, rng)};
            }
            if (next.destination_task) {
                const Cell dest = next.destination_task->location;
                if (chebyshev(dest, pos) > local.radius() || world.vertex(dest).residual_demand <= 0)
                    next.destination_task.reset();
            }
            if (!next.destination_task) {
                if (auto task = nearest_open_task(local, rng))
                    next.destination_task = TaskMemory{*task, world.vertex(*task).residual_demand};
            }
            if (next.destination_task) return {step_toward(pos, next.destination_task->location, rng)};

            if (rng.bernoulli(L)) {
                next.core_state = CoreState::Home;
                next.walk.reset();
                return {walk_home(next, pos, home, rng)};
            }
            return {next_step(next.walk, pos, params.levy, rng)};
        }

        case CoreState::Recruiting: {
            if (next.home_destination || !home.contains(pos)) return {walk_home(next, pos, home, rng)};
            const int rd = next.recruitment_task ? next.recruitment_task->remembered_rd : 1;
            if (rng.bernoulli(1.0 / (rd < 1 ? 1 : rd))) {
                next.core_state = CoreState::Committed;
                next.destination_task = next.recruitment_task;
                next.recruitment_task.reset();
            }
            return {};
        }

        case CoreState::Committed: {
            if (agent.committed_task) return {};
            if (!agent.destination_task) {
                start_exploring(next);
                return {};
            }
            const Cell dest = agent.destination_task->location;
            if (pos != dest) return {step_toward(pos, dest, rng)};
            const VertexState& here = local.here().vertex_state();
            if (here.is_task && here.residual_demand > 0) {
                next.committed_task = pos;
                next.destination_task.reset();
                return {Direction::S, true};
            }
            start_exploring(next);  // arrived at a satisfied task
            return {};
        }
    }
    return {};
}

HhtaPolicy::HhtaPolicy(HhtaParams params, GridDims dims) : params_(params) {
    params_.validate();
    const double L = 1.0 / (dims.width + dims.height);
    p_explore_entry_ = params_.explore >= 1.0 ? 1.0 : explore_entry_probability(L, params_.explore);
    p_home_ = L;
}

void HhtaPolicy::begin_round(const GridWorld& world, const Occupancy& occupancy, std::uint64_t seed,
                             std::span<std::uint64_t> messages_sent) {
    inbox_ = deliver_recruitment_messages(world, occupancy, params_, seed, messages_sent);
}

AgentProposal HhtaPolicy::propose(const AgentContext& ctx, AgentState& next) {
    const auto* state = std::get_if<HhtaAgentState>(&ctx.agent.state);
    if (!state) throw std::logic_error("house-hunting policy given a non house-hunting agent");
    const auto& inbox = inbox_[ctx.agent.id];
    return hhta_transition(*state, ctx.agent.position, ctx.local, inbox, params_, ctx.rng,
                           std::get<HhtaAgentState>(next));
}

std::vector<AgentState> make_hhta_swarm(int count) {
    return std::vector<AgentState>(static_cast<std::size_t>(count < 0 ? 0 : count), HhtaAgentState{});
}

}  // namespace swarmta
