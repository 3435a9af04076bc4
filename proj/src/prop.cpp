#include "swarmta/prop.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "swarmta/task.hpp"

namespace swarmta {

void PropParams::validate() const {
    if (std::isnan(max_radius) || max_radius < 0.0) throw ConfigError("d_p must be non-negative");
    if (rate < 1) throw ConfigError("r_p must be at least 1");
    if (propagator_radius < 0 || follower_radius < 0) throw ConfigError("influence radius must be non-negative");
    swarmta::validate(levy);
}

bool merge_task_info(PropagatorState& state, Cell location, int residual_demand) {
    auto& entries = state.task_info;
    auto it = std::lower_bound(entries.begin(), entries.end(), location,
                               [](const TaskInfo& e, Cell c) { return e.location < c; });
    if (it == entries.end() || it->location != location) {
        entries.insert(it, TaskInfo{location, residual_demand, true});
        return true;
    }
    if (residual_demand < it->residual_demand) {
        it->residual_demand = residual_demand;
        it->fresh = true;
        return true;
    }
    return false;
}

bool within_radius(Cell a, Cell b, double max_radius) noexcept {
    if (std::isinf(max_radius)) return true;
    // Slack keeps radii such as 50*sqrt(2) from losing the far corner to rounding.
    return static_cast<double>(squared_distance(a, b)) <= max_radius * max_radius * (1.0 + 1e-12);
}

std::vector<Cell> propagation_targets(Cell from, Cell task, double max_radius, GridDims dims) {
    std::vector<Cell> out;
    for (int b = -1; b <= 1; ++b)
        for (int a = -1; a <= 1; ++a) {
            if (a == 0 && b == 0) continue;
            const Cell n{from.x + a, from.y + b};
            if (dims.contains(n) && within_radius(n, task, max_radius)) out.push_back(n);
        }
    return out;
}

std::vector<double> task_choice_distribution(std::span<const TaskChoice> known, Cell pos) {
    std::vector<double> weights(known.size(), 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < known.size(); ++i) {
        const auto& k = known[i];
        if (k.residual_demand <= 0 || k.location == pos) continue;
        weights[i] = k.residual_demand / static_cast<double>(squared_distance(k.location, pos));
        total += weights[i];
    }
    if (total <= 0.0) return {};
    for (auto& w : weights) w /= total;
    return weights;
}

AgentProposal propagator_transition(const PropagatorState& prop, const LocalMapping& local,
                                    const PropParams& params, PropagatorState& next,
                                    std::vector<Delivery>& outbox, std::uint64_t& messages_sent) {
    next = prop;
    const Cell pos = local.center();
    const VertexState& here = local.here().vertex_state();
    if (here.is_task) merge_task_info(next, pos, here.residual_demand);

    if (next.propagation_ctr < params.rate) {
        ++next.propagation_ctr;
        return {};
    }
    // The wave round counts as the first of the next period, so waves land
    // every `rate` rounds.
    next.propagation_ctr = 1;
    if (!next.has_fresh()) return {};
    const GridDims dims = local.world().dims;
    const int r = params.propagator_radius;
    for (int b = -r; b <= r; ++b)
        for (int a = -r; a <= r; ++a) {
            if (a == 0 && b == 0) continue;
            const Cell n{pos.x + a, pos.y + b};
            if (!dims.contains(n)) continue;
            bool shared = false;
            for (const auto& e : next.task_info) {
                if (!e.fresh || !within_radius(n, e.location, params.max_radius)) continue;
                outbox.push_back({n, e.location, e.residual_demand});
                shared = true;
            }
            if (shared) ++messages_sent;
        }
    for (auto& e : next.task_info) e.fresh = false;
    return {};
}

AgentProposal follower_transition(const FollowerState& follower, Cell position, const LocalMapping& local,
                                  const PropagatorState* colocated, const LevyParams& levy, RngStream& rng,
                                  FollowerState& next) {
    next = follower;
    if (follower.committed_task) return {};

    if (!follower.destination_task) {
        if (auto task = nearest_open_task(local, rng)) {
            next.destination_task = task;
            return {};
        }
        if (colocated) {
            std::vector<TaskChoice> known;
            known.reserve(colocated->task_info.size());
            for (const auto& e : colocated->task_info) known.push_back({e.location, e.residual_demand});
            const auto probs = task_choice_distribution(known, position);
            if (!probs.empty()) {
                const double u = rng.uniform();
                double acc = 0.0;
                std::size_t pick = probs.size();
                for (std::size_t i = 0; i < probs.size(); ++i) {
                    if (probs[i] <= 0.0) continue;
                    pick = i;  // last positive entry absorbs rounding
                    acc += probs[i];
                    if (u < acc) break;
                }
                next.walk.reset();
                return {step_toward(position, known[pick].location, rng)};
            }
        }
        return {next_step(next.walk, position, levy, rng)};
    }

    const Cell dest = *follower.destination_task;
    // Reads the destination vertex directly even when it lies outside the
    // influence radius.
    if (local.world().vertex(dest).residual_demand <= 0) {
        next.destination_task.reset();
        next.walk.reset();
        return {};
    }
    if (position == dest) {
        next.committed_task = dest;
        next.destination_task.reset();
        return {Direction::S, true};
    }
    return {step_toward(position, dest, rng)};
}

int PropPolicy::influence_radius(const AgentState& state) const {
    return std::holds_alternative<PropagatorState>(state) ? params_.propagator_radius : params_.follower_radius;
}

AgentProposal PropPolicy::propose(const AgentContext& ctx, AgentState& next) {
    const Agent& agent = ctx.agent;
    if (const auto* prop = std::get_if<PropagatorState>(&agent.state))
        return propagator_transition(*prop, ctx.local, params_, std::get<PropagatorState>(next), outbox_,
                                     ctx.messages_sent[agent.id]);
    const auto* follower = std::get_if<FollowerState>(&agent.state);
    if (!follower) throw std::logic_error("propagation policy given a house-hunting agent");
    const PropagatorState* colocated = nullptr;
    for (const AgentId id : ctx.local.here().agents_here()) {
        if (const auto* p = std::get_if<PropagatorState>(&ctx.world.agents[id].state)) {
            colocated = p;
            break;
        }
    }
    return follower_transition(*follower, agent.position, ctx.local, colocated, params_.levy, ctx.rng,
                               std::get<FollowerState>(next));
}

void PropPolicy::end_round(GridWorld& world) {
    if (outbox_.empty()) return;
    if (propagator_at_.empty()) {
        propagator_at_.assign(static_cast<std::size_t>(world.dims.size()), static_cast<AgentId>(-1));
        for (const auto& a : world.agents)
            if (const auto* p = std::get_if<PropagatorState>(&a.state))
                propagator_at_[static_cast<std::size_t>(world.dims.index(p->assigned_vertex))] = a.id;
    }
    for (const auto& d : outbox_) {
        const AgentId id = propagator_at_[static_cast<std::size_t>(world.dims.index(d.target))];
        if (id == static_cast<AgentId>(-1)) continue;
        merge_task_info(std::get<PropagatorState>(world.agents[id].state), d.location, d.residual_demand);
    }
    outbox_.clear();
}

std::vector<AgentId> deploy_propagators(GridWorld& world) {
    std::vector<AgentId> ids;
    ids.reserve(static_cast<std::size_t>(world.dims.size()));
    for (int i = 0; i < world.dims.size(); ++i) {
        const Cell c = world.dims.cell(i);
        ids.push_back(world.add_agent(c, PropagatorState{c, {}, 0}));
    }
    return ids;
}

std::int64_t deployment_offset(GridDims dims) noexcept { return (dims.width + dims.height) / 2; }

std::vector<AgentState> make_followers(int count) {
    return std::vector<AgentState>(static_cast<std::size_t>(count < 0 ? 0 : count), FollowerState{});
}

}  // namespace swarmta
