#pragma once

#include <limits>
#include <span>
#include <vector>

#include "swarmta/engine.hpp"
#include "swarmta/levy.hpp"
#include "swarmta/world.hpp"

namespace swarmta {

struct PropParams {
    double max_radius = 25.0;  // d_p, Euclidean; infinity allowed
    int rate = 3;              // r_p, rounds between waves
    int propagator_radius = 1;
    int follower_radius = 2;
    LevyParams levy{};

    void validate() const;
};

/// Min-merge of one (location, rd) report. Returns true and marks the entry
/// fresh when the key is new or its value dropped.
bool merge_task_info(PropagatorState& state, Cell location, int residual_demand);

bool within_radius(Cell a, Cell b, double max_radius) noexcept;

/// In-grid Chebyshev-1 neighbours of `from` lying within d_p of `task`.
std::vector<Cell> propagation_targets(Cell from, Cell task, double max_radius, GridDims dims);

struct TaskChoice {
    Cell location{};
    int residual_demand = 0;
};

/// P(l_i) proportional to rd_i / |l_i - pos|^2. Entries with rd <= 0 or
/// located at `pos` get zero weight. Returns an empty vector when nothing
/// has positive weight.
std::vector<double> task_choice_distribution(std::span<const TaskChoice> known, Cell pos);

/// A delivery to the propagator at `target`, applied after the round.
struct Delivery {
    Cell target{};
    Cell location{};
    int residual_demand = 0;
};

/// Propagator transition: fold in the vertex's own task, then every `rate`
/// rounds ship fresh entries to eligible neighbours. Always stays put.
/// Each neighbour receiving at least one entry costs one message.
AgentProposal propagator_transition(const PropagatorState& prop, const LocalMapping& local,
                                    const PropParams& params, PropagatorState& next,
                                    std::vector<Delivery>& outbox, std::uint64_t& messages_sent);

/// Follower transition. `colocated` is the propagator on the follower's
/// vertex, or null when there is none (random-walk baseline).
AgentProposal follower_transition(const FollowerState& follower, Cell position, const LocalMapping& local,
                                  const PropagatorState* colocated, const LevyParams& levy, RngStream& rng,
                                  FollowerState& next);

/// Drives both propagators and followers. With no propagators deployed this
/// is the Levy-walk baseline.
class PropPolicy final : public AgentPolicy {
public:
    explicit PropPolicy(PropParams params) : params_(params) { params_.validate(); }

    const PropParams& params() const noexcept { return params_; }

    int influence_radius(const AgentState& state) const override;
    AgentProposal propose(const AgentContext& ctx, AgentState& next) override;
    void end_round(GridWorld& world) override;

private:
    PropParams params_;
    std::vector<Delivery> outbox_;
    std::vector<AgentId> propagator_at_;  // by vertex index, built on first use
};

/// Adds one propagator per vertex (ids following the existing agents),
/// already at its assigned vertex. Returns the ids added.
std::vector<AgentId> deploy_propagators(GridWorld& world);

/// Rounds the propagators would need to walk out from home: (M + N) / 2.
std::int64_t deployment_offset(GridDims dims) noexcept;

/// `count` followers with exhausted walk legs.
std::vector<AgentState> make_followers(int count);

}  // namespace swarmta
