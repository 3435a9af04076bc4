#pragma once

#include <span>
#include <vector>

#include "swarmta/engine.hpp"
#include "swarmta/levy.hpp"
#include "swarmta/world.hpp"

namespace swarmta {

struct HhtaParams {
    double commit = 0.3;              // P_c
    double explore = 2.0 / 3.0;       // P_e
    double message_rate = 1.0 / 6.0;  // r_m
    int influence_radius = 2;
    LevyParams levy{};

    void validate() const;
};

struct RecruitMessage {
    TaskMemory task;
    AgentId sender = 0;

    friend bool operator==(const RecruitMessage&, const RecruitMessage&) = default;
};

/// P_E = L * P_e / (1 - P_e), clamped to [0, 1]. Throws ConfigError for
/// P_e outside [0, 1).
double explore_entry_probability(double L, double explore);

/// c = max(P_c, 1 / rd). Throws std::invalid_argument for rd < 1.
double commit_probability(double commit, int residual_demand);

/// 1 - (1 - r_m)^R: chance that at least one of R recruiters reaches a given
/// Home agent in one round.
double receipt_probability(double message_rate, int recruiters);

/// The closed form I_{1-r_m}(R - 1, 2). Diagnostic only; it does not agree
/// with receipt_probability in general and the engine never uses either.
double incomplete_beta_receipt_probability(double message_rate, int recruiters);

/// Recruiting agents standing on a home vertex each make one Bernoulli(r_m)
/// draw per agent within their influence radius. Successful draws aimed at
/// Home agents are delivered and counted against the sender. Returns the
/// inbox of every agent, indexed by id, each sorted by sender.
std::vector<std::vector<RecruitMessage>> deliver_recruitment_messages(
    const GridWorld& world, const Occupancy& occupancy, const HhtaParams& params, std::uint64_t seed,
    std::span<std::uint64_t> messages_sent);

/// House-hunting agent transition function.
AgentProposal hhta_transition(const HhtaAgentState& agent, Cell position, const LocalMapping& local,
                              std::span<const RecruitMessage> inbox, const HhtaParams& params,
                              RngStream& rng, HhtaAgentState& next);

class HhtaPolicy final : public AgentPolicy {
public:
    HhtaPolicy(HhtaParams params, GridDims dims);

    const HhtaParams& params() const noexcept { return params_; }
    double home_to_explore() const noexcept { return p_explore_entry_; }
    double explore_to_home() const noexcept { return p_home_; }

    int influence_radius(const AgentState&) const override { return params_.influence_radius; }
    void begin_round(const GridWorld& world, const Occupancy& occupancy, std::uint64_t seed,
                     std::span<std::uint64_t> messages_sent) override;
    AgentProposal propose(const AgentContext& ctx, AgentState& next) override;

private:
    HhtaParams params_;
    double p_explore_entry_;
    double p_home_;
    std::vector<std::vector<RecruitMessage>> inbox_;
};

/// Initial swarm: `count` Home agents.
std::vector<AgentState> make_hhta_swarm(int count);

}  // namespace swarmta
