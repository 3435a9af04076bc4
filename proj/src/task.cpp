#include "swarmta/task.hpp"

#include <algorithm>
#include <numeric>

namespace swarmta {

std::vector<int> split_demand(int total, int count) {
    if (count < 1) throw ConfigError("task count must be at least 1");
    if (total < count) throw ConfigError("total demand " + std::to_string(total) + " is below task count " +
                                         std::to_string(count));
    std::vector<int> out(static_cast<std::size_t>(count), total / count);
    for (int i = 0; i < total % count; ++i) ++out[static_cast<std::size_t>(i)];
    return out;
}

std::vector<int> TaskSpec::resolve_demands(int agent_count) const {
    std::vector<int> out = demands.empty() ? split_demand(total_demand, count) : demands;
    if (static_cast<int>(out.size()) != count) throw ConfigError("demand vector length differs from task count");
    if (std::any_of(out.begin(), out.end(), [](int d) { return d < 1; }))
        throw ConfigError("every task demand must be at least 1");
    if (std::accumulate(out.begin(), out.end(), 0) != total_demand)
        throw ConfigError("demand vector does not sum to total demand");
    if (total_demand > agent_count) throw ConfigError("total demand exceeds agent count");
    return out;
}

std::vector<TaskSite> place_tasks(RngStream& rng, std::span<const int> demands, GridDims dims, Rect home) {
    std::vector<Cell> free;
    free.reserve(static_cast<std::size_t>(dims.size()));
    for (int i = 0; i < dims.size(); ++i) {
        const Cell c = dims.cell(i);
        if (!home.contains(c)) free.push_back(c);
    }
    if (demands.size() > free.size())
        throw ConfigError(std::to_string(demands.size()) + " tasks do not fit in " + std::to_string(free.size()) +
                          " non-home vertices");
    std::vector<TaskSite> out;
    out.reserve(demands.size());
    for (std::size_t i = 0; i < demands.size(); ++i) {
        const auto j = i + static_cast<std::size_t>(rng.below(free.size() - i));
        std::swap(free[i], free[j]);
        out.push_back({free[i], demands[i]});
    }
    return out;
}

std::vector<AgentId> claim_task(std::span<const AgentId> claimants, int residual_demand, RngStream& rng) {
    std::vector<AgentId> pool(claimants.begin(), claimants.end());
    const auto take = std::min<std::size_t>(pool.size(), residual_demand > 0 ? static_cast<std::size_t>(residual_demand) : 0);
    if (take < pool.size()) {
        for (std::size_t i = 0; i < take; ++i) {
            const auto j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
            std::swap(pool[i], pool[j]);
        }
        pool.resize(take);
    }
    std::sort(pool.begin(), pool.end());
    return pool;
}

VertexState reconcile(const VertexState& current, std::span<AgentOutcome> outcomes, RngStream& rng) {
    std::vector<AgentId> claimants;
    for (const auto& o : outcomes)
        if (o.claims_task) claimants.push_back(o.id);
    if (claimants.empty()) return current;

    const int available = current.is_task ? current.residual_demand : 0;
    const auto winners = claim_task(claimants, available, rng);
    for (auto& o : outcomes) {
        if (!o.claims_task) continue;
        o.accepted = std::binary_search(winners.begin(), winners.end(), o.id);
    }
    VertexState next = current;
    next.residual_demand -= static_cast<int>(winners.size());
    return next;
}

}  // namespace swarmta

namespace swarmta {

std::optional<Cell> nearest_open_task(const LocalMapping& local, RngStream& rng) {
    std::optional<Cell> best;
    long best_d2 = 0;
    std::uint64_t ties = 0;
    local.for_each_vertex([&](Cell c, const VertexState& v) {
        if (!v.is_task || v.residual_demand <= 0) return;
        const long d2 = squared_distance(c, local.center());
        if (!best || d2 < best_d2) {
            best = c;
            best_d2 = d2;
            ties = 1;
        } else if (d2 == best_d2) {
            // Reservoir pick keeps every equidistant task equally likely.
            if (rng.below(++ties) == 0) best = c;
        }
    });
    return best;
}

}  // namespace swarmta
