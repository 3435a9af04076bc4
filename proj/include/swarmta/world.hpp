#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "swarmta/agent_state.hpp"
#include "swarmta/grid.hpp"

namespace swarmta {

struct TaskSite {
    Cell location{};
    int demand = 1;

    friend bool operator==(const TaskSite&, const TaskSite&) = default;
};

/// M x N grid of vertex states plus the swarm. Agents are stored by id:
/// agents[i].id == i always holds.
struct GridWorld {
    GridDims dims{};
    Rect home{};
    std::vector<VertexState> vertices;
    std::vector<Agent> agents;
    std::vector<std::uint64_t> messages_sent;  // per agent id
    std::int64_t round = 0;

    const VertexState& vertex(Cell c) const { return vertices[static_cast<std::size_t>(dims.index(c))]; }
    VertexState& vertex(Cell c) { return vertices[static_cast<std::size_t>(dims.index(c))]; }

    AgentId add_agent(Cell position, AgentState state);

    long total_residual_demand() const noexcept;
    long total_demand() const noexcept;
    std::vector<Cell> task_locations() const;
};

/// Builds a round-0 world. Task-performing agents are dealt round-robin over
/// the home cells in row-major order. Throws ConfigError on a bad layout.
GridWorld build_world(GridDims dims, Rect home, std::span<const TaskSite> tasks,
                      std::vector<AgentState> home_agents);

/// Agents grouped by vertex, ascending id within each vertex. Rebuilt from a
/// world snapshot at the start of every round.
class Occupancy {
public:
    Occupancy() = default;
    explicit Occupancy(const GridWorld& world) { rebuild(world); }

    void rebuild(const GridWorld& world);

    std::span<const AgentId> at(int vertex_index) const noexcept {
        const auto begin = offsets_[static_cast<std::size_t>(vertex_index)];
        const auto end = offsets_[static_cast<std::size_t>(vertex_index) + 1];
        return {ids_.data() + begin, end - begin};
    }

private:
    std::vector<std::size_t> offsets_;
    std::vector<AgentId> ids_;
};

/// C'(v): the vertex state, the agents standing on it and their states.
class LocalConfiguration {
public:
    LocalConfiguration(const GridWorld& world, Cell vertex, std::span<const AgentId> agents)
        : world_(&world), vertex_(vertex), agents_(agents) {}

    Cell vertex() const noexcept { return vertex_; }
    const VertexState& vertex_state() const { return world_->vertex(vertex_); }
    std::span<const AgentId> agents_here() const noexcept { return agents_; }
    /// Throws std::out_of_range when `id` is not on this vertex.
    const AgentState& state_of(AgentId id) const;

private:
    const GridWorld* world_;
    Cell vertex_;
    std::span<const AgentId> agents_;
};

/// M_v: local coordinates (a, b) with |a|, |b| <= radius mapped to the
/// configurations of the in-grid vertices at center + (a, b).
class LocalMapping {
public:
    LocalMapping(const GridWorld& world, const Occupancy& occupancy, Cell center, int radius)
        : world_(&world), occupancy_(&occupancy), center_(center), radius_(radius) {}

    Cell center() const noexcept { return center_; }
    int radius() const noexcept { return radius_; }
    const GridWorld& world() const noexcept { return *world_; }

    bool contains(int a, int b) const noexcept;
    /// Precondition: contains(a, b).
    LocalConfiguration at(int a, int b) const;
    LocalConfiguration here() const { return at(0, 0); }

    std::size_t size() const noexcept;
    std::vector<std::pair<int, int>> offsets() const;

    /// Visits every in-grid vertex in row-major order of offsets.
    template <class F>
    void for_each_vertex(F&& f) const {
        const GridDims d = world_->dims;
        for (int b = -radius_; b <= radius_; ++b) {
            const int y = center_.y + b;
            if (y < 0 || y >= d.height) continue;
            for (int a = -radius_; a <= radius_; ++a) {
                const int x = center_.x + a;
                if (x < 0 || x >= d.width) continue;
                f(Cell{x, y}, world_->vertices[static_cast<std::size_t>(d.index({x, y}))]);
            }
        }
    }

private:
    const GridWorld* world_;
    const Occupancy* occupancy_;
    Cell center_;
    int radius_;
};

LocalMapping neighborhood(const GridWorld& world, const Occupancy& occupancy, Cell v, int radius);

}  // namespace swarmta
