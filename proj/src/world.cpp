#include "swarmta/world.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace swarmta {

AgentId GridWorld::add_agent(Cell position, AgentState state) {
    if (!dims.contains(position)) throw ConfigError("agent placed outside grid at " + to_string(position));
    const auto id = static_cast<AgentId>(agents.size());
    agents.push_back(Agent{id, position, std::move(state)});
    messages_sent.push_back(0);
    return id;
}

long GridWorld::total_residual_demand() const noexcept {
    long total = 0;
    for (const auto& v : vertices)
        if (v.is_task) total += v.residual_demand;
    return total;
}

long GridWorld::total_demand() const noexcept {
    long total = 0;
    for (const auto& v : vertices)
        if (v.is_task) total += v.demand;
    return total;
}

std::vector<Cell> GridWorld::task_locations() const {
    std::vector<Cell> out;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i].is_task) out.push_back(dims.cell(static_cast<int>(i)));
    return out;
}

GridWorld build_world(GridDims dims, Rect home, std::span<const TaskSite> tasks,
                      std::vector<AgentState> home_agents) {
    if (dims.width < 1 || dims.height < 1) throw ConfigError("grid dimensions must be positive");
    if (home.empty() || !dims.contains({home.x0, home.y0}) || !dims.contains({home.x1, home.y1}))
        throw ConfigError("home rectangle must be a non-empty region inside the grid");

    GridWorld world;
    world.dims = dims;
    world.home = home;
    world.vertices.resize(static_cast<std::size_t>(dims.size()));
    for (int i = 0; i < dims.size(); ++i)
        world.vertices[static_cast<std::size_t>(i)].is_home = home.contains(dims.cell(i));

    std::set<Cell> seen;
    for (const auto& task : tasks) {
        if (!dims.contains(task.location)) throw ConfigError("task outside grid at " + to_string(task.location));
        if (home.contains(task.location)) throw ConfigError("task on home vertex " + to_string(task.location));
        if (!seen.insert(task.location).second)
            throw ConfigError("two tasks share location " + to_string(task.location));
        if (task.demand < 1) throw ConfigError("task demand must be at least 1");
        auto& v = world.vertex(task.location);
        v.is_task = true;
        v.demand = task.demand;
        v.residual_demand = task.demand;
        v.task_location = task.location;
    }

    std::vector<Cell> home_cells;
    for (int y = home.y0; y <= home.y1; ++y)
        for (int x = home.x0; x <= home.x1; ++x) home_cells.push_back({x, y});
    world.agents.reserve(home_agents.size());
    for (std::size_t i = 0; i < home_agents.size(); ++i)
        world.add_agent(home_cells[i % home_cells.size()], std::move(home_agents[i]));
    return world;
}

void Occupancy::rebuild(const GridWorld& world) {
    const auto n = static_cast<std::size_t>(world.dims.size());
    offsets_.assign(n + 1, 0);
    for (const auto& a : world.agents) ++offsets_[static_cast<std::size_t>(world.dims.index(a.position)) + 1];
    for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
    ids_.resize(world.agents.size());
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    // Agents are stored by ascending id, so each bucket comes out sorted.
    for (const auto& a : world.agents) ids_[cursor[static_cast<std::size_t>(world.dims.index(a.position))]++] = a.id;
}

const AgentState& LocalConfiguration::state_of(AgentId id) const {
    if (std::find(agents_.begin(), agents_.end(), id) == agents_.end())
        throw std::out_of_range("agent " + std::to_string(id) + " is not at " + to_string(vertex_));
    return world_->agents[id].state;
}

bool LocalMapping::contains(int a, int b) const noexcept {
    if (a < -radius_ || a > radius_ || b < -radius_ || b > radius_) return false;
    return world_->dims.contains({center_.x + a, center_.y + b});
}

LocalConfiguration LocalMapping::at(int a, int b) const {
    const Cell c{center_.x + a, center_.y + b};
    return LocalConfiguration(*world_, c, occupancy_->at(world_->dims.index(c)));
}

std::size_t LocalMapping::size() const noexcept {
    std::size_t n = 0;
    for_each_vertex([&](Cell, const VertexState&) { ++n; });
    return n;
}

std::vector<std::pair<int, int>> LocalMapping::offsets() const {
    std::vector<std::pair<int, int>> out;
    for_each_vertex([&](Cell c, const VertexState&) { out.emplace_back(c.x - center_.x, c.y - center_.y); });
    return out;
}

LocalMapping neighborhood(const GridWorld& world, const Occupancy& occupancy, Cell v, int radius) {
    return LocalMapping(world, occupancy, v, radius < 0 ? 0 : radius);
}

}  // namespace swarmta
