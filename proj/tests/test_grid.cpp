#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "swarmta/engine.hpp"
#include "swarmta/experiment.hpp"
#include "swarmta/hhta.hpp"
#include "swarmta/prop.hpp"
#include "swarmta/task.hpp"
#include "test_support.hpp"

using namespace swarmta;
using swarmta::testing::centred_home;

namespace {

std::vector<AgentState> followers(int n) { return make_followers(n); }

GridWorld paper_world(std::uint64_t seed, int tasks) {
    const GridDims dims{50, 50};
    const Rect home = centred_home(dims);
    RngStream rng(seed);
    const auto demands = split_demand(80, tasks);
    const auto sites = place_tasks(rng, demands, dims, home);
    return build_world(dims, home, sites, followers(100));
}

}  // namespace

TEST_CASE("build_world lays out the standard arena") {
    const GridWorld w = paper_world(3, 4);
    CHECK(w.dims == GridDims{50, 50});
    CHECK(w.home == Rect{24, 24, 26, 26});
    CHECK(w.agents.size() == 100);
    CHECK(w.total_demand() == 80);
    CHECK(w.total_residual_demand() == 80);
    CHECK(w.round == 0);
    for (std::size_t i = 0; i < w.agents.size(); ++i) {
        CHECK(w.agents[i].id == i);
        CHECK(w.home.contains(w.agents[i].position));
    }
    // round-robin: the 9 home cells hold 12 or 11 agents each
    std::map<Cell, int> per_cell;
    for (const auto& a : w.agents) ++per_cell[a.position];
    CHECK(per_cell.size() == 9);
    for (const auto& [c, n] : per_cell) CHECK((n == 11 || n == 12));
    CHECK(w.vertex({24, 24}).is_home);
    CHECK_FALSE(w.vertex({23, 24}).is_home);
    CHECK(w.task_locations().size() == 4);
}

TEST_CASE("build_world rejects bad layouts") {
    const GridDims dims{10, 10};
    const Rect home{4, 4, 5, 5};
    std::vector<TaskSite> on_home{{{4, 5}, 2}};
    CHECK_THROWS_AS(build_world(dims, home, on_home, followers(2)), ConfigError);
    std::vector<TaskSite> twice{{{1, 1}, 1}, {{1, 1}, 2}};
    CHECK_THROWS_AS(build_world(dims, home, twice, followers(3)), ConfigError);
    std::vector<TaskSite> outside{{{10, 0}, 1}};
    CHECK_THROWS_AS(build_world(dims, home, outside, followers(1)), ConfigError);
    std::vector<TaskSite> zero{{{1, 1}, 0}};
    CHECK_THROWS_AS(build_world(dims, home, zero, followers(1)), ConfigError);
    CHECK_THROWS_AS(build_world(dims, Rect{8, 8, 10, 10}, {}, followers(1)), ConfigError);
    CHECK_THROWS_AS(build_world(GridDims{0, 3}, Rect{}, {}, {}), ConfigError);
}

TEST_CASE("build_world on a single vertex") {
    const GridWorld w = build_world(GridDims{1, 1}, Rect{0, 0, 0, 0}, {}, followers(1));
    REQUIRE(w.agents.size() == 1);
    CHECK(w.agents[0].position == Cell{0, 0});
    CHECK(w.total_residual_demand() == 0);
}

TEST_CASE("neighborhood clips to the grid") {
    const GridWorld w = build_world(GridDims{50, 50}, Rect{24, 24, 26, 26}, {}, {});
    const Occupancy occ(w);
    CHECK(neighborhood(w, occ, {25, 25}, 1).size() == 9);
    CHECK(neighborhood(w, occ, {0, 0}, 1).size() == 4);
    const auto self = neighborhood(w, occ, {7, 3}, 0);
    CHECK(self.size() == 1);
    CHECK(self.offsets() == std::vector<std::pair<int, int>>{{0, 0}});

    // Brute force: count in-grid cells with Chebyshev distance <= I.
    std::mt19937 gen(11);
    for (int trial = 0; trial < 500; ++trial) {
        const Cell c{static_cast<int>(gen() % 50), static_cast<int>(gen() % 50)};
        const int r = static_cast<int>(gen() % 6);
        std::size_t expected = 0;
        for (int y = 0; y < 50; ++y)
            for (int x = 0; x < 50; ++x)
                if (chebyshev({x, y}, c) <= r) ++expected;
        const auto m = neighborhood(w, occ, c, r);
        REQUIRE(m.size() == expected);
        CHECK(m.contains(0, 0));
        for (auto [a, b] : m.offsets()) CHECK(std::max(std::abs(a), std::abs(b)) <= r);
        std::size_t visited = 0;
        m.for_each_vertex([&](Cell v, const VertexState&) {
            CHECK(chebyshev(v, c) <= r);
            ++visited;
        });
        CHECK(visited == expected);
    }
}

TEST_CASE("local configuration lists agents and their states") {
    GridWorld w = build_world(GridDims{4, 4}, Rect{0, 0, 1, 1}, {}, followers(8));
    const Occupancy occ(w);
    const auto m = neighborhood(w, occ, {0, 0}, 1);
    const auto here = m.here();
    REQUIRE(here.agents_here().size() == 2);
    CHECK(std::is_sorted(here.agents_here().begin(), here.agents_here().end()));
    for (AgentId id : here.agents_here()) CHECK(std::holds_alternative<FollowerState>(here.state_of(id)));
    CHECK_THROWS_AS(here.state_of(1), std::out_of_range);  // agent 1 sits on (1,0)
}

TEST_CASE("step with no agents leaves the world alone") {
    GridWorld w = build_world(GridDims{5, 5}, Rect{2, 2, 2, 2}, std::vector<TaskSite>{{{0, 0}, 2}}, {});
    testing::ScriptedPolicy policy;
    const auto before = w.vertices;
    step(w, policy, 1);
    CHECK(w.round == 1);
    CHECK(w.agents.empty());
    CHECK(w.vertices == before);
}

TEST_CASE("step applies a forced move") {
    GridWorld w = build_world(GridDims{2, 1}, Rect{0, 0, 0, 0}, {}, followers(1));
    testing::ScriptedPolicy policy;
    policy.script[0] = {Direction::R, false};
    step(w, policy, 1);
    CHECK(w.agents[0].position == Cell{1, 0});
    step(w, policy, 1);  // off the edge: stays put
    CHECK(w.agents[0].position == Cell{1, 0});
    CHECK(w.round == 2);
}

TEST_CASE("rule Q admits exactly rd of five claimants") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        GridWorld w = build_world(GridDims{3, 3}, Rect{0, 0, 0, 0}, std::vector<TaskSite>{{{1, 1}, 3}}, followers(5));
        testing::ScriptedPolicy policy;
        for (auto& a : w.agents) {
            a.position = {1, 1};
            policy.script[a.id] = {Direction::U, true};
        }
        Engine engine(policy, seed);
        engine.step(w);
        int winners = 0;
        for (const auto& a : w.agents) {
            const auto& f = std::get<FollowerState>(a.state);
            if (f.committed_task) {
                ++winners;
                CHECK(a.position == Cell{1, 2});  // accepted direction applied
            } else {
                CHECK(a.position == Cell{1, 1});  // rejected: prior state, stays
                CHECK(f == FollowerState{});
            }
        }
        CHECK(winners == 3);
        CHECK(w.vertex({1, 1}).residual_demand == 0);
        const auto& proposals = engine.last_proposals();
        REQUIRE(proposals.size() == 1);
        CHECK(std::count_if(proposals[0].agent_outcomes.begin(), proposals[0].agent_outcomes.end(),
                            [](const AgentOutcome& o) { return o.accepted; }) == 3);
    }
}

TEST_CASE("run_trial edge cases") {
    SUBCASE("already satisfied") {
        GridWorld w = build_world(GridDims{3, 3}, Rect{1, 1, 1, 1}, {}, followers(1));
        testing::ScriptedPolicy policy;
        const auto t = run_trial(w, policy, 1, 10);
        CHECK(t.completion_round == 0);
        CHECK_FALSE(t.timeout);
        CHECK(t.rounds() == 0);
    }
    SUBCASE("adjacent agent claims within two rounds") {
        GridWorld w = build_world(GridDims{3, 1}, Rect{0, 0, 0, 0}, std::vector<TaskSite>{{{1, 0}, 1}}, followers(1));
        testing::GreedyClaimPolicy policy;
        const auto t = run_trial(w, policy, 5, 10);
        REQUIRE(t.completion_round.has_value());
        CHECK(*t.completion_round <= 2);
        CHECK(t.residual_demand == std::vector<long>{1, 1, 0});
    }
    SUBCASE("unreachable demand times out") {
        GridWorld w = build_world(GridDims{3, 1}, Rect{0, 0, 0, 0}, std::vector<TaskSite>{{{2, 0}, 1}}, followers(1));
        testing::ScriptedPolicy policy;
        const auto t = run_trial(w, policy, 1, 10);
        CHECK(t.timeout);
        CHECK_FALSE(t.completion_round.has_value());
        CHECK(t.rounds() == 10);
        CHECK(w.round == 10);
    }
    SUBCASE("max_rounds must be positive") {
        GridWorld w = build_world(GridDims{3, 1}, Rect{0, 0, 0, 0}, {}, followers(1));
        testing::ScriptedPolicy policy;
        CHECK_THROWS_AS(run_trial(w, policy, 1, 0), std::invalid_argument);
    }
}

namespace {

void check_step_invariants(const GridWorld& before, const GridWorld& after) {
    REQUIRE(after.agents.size() == before.agents.size());
    CHECK(after.round == before.round + 1);
    for (std::size_t i = 0; i < after.agents.size(); ++i) {
        CHECK(after.agents[i].id == i);
        CHECK(manhattan(before.agents[i].position, after.agents[i].position) <= 1);
        CHECK(after.dims.contains(after.agents[i].position));
    }
    for (std::size_t v = 0; v < after.vertices.size(); ++v) {
        CHECK(after.vertices[v].residual_demand <= before.vertices[v].residual_demand);
        CHECK(after.vertices[v].residual_demand >= 0);
    }
}

long committed_and_arrived(const GridWorld& w) {
    long n = 0;
    for (const auto& a : w.agents)
        if (is_committed_and_arrived(a.state)) ++n;
    return n;
}

}  // namespace

TEST_CASE("per-step invariants hold for every policy") {
    for (const Algorithm alg : {Algorithm::RW, Algorithm::HHTA, Algorithm::PROP}) {
        CAPTURE(to_string(alg));
        ExperimentConfig cfg;
        cfg.dims = {20, 20};
        cfg.agents = 30;
        cfg.total_demand = 24;
        SweepPoint point;
        point.algorithm = alg;
        point.tasks = 6;
        point.max_radius = 8;
        Scenario s = make_scenario(cfg, point, 99);
        Engine engine(*s.policy, 99);
        for (int r = 0; r < 400 && s.world.total_residual_demand() > 0; ++r) {
            const GridWorld before = s.world;
            engine.step(s.world);
            check_step_invariants(before, s.world);
            // accounting identity
            CHECK(s.world.total_demand() - s.world.total_residual_demand() == committed_and_arrived(s.world));
        }
    }
}

TEST_CASE("equal seeds give bit-identical traces") {
    for (const Algorithm alg : {Algorithm::RW, Algorithm::HHTA, Algorithm::PROP}) {
        ExperimentConfig cfg;
        cfg.dims = {24, 24};
        cfg.agents = 40;
        cfg.total_demand = 30;
        SweepPoint point;
        point.algorithm = alg;
        point.tasks = 3;
        const auto a = simulate_trial(cfg, point, 2);
        const auto b = simulate_trial(cfg, point, 2);
        CHECK(a.trace == b.trace);
        CHECK(a.final_world.agents == b.final_world.agents);
        CHECK(a.result == b.result);
    }
}

TEST_CASE("vertex visiting order does not change the outcome") {
    for (const Algorithm alg : {Algorithm::RW, Algorithm::HHTA, Algorithm::PROP}) {
        CAPTURE(to_string(alg));
        ExperimentConfig cfg;
        cfg.dims = {16, 16};
        cfg.agents = 30;
        cfg.total_demand = 20;
        SweepPoint point;
        point.algorithm = alg;
        point.tasks = 4;
        point.max_radius = 10;
        Scenario s1 = make_scenario(cfg, point, 7);
        Scenario s2 = make_scenario(cfg, point, 7);
        std::vector<int> order(static_cast<std::size_t>(cfg.dims.size()));
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), std::mt19937(5));
        Engine forward(*s1.policy, 7);
        Engine shuffled(*s2.policy, 7);
        shuffled.set_vertex_order(order);
        const auto t1 = run_trial(s1.world, forward, 3000);
        const auto t2 = run_trial(s2.world, shuffled, 3000);
        CHECK(t1 == t2);
        CHECK(s1.world.agents == s2.world.agents);
        CHECK(s1.world.vertices == s2.world.vertices);
    }
}
