#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <numeric>
#include <set>

#include "swarmta/task.hpp"
#include "test_support.hpp"

using namespace swarmta;

TEST_CASE("split_demand") {
    CHECK(split_demand(80, 1) == std::vector<int>{80});
    CHECK(split_demand(80, 3) == std::vector<int>{27, 27, 26});
    CHECK(split_demand(80, 80) == std::vector<int>(80, 1));
    CHECK(split_demand(10, 4) == std::vector<int>{3, 3, 2, 2});
    CHECK_THROWS_AS(split_demand(3, 4), ConfigError);
    CHECK_THROWS_AS(split_demand(3, 0), ConfigError);
    for (int total = 1; total <= 120; ++total)
        for (int count = 1; count <= total; count += 7) {
            const auto d = split_demand(total, count);
            REQUIRE(static_cast<int>(d.size()) == count);
            CHECK(std::accumulate(d.begin(), d.end(), 0) == total);
            CHECK(*std::min_element(d.begin(), d.end()) >= 1);
            CHECK(*std::max_element(d.begin(), d.end()) - *std::min_element(d.begin(), d.end()) <= 1);
            CHECK(std::is_sorted(d.rbegin(), d.rend()));
        }
}

TEST_CASE("TaskSpec resolves demands") {
    CHECK(TaskSpec{3, 80, {}}.resolve_demands(100) == std::vector<int>{27, 27, 26});
    CHECK(TaskSpec{2, 10, {7, 3}}.resolve_demands(10) == std::vector<int>{7, 3});
    CHECK_THROWS_AS(TaskSpec(2, 10, {7, 4}).resolve_demands(100), ConfigError);
    CHECK_THROWS_AS(TaskSpec(2, 10, {10, 0}).resolve_demands(100), ConfigError);
    CHECK_THROWS_AS(TaskSpec(3, 10, {5, 5}).resolve_demands(100), ConfigError);
    CHECK_THROWS_AS(TaskSpec(1, 101, {}).resolve_demands(100), ConfigError);
}

TEST_CASE("place_tasks") {
    const GridDims dims{50, 50};
    const Rect home{24, 24, 26, 26};
    SUBCASE("two tasks off the nest") {
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            RngStream rng(seed);
            const std::vector<int> demands{40, 40};
            const auto sites = place_tasks(rng, demands, dims, home);
            REQUIRE(sites.size() == 2);
            CHECK(sites[0].location != sites[1].location);
            for (const auto& s : sites) {
                CHECK_FALSE(home.contains(s.location));
                CHECK(dims.contains(s.location));
                CHECK(s.demand == 40);
            }
        }
    }
    SUBCASE("saturation fills every free vertex") {
        const GridDims small{6, 5};
        const Rect h{2, 2, 3, 2};
        const std::vector<int> demands(static_cast<std::size_t>(small.size() - h.area()), 1);
        RngStream rng(4);
        const auto sites = place_tasks(rng, demands, small, h);
        std::set<Cell> seen;
        for (const auto& s : sites) seen.insert(s.location);
        CHECK(seen.size() == demands.size());
        const std::vector<int> one_more(demands.size() + 1, 1);
        CHECK_THROWS_AS(place_tasks(rng, one_more, small, h), ConfigError);
    }
    SUBCASE("fixed seed gives the same placement") {
        const std::vector<int> demands{3, 2, 2, 1};
        RngStream a(77), b(77);
        CHECK(place_tasks(a, demands, dims, home) == place_tasks(b, demands, dims, home));
    }
    SUBCASE("locations are roughly uniform") {
        // Each of the 2491 free cells should be picked about equally often.
        std::vector<int> hits(static_cast<std::size_t>(dims.size()), 0);
        const std::vector<int> demands{1};
        for (std::uint64_t seed = 0; seed < 100000; ++seed) {
            RngStream rng(seed);
            ++hits[static_cast<std::size_t>(dims.index(place_tasks(rng, demands, dims, home)[0].location))];
        }
        int left = 0;
        for (int i = 0; i < dims.size(); ++i)
            if (dims.cell(i).x < 25 && !home.contains(dims.cell(i))) left += hits[static_cast<std::size_t>(i)];
        // 1247 of the 2491 free cells have x < 25
        const double expected = 100000.0 * (25 * 50 - 3 * 1) / 2491.0;
        CHECK(std::abs(left - expected) < 5 * std::sqrt(expected));
    }
}

TEST_CASE("claim_task examples") {
    RngStream rng(1);
    const std::vector<AgentId> five{3, 9, 1, 4, 7};
    const auto w = claim_task(five, 3, rng);
    CHECK(w.size() == 3);
    CHECK(std::is_sorted(w.begin(), w.end()));
    for (AgentId id : w) CHECK(std::find(five.begin(), five.end(), id) != five.end());
    const std::vector<AgentId> two{5, 2};
    CHECK(claim_task(two, 5, rng) == std::vector<AgentId>{2, 5});
    CHECK(claim_task({}, 4, rng).empty());
    CHECK(claim_task(five, 0, rng).empty());
}

TEST_CASE("claim cap holds over random inputs") {
    std::mt19937_64 gen(2024);
    for (int trial = 0; trial < 10000; ++trial) {
        const int s = static_cast<int>(gen() % 12);
        const int rd = static_cast<int>(gen() % 10);
        std::set<AgentId> pool;
        while (static_cast<int>(pool.size()) < s) pool.insert(static_cast<AgentId>(gen() % 1000));
        const std::vector<AgentId> claimants(pool.begin(), pool.end());
        RngStream rng(gen());
        const auto winners = claim_task(claimants, rd, rng);
        REQUIRE(winners.size() == static_cast<std::size_t>(std::min(s, rd)));
        CHECK(std::set<AgentId>(winners.begin(), winners.end()).size() == winners.size());
        for (AgentId id : winners) CHECK(pool.count(id) == 1);

        // Through rule Q the vertex loses exactly |winners| demand.
        VertexState v{true, false, 20, rd, {0, 0}};
        std::vector<AgentOutcome> outcomes;
        for (AgentId id : claimants) outcomes.push_back({id, Direction::S, true, true});
        outcomes.push_back({5000, Direction::R, false, true});
        const VertexState out = reconcile(v, outcomes, rng);
        CHECK(out.residual_demand == rd - std::min(s, rd));
        CHECK(std::count_if(outcomes.begin(), outcomes.end(), [](const AgentOutcome& o) {
                  return o.claims_task && o.accepted;
              }) == std::min(s, rd));
        CHECK(outcomes.back().accepted);
    }
}

TEST_CASE("claim winners are chosen uniformly") {
    const std::vector<AgentId> claimants{0, 1, 2, 3};
    std::array<int, 4> wins{};
    RngStream rng(9);
    for (int i = 0; i < 40000; ++i)
        for (AgentId id : claim_task(claimants, 1, rng)) ++wins[id];
    for (int n : wins) CHECK(std::abs(n - 10000) < 400);
}

TEST_CASE("nearest_open_task") {
    const GridDims dims{9, 9};
    std::vector<TaskSite> tasks{{{6, 4}, 1}, {{4, 7}, 2}, {{2, 2}, 1}};
    GridWorld w = build_world(dims, Rect{0, 8, 0, 8}, tasks, {});
    const Occupancy occ(w);
    RngStream rng(3);
    CHECK(nearest_open_task(neighborhood(w, occ, {4, 4}, 2), rng) == Cell{6, 4});
    CHECK_FALSE(nearest_open_task(neighborhood(w, occ, {4, 4}, 1), rng).has_value());
    w.vertex({6, 4}).residual_demand = 0;
    const Occupancy occ2(w);
    CHECK(nearest_open_task(neighborhood(w, occ2, {4, 5}, 2), rng) == Cell{4, 7});

    // Equidistant tasks: both get picked.
    std::vector<TaskSite> pair{{{2, 4}, 1}, {{6, 4}, 1}};
    const GridWorld w2 = build_world(dims, Rect{0, 8, 0, 8}, pair, {});
    const Occupancy occ3(w2);
    int left = 0;
    for (int i = 0; i < 2000; ++i)
        if (nearest_open_task(neighborhood(w2, occ3, {4, 4}, 2), rng) == Cell{2, 4}) ++left;
    CHECK(left > 900);
    CHECK(left < 1100);
}
