#include "swarmta/levy.hpp"

#include <cmath>
#include <numbers>

namespace swarmta {

void validate(const LevyParams& params) {
    if (!(params.mu > 1.0)) throw ConfigError("levy exponent must exceed 1");
    if (!(params.max_length >= 1.0)) throw ConfigError("levy truncation must be at least 1");
}

Leg sample_leg(RngStream& rng, const LevyParams& params) {
    Leg leg;
    leg.angle = 2.0 * std::numbers::pi * rng.uniform();
    // Inverse CDF of the Pareto(1, mu - 1) law restricted to [1, max_length].
    const double shape = params.mu - 1.0;
    const double upper_tail = std::pow(params.max_length, -shape);
    const double u = rng.uniform();
    leg.travel_distance = std::pow(1.0 - u * (1.0 - upper_tail), -1.0 / shape);
    if (leg.travel_distance > params.max_length) leg.travel_distance = params.max_length;
    if (leg.travel_distance < 1.0) leg.travel_distance = 1.0;
    return leg;
}

Direction axis_step(double dx, double dy, RngStream& rng) {
    const double ax = std::abs(dx);
    const double ay = std::abs(dy);
    if (ax == 0.0 && ay == 0.0) {
        constexpr Direction any[] = {Direction::R, Direction::L, Direction::U, Direction::D};
        return any[rng.below(4)];
    }
    bool horizontal = ax > ay;
    if (ax == ay) horizontal = rng.below(2) == 0;
    if (horizontal) return dx > 0 ? Direction::R : Direction::L;
    return dy > 0 ? Direction::U : Direction::D;
}

Direction step_toward(Cell from, Cell to, RngStream& rng) {
    if (from == to) return Direction::S;
    return axis_step(to.x - from.x, to.y - from.y, rng);
}

Direction next_step(WalkState& walk, Cell pos, const LevyParams& params, RngStream& rng) {
    if (walk.leg_exhausted()) {
        const Leg leg = sample_leg(rng, params);
        walk.angle = leg.angle;
        walk.travel_distance = leg.travel_distance;
        walk.starting_point = pos;
        walk.progress = 0.0;
    }
    const double ex = walk.starting_point.x + walk.travel_distance * std::cos(walk.angle);
    const double ey = walk.starting_point.y + walk.travel_distance * std::sin(walk.angle);
    walk.progress += 1.0;
    return axis_step(ex - pos.x, ey - pos.y, rng);
}

}  // namespace swarmta
