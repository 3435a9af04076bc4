#pragma once

#include "swarmta/grid.hpp"
#include "swarmta/rng.hpp"

namespace swarmta {

/// Leg lengths follow a Pareto law with minimum 1 and density ~ x^-mu,
/// truncated at max_length (M + N by default).
struct LevyParams {
    double mu = 2.0;
    double max_length = 100.0;
};

struct WalkState {
    double angle = 0.0;  // [0, 2pi)
    Cell starting_point{};
    double travel_distance = 1.0;
    double progress = 1.0;

    bool leg_exhausted() const noexcept { return progress >= travel_distance; }
    /// Forces a fresh leg on the next step.
    void reset() noexcept { progress = travel_distance; }

    friend bool operator==(const WalkState&, const WalkState&) = default;
};

struct Leg {
    double angle = 0.0;
    double travel_distance = 1.0;
};

void validate(const LevyParams& params);

Leg sample_leg(RngStream& rng, const LevyParams& params);

/// Unit step along whichever axis has the larger remaining displacement.
/// Equal magnitudes are split by a coin flip; a zero displacement picks
/// uniformly among the four moves.
Direction axis_step(double dx, double dy, RngStream& rng);

/// Axis-greedy step from one cell toward another; S when already there.
Direction step_toward(Cell from, Cell to, RngStream& rng);

/// Advances the walk by one grid step, sampling a new leg first when the
/// current one is used up. Never returns S.
Direction next_step(WalkState& walk, Cell pos, const LevyParams& params, RngStream& rng);

}  // namespace swarmta
