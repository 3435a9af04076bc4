#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "swarmta/agent_state.hpp"

namespace swarmta {

struct TrialTrace {
    std::vector<long> residual_demand;        // index r = total rd after r rounds
    std::vector<std::uint64_t> messages_sent;  // per agent id
    std::optional<std::int64_t> completion_round;
    bool timeout = false;
    std::string fingerprint;
    std::uint64_t seed = 0;

    /// Rounds actually simulated.
    std::int64_t rounds() const noexcept {
        return residual_demand.empty() ? 0 : static_cast<std::int64_t>(residual_demand.size()) - 1;
    }

    friend bool operator==(const TrialTrace&, const TrialTrace&) = default;
};

/// First round index at which the residual series reaches zero.
std::optional<std::int64_t> completion_time(const TrialTrace& trace);

struct MessageRate {
    double value = 0.0;
    bool undefined = false;  // zero population or zero elapsed rounds
};

MessageRate messages_per_agent_per_round(std::uint64_t total_messages, std::size_t population,
                                         std::int64_t elapsed_rounds);

/// Rate over the agents in `agent_class`, using the completion round when
/// present and the simulated round count otherwise.
MessageRate messages_per_agent_per_round(const TrialTrace& trace, std::span<const AgentId> agent_class);

struct SummaryStats {
    std::size_t n = 0;
    double mean = 0.0;
    double stddev = 0.0;  // sample (n - 1) standard deviation; 0 when n == 1
    double std_error = 0.0;
};

/// Throws std::invalid_argument on an empty sample.
SummaryStats summarize(std::span<const double> sample);

// ---- special functions -----------------------------------------------------

/// I_x(a, b), the regularized incomplete beta function, for a, b > 0 and
/// x in [0, 1]. Continued fraction (modified Lentz) with the usual symmetry
/// switch at x > (a + 1) / (a + b + 2).
double regularized_incomplete_beta(double a, double b, double x);

/// Student-t distribution function with `df` degrees of freedom (df > 0,
/// non-integer allowed).
double student_t_cdf(double t, double df);

struct WelchResult {
    double t = 0.0;
    double df = 0.0;
    double p = 1.0;  // two-sided
};

/// Two-sided Welch t-test with Welch-Satterthwaite degrees of freedom.
/// Requires at least two observations per sample; throws
/// std::invalid_argument when both samples have zero variance.
WelchResult welch_t_test(std::span<const double> a, std::span<const double> b);

/// Spearman rank correlation with average ranks for ties.
double spearman_rho(std::span<const double> x, std::span<const double> y);

}  // namespace swarmta
