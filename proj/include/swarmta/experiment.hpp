#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "swarmta/engine.hpp"
#include "swarmta/grid.hpp"
#include "swarmta/metrics.hpp"
#include "swarmta/world.hpp"

namespace swarmta {

enum class Algorithm { RW, HHTA, PROP };

std::string_view to_string(Algorithm a) noexcept;
Algorithm parse_algorithm(std::string_view text);

/// Everything a sweep needs. List-valued fields are sweep axes; the sweep
/// runs the cartesian product of the axes that apply to each algorithm.
struct ExperimentConfig {
    GridDims dims{50, 50};
    std::optional<Rect> home;  // default: 3x3 block centred on (M/2, N/2)
    int agents = 100;
    int total_demand = 80;
    std::vector<int> demands;  // optional explicit per-task demands

    std::vector<Algorithm> algorithms{Algorithm::HHTA};
    std::vector<int> task_counts{4};

    std::vector<double> commit{0.3};               // P_c
    std::vector<double> explore{2.0 / 3.0};        // P_e
    std::vector<double> message_rate{1.0 / 6.0};   // r_m
    std::vector<double> max_radius{25.0};          // d_p
    std::vector<int> rate{3};                      // r_p

    double levy_mu = 2.0;
    double levy_max = 0.0;  // 0 means M + N
    int hhta_radius = 2;
    int follower_radius = 2;
    int propagator_radius = 1;

    int trials = 1;
    std::uint64_t base_seed = 1;
    std::int64_t max_rounds = 50000;
    std::string output = "results.csv";
    bool deployment_offset = false;
    int threads = 0;  // 0 = hardware concurrency

    Rect home_rect() const;
    /// Throws ConfigError on any out-of-range value.
    void validate() const;
};

/// Parses `key = value` lines; '#' starts a comment; lists are comma
/// separated. Unknown keys and bad values raise ConfigError naming the
/// source and line. An empty input yields the defaults.
ExperimentConfig parse_config(std::istream& in, std::string_view source = "<config>");
ExperimentConfig parse_config_file(const std::string& path);

/// One combination of sweep-axis values.
struct SweepPoint {
    Algorithm algorithm = Algorithm::HHTA;
    int tasks = 1;
    double commit = 0.3;
    double explore = 2.0 / 3.0;
    double message_rate = 1.0 / 6.0;
    double max_radius = 25.0;
    int rate = 3;

    friend bool operator==(const SweepPoint&, const SweepPoint&) = default;
};

std::vector<SweepPoint> sweep_points(const ExperimentConfig& config);

struct TrialResult {
    SweepPoint point;
    int trial_id = 0;
    std::uint64_t seed = 0;
    int width = 0;
    int height = 0;
    int agents = 0;
    int total_demand = 0;
    std::optional<std::int64_t> completion_rounds;  // includes deployment offset when enabled
    bool timeout = false;
    std::optional<std::uint64_t> total_messages;     // absent for RW
    std::optional<double> msgs_per_agent_per_round;  // absent for RW
    std::optional<double> msgs_per_agent;            // per agent over the whole run

    friend bool operator==(const TrialResult&, const TrialResult&) = default;
};

/// A round-0 world and the policy that drives it.
struct Scenario {
    GridWorld world;
    std::unique_ptr<AgentPolicy> policy;
    std::vector<AgentId> message_class;  // agents whose messages are reported
};

/// Places tasks with the trial seed and builds the swarm for the point's
/// algorithm. PROP gets one propagator per vertex after the followers.
Scenario make_scenario(const ExperimentConfig& config, const SweepPoint& point, std::uint64_t seed);

/// A fully simulated trial, kept for the `run` subcommand and tests.
struct SimulatedTrial {
    TrialTrace trace;
    GridWorld final_world;
    std::vector<AgentId> message_class;  // agents whose messages are reported
    TrialResult result;
};

SimulatedTrial simulate_trial(const ExperimentConfig& config, const SweepPoint& point, int trial_id);
TrialResult run_point_trial(const ExperimentConfig& config, const SweepPoint& point, int trial_id);

/// All trials of all points, ordered by point then trial id regardless of
/// the order in which worker threads finish.
std::vector<TrialResult> run_sweep(const ExperimentConfig& config);

/// Fraction of results that timed out.
double timeout_fraction(const std::vector<TrialResult>& results) noexcept;

// ---- persistence -----------------------------------------------------------

class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string_view csv_header() noexcept;
void write_csv(std::ostream& out, const std::vector<TrialResult>& results);
/// Throws SchemaError when the header or a row does not match.
std::vector<TrialResult> read_csv(std::istream& in);

// ---- comparison ------------------------------------------------------------

struct ComparisonRow {
    int tasks = 0;
    std::size_t n_a = 0;
    std::size_t n_b = 0;
    double mean_a = 0.0;
    double mean_b = 0.0;
    double mean_difference = 0.0;  // a - b
    double p = 1.0;
    bool significant = false;  // p < 0.05
};

/// Welch test on completion times per shared task count. Timed-out trials
/// are left out. Throws ConfigError when no task count is shared.
std::vector<ComparisonRow> compare(const std::vector<TrialResult>& a, const std::vector<TrialResult>& b);
void print_comparison(std::ostream& out, const std::vector<ComparisonRow>& rows);

// ---- plotting --------------------------------------------------------------

struct PlotSpec {
    std::string x_column = "T";
    std::string y_metric = "completion_rounds";
    std::vector<std::string> series_columns{"algorithm"};
    std::string title;
};

/// Named layouts: density, messages, p_commit, p_explore, prop_radius,
/// prop_rate. Throws ConfigError for an unknown name.
PlotSpec plot_preset(std::string_view name);

/// Mean +/- standard deviation of y per x, one line per series, as SVG.
/// Throws SchemaError for unknown columns.
std::string emit_plot(const std::vector<TrialResult>& results, const PlotSpec& spec);

/// Column value as text, used for grouping; throws SchemaError if unknown.
std::string column_value(const TrialResult& r, std::string_view column);

}  // namespace swarmta
