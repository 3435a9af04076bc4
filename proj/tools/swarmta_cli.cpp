// Command-line front end: run, sweep, compare, plot.
//
// Exit codes: 0 success, 1 configuration error, 2 I/O error,
// 3 sweep where more than half of the trials timed out.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "swarmta/experiment.hpp"

namespace {

constexpr int kConfigError = 1;
constexpr int kIoError = 2;
constexpr int kTimeoutDominated = 3;

swarmta::ExperimentConfig load_config(const std::string& path) {
    if (path.empty()) {
        swarmta::ExperimentConfig c;
        c.validate();
        return c;
    }
    return swarmta::parse_config_file(path);
}

std::vector<swarmta::TrialResult> load_results(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open " + path);
    return swarmta::read_csv(in);
}

int cmd_run(const std::string& config_path, const std::optional<std::string>& algorithm,
            const std::optional<int>& tasks, const std::optional<std::uint64_t>& seed, const std::string& trace_path) {
    auto config = load_config(config_path);
    if (algorithm) config.algorithms = {swarmta::parse_algorithm(*algorithm)};
    if (tasks) config.task_counts = {*tasks};
    if (seed) config.base_seed = *seed;
    config.validate();
    const auto point = swarmta::sweep_points(config).front();
    const auto trial = swarmta::simulate_trial(config, point, 0);
    const auto& r = trial.result;

    std::cout << "algorithm          " << swarmta::to_string(point.algorithm) << '\n'
              << "seed               " << r.seed << '\n'
              << "grid               " << r.width << "x" << r.height << '\n'
              << "agents             " << r.agents << '\n'
              << "tasks              " << point.tasks << " (total demand " << r.total_demand << ")\n"
              << "rounds simulated   " << trial.trace.rounds() << '\n';
    if (r.completion_rounds)
        std::cout << "completion round   " << *r.completion_rounds << '\n';
    else
        std::cout << "completion round   timeout\n";
    if (r.total_messages)
        std::cout << "total messages     " << *r.total_messages << '\n'
                  << "msgs/agent/round   " << *r.msgs_per_agent_per_round << '\n';

    if (!trace_path.empty()) {
        std::ofstream out(trace_path);
        if (!out) throw std::ios_base::failure("cannot write " + trace_path);
        out << "round,total_residual_demand\n";
        for (std::size_t i = 0; i < trial.trace.residual_demand.size(); ++i)
            out << i << ',' << trial.trace.residual_demand[i] << '\n';
    }
    return r.timeout ? kTimeoutDominated : 0;
}

int cmd_sweep(const std::string& config_path, const std::string& output, int threads) {
    auto config = load_config(config_path);
    if (!output.empty()) config.output = output;
    if (threads > 0) config.threads = threads;
    const auto results = swarmta::run_sweep(config);
    std::ofstream out(config.output);
    if (!out) throw std::ios_base::failure("cannot write " + config.output);
    swarmta::write_csv(out, results);
    out.close();
    if (!out) throw std::ios_base::failure("failed writing " + config.output);
    const double frac = swarmta::timeout_fraction(results);
    std::cout << "wrote " << results.size() << " trials to " << config.output << " (timeouts: " << frac * 100.0
              << "%)\n";
    return frac > 0.5 ? kTimeoutDominated : 0;
}

int cmd_compare(const std::string& a, const std::string& b) {
    const auto rows = swarmta::compare(load_results(a), load_results(b));
    std::cout << "A = " << a << "\nB = " << b << "\n";
    swarmta::print_comparison(std::cout, rows);
    return 0;
}

int cmd_plot(const std::vector<std::string>& inputs, const std::string& preset, const std::string& x,
             const std::string& y, const std::vector<std::string>& series, const std::string& title,
             const std::string& output) {
    std::vector<swarmta::TrialResult> all;
    for (const auto& path : inputs) {
        auto rs = load_results(path);
        all.insert(all.end(), rs.begin(), rs.end());
    }
    swarmta::PlotSpec spec = preset.empty() ? swarmta::PlotSpec{} : swarmta::plot_preset(preset);
    if (!x.empty()) spec.x_column = x;
    if (!y.empty()) spec.y_metric = y;
    if (!series.empty()) spec.series_columns = series;
    if (!title.empty()) spec.title = title;
    const std::string svg = swarmta::emit_plot(all, spec);
    std::ofstream out(output);
    if (!out) throw std::ios_base::failure("cannot write " + output);
    out << svg;
    std::cout << "wrote " << output << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Swarm task-allocation simulator and experiment harness"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::string> algorithm;
    std::optional<int> tasks;
    std::optional<std::uint64_t> seed;
    std::string trace_path;
    auto* run = app.add_subcommand("run", "Run a single trial and print a summary");
    run->add_option("-c,--config", config_path, "Experiment config file");
    run->add_option("-a,--algorithm", algorithm, "RW, HHTA or PROP");
    run->add_option("-T,--tasks", tasks, "Number of tasks");
    run->add_option("-s,--seed", seed, "Trial seed");
    run->add_option("--trace", trace_path, "Write the per-round residual demand series here");

    std::string sweep_output;
    int threads = 0;
    auto* sweep = app.add_subcommand("sweep", "Run every trial of a config and write CSV");
    sweep->add_option("-c,--config", config_path, "Experiment config file")->required();
    sweep->add_option("-o,--output", sweep_output, "CSV path (overrides the config)");
    sweep->add_option("-j,--threads", threads, "Worker threads");

    std::string file_a, file_b;
    auto* cmp = app.add_subcommand("compare", "Welch t-test per shared T between two result files");
    cmp->add_option("a", file_a, "First results CSV")->required();
    cmp->add_option("b", file_b, "Second results CSV")->required();

    std::vector<std::string> inputs, series;
    std::string preset, x_column, y_metric, title, plot_output;
    auto* plot = app.add_subcommand("plot", "Render results as an SVG line plot");
    plot->add_option("-i,--input", inputs, "Results CSV files")->required();
    plot->add_option("-p,--preset", preset, "density, messages, p_commit, p_explore, prop_radius, prop_rate");
    plot->add_option("-x,--x", x_column, "X column");
    plot->add_option("-y,--y", y_metric, "completion_rounds, total_messages, msgs_per_agent_per_round, msgs_per_agent");
    plot->add_option("--series", series, "Columns that distinguish series");
    plot->add_option("--title", title, "Plot title");
    plot->add_option("-o,--output", plot_output, "SVG path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    }

    try {
        if (*run) return cmd_run(config_path, algorithm, tasks, seed, trace_path);
        if (*sweep) return cmd_sweep(config_path, sweep_output, threads);
        if (*cmp) return cmd_compare(file_a, file_b);
        if (*plot) return cmd_plot(inputs, preset, x_column, y_metric, series, title, plot_output);
    } catch (const swarmta::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const swarmta::SchemaError& e) {
        std::cerr << "bad results file: " << e.what() << '\n';
        return kIoError;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kIoError;
    }
    return 0;
}
