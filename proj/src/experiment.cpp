#include "swarmta/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include "swarmta/engine.hpp"
#include "swarmta/hhta.hpp"
#include "swarmta/prop.hpp"
#include "swarmta/task.hpp"

namespace swarmta {

std::string_view to_string(Algorithm a) noexcept {
    switch (a) {
        case Algorithm::RW: return "RW";
        case Algorithm::HHTA: return "HHTA";
        case Algorithm::PROP: return "PROP";
    }
    return "?";
}

Algorithm parse_algorithm(std::string_view text) {
    std::string upper(text);
    std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
    if (upper == "RW") return Algorithm::RW;
    if (upper == "HHTA") return Algorithm::HHTA;
    if (upper == "PROP") return Algorithm::PROP;
    throw ConfigError("unknown algorithm '" + std::string(text) + "' (expected RW, HHTA or PROP)");
}

Rect ExperimentConfig::home_rect() const {
    if (home) return *home;
    const int cx = dims.width / 2;
    const int cy = dims.height / 2;
    Rect r{cx - 1, cy - 1, cx + 1, cy + 1};
    r.x0 = std::max(r.x0, 0);
    r.y0 = std::max(r.y0, 0);
    r.x1 = std::min(r.x1, dims.width - 1);
    r.y1 = std::min(r.y1, dims.height - 1);
    return r;
}

void ExperimentConfig::validate() const {
    if (dims.width < 1 || dims.height < 1) throw ConfigError("M and N must be at least 1");
    const Rect h = home_rect();
    if (h.empty() || !dims.contains({h.x0, h.y0}) || !dims.contains({h.x1, h.y1}))
        throw ConfigError("home rectangle must lie inside the grid");
    if (agents < 1) throw ConfigError("agents must be at least 1");
    if (total_demand < 1) throw ConfigError("total_demand must be at least 1");
    if (total_demand > agents) throw ConfigError("total_demand must not exceed agents");
    if (trials < 1) throw ConfigError("trials must be at least 1");
    if (max_rounds < 1) throw ConfigError("max_rounds must be at least 1");
    if (algorithms.empty()) throw ConfigError("algorithm list is empty");
    if (task_counts.empty()) throw ConfigError("T list is empty");
    const int free_vertices = dims.size() - h.area();
    for (int t : task_counts) {
        if (t < 1) throw ConfigError("T values must be at least 1");
        if (t > total_demand) throw ConfigError("T = " + std::to_string(t) + " exceeds total_demand");
        if (t > free_vertices) throw ConfigError("T = " + std::to_string(t) + " exceeds the non-home vertices");
    }
    if (!demands.empty() && (task_counts.size() != 1 || static_cast<int>(demands.size()) != task_counts[0]))
        throw ConfigError("explicit demands need exactly one T value matching their length");
    auto probabilities = [](const std::vector<double>& v, const char* name) {
        if (v.empty()) throw ConfigError(std::string(name) + " list is empty");
        for (double p : v)
            if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(std::string(name) + " must lie in [0, 1]");
    };
    probabilities(commit, "P_c");
    probabilities(explore, "P_e");
    probabilities(message_rate, "r_m");
    if (max_radius.empty()) throw ConfigError("d_p list is empty");
    for (double d : max_radius)
        if (std::isnan(d) || d < 0.0) throw ConfigError("d_p must be non-negative");
    if (rate.empty()) throw ConfigError("r_p list is empty");
    for (int r : rate)
        if (r < 1) throw ConfigError("r_p must be at least 1");
    if (!(levy_mu > 1.0)) throw ConfigError("levy_mu must exceed 1");
    if (levy_max != 0.0 && !(levy_max >= 1.0)) throw ConfigError("levy_max must be 0 (auto) or at least 1");
    if (hhta_radius < 0 || follower_radius < 0 || propagator_radius < 0)
        throw ConfigError("influence radii must be non-negative");
    if (threads < 0) throw ConfigError("threads must be non-negative");
}

// ---- parsing ---------------------------------------------------------------

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = s.find(',', start);
        out.push_back(trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

template <class T>
T parse_number(const std::string& text) {
    T value{};
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && text.front() == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) throw ConfigError("'" + text + "' is not a valid number");
    return value;
}

bool parse_bool(const std::string& text) {
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    throw ConfigError("'" + text + "' is not a boolean");
}

template <class T>
std::vector<T> parse_list(const std::string& value) {
    std::vector<T> out;
    for (const auto& item : split_list(value)) out.push_back(parse_number<T>(item));
    return out;
}

void apply(ExperimentConfig& c, const std::string& key, const std::string& value) {
    if (key == "M") c.dims.width = parse_number<int>(value);
    else if (key == "N") c.dims.height = parse_number<int>(value);
    else if (key == "home") {
        const auto v = parse_list<int>(value);
        if (v.size() != 4) throw ConfigError("home needs four integers x0,y0,x1,y1");
        c.home = Rect{v[0], v[1], v[2], v[3]};
    } else if (key == "agents") c.agents = parse_number<int>(value);
    else if (key == "total_demand") c.total_demand = parse_number<int>(value);
    else if (key == "demands") c.demands = parse_list<int>(value);
    else if (key == "algorithm") {
        c.algorithms.clear();
        for (const auto& item : split_list(value)) c.algorithms.push_back(parse_algorithm(item));
    } else if (key == "T") c.task_counts = parse_list<int>(value);
    else if (key == "P_c") c.commit = parse_list<double>(value);
    else if (key == "P_e") c.explore = parse_list<double>(value);
    else if (key == "r_m") c.message_rate = parse_list<double>(value);
    else if (key == "d_p") c.max_radius = parse_list<double>(value);
    else if (key == "r_p") c.rate = parse_list<int>(value);
    else if (key == "levy_mu") c.levy_mu = parse_number<double>(value);
    else if (key == "levy_max") c.levy_max = parse_number<double>(value);
    else if (key == "influence_radius") c.hhta_radius = parse_number<int>(value);
    else if (key == "follower_radius") c.follower_radius = parse_number<int>(value);
    else if (key == "propagator_radius") c.propagator_radius = parse_number<int>(value);
    else if (key == "trials") c.trials = parse_number<int>(value);
    else if (key == "base_seed") c.base_seed = parse_number<std::uint64_t>(value);
    else if (key == "max_rounds") c.max_rounds = parse_number<std::int64_t>(value);
    else if (key == "output") c.output = value;
    else if (key == "deployment_offset") c.deployment_offset = parse_bool(value);
    else if (key == "threads") c.threads = parse_number<int>(value);
    else throw ConfigError("unknown key '" + key + "'");
}

}  // namespace

ExperimentConfig parse_config(std::istream& in, std::string_view source) {
    ExperimentConfig config;
    std::string line;
    int line_no = 0;
    // Cross-field checks can fail midway through a valid file (agents set
    // before total_demand), so a failure only counts if it survives to the
    // end. It is then reported against the line that last triggered it.
    std::map<std::string, std::string> blame;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        const std::string body = trim(std::string_view(line).substr(0, hash));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        const std::string where = std::string(source) + ":" + std::to_string(line_no) + ": ";
        if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value'");
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        if (value.empty()) throw ConfigError(where + "empty value for '" + key + "'");
        try {
            apply(config, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(where + e.what());
        }
        try {
            config.validate();
        } catch (const ConfigError& e) {
            blame[e.what()] = where;
        }
    }
    try {
        config.validate();
    } catch (const ConfigError& e) {
        const auto it = blame.find(e.what());
        throw ConfigError((it == blame.end() ? std::string(source) + ": " : it->second) + e.what());
    }
    return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open config file " + path);
    return parse_config(in, path);
}

// ---- sweeps ----------------------------------------------------------------

std::vector<SweepPoint> sweep_points(const ExperimentConfig& config) {
    std::vector<SweepPoint> out;
    for (const Algorithm alg : config.algorithms)
        for (const int t : config.task_counts) {
            SweepPoint base;
            base.algorithm = alg;
            base.tasks = t;
            base.commit = config.commit.front();
            base.explore = config.explore.front();
            base.message_rate = config.message_rate.front();
            base.max_radius = config.max_radius.front();
            base.rate = config.rate.front();
            switch (alg) {
                case Algorithm::RW: out.push_back(base); break;
                case Algorithm::HHTA:
                    for (double pc : config.commit)
                        for (double pe : config.explore)
                            for (double rm : config.message_rate) {
                                SweepPoint p = base;
                                p.commit = pc;
                                p.explore = pe;
                                p.message_rate = rm;
                                out.push_back(p);
                            }
                    break;
                case Algorithm::PROP:
                    for (double dp : config.max_radius)
                        for (int rp : config.rate) {
                            SweepPoint p = base;
                            p.max_radius = dp;
                            p.rate = rp;
                            out.push_back(p);
                        }
                    break;
            }
        }
    return out;
}

namespace {

std::string fingerprint(const ExperimentConfig& c, const SweepPoint& p) {
    std::ostringstream os;
    const Rect h = c.home_rect();
    os << to_string(p.algorithm) << ";M=" << c.dims.width << ";N=" << c.dims.height << ";home=" << h.x0 << ','
       << h.y0 << ',' << h.x1 << ',' << h.y1 << ";agents=" << c.agents << ";T=" << p.tasks
       << ";demand=" << c.total_demand << ";P_c=" << p.commit << ";P_e=" << p.explore << ";r_m=" << p.message_rate
       << ";d_p=" << p.max_radius << ";r_p=" << p.rate << ";mu=" << c.levy_mu;
    return os.str();
}

}  // namespace

Scenario make_scenario(const ExperimentConfig& config, const SweepPoint& point, std::uint64_t seed) {
    const Rect home = config.home_rect();
    TaskSpec spec{point.tasks, config.total_demand, config.demands};
    const auto demands = spec.resolve_demands(config.agents);
    RngStream placement = RngStream::keyed(seed, {0, static_cast<std::uint64_t>(Stream::placement)});
    const auto sites = place_tasks(placement, demands, config.dims, home);

    const LevyParams levy{config.levy_mu, config.levy_max > 0.0
                                              ? config.levy_max
                                              : static_cast<double>(config.dims.width + config.dims.height)};
    Scenario s;
    if (point.algorithm == Algorithm::HHTA) {
        const HhtaParams params{point.commit, point.explore, point.message_rate, config.hhta_radius, levy};
        s.world = build_world(config.dims, home, sites, make_hhta_swarm(config.agents));
        s.policy = std::make_unique<HhtaPolicy>(params, config.dims);
        for (int i = 0; i < config.agents; ++i) s.message_class.push_back(static_cast<AgentId>(i));
    } else {
        const PropParams params{point.max_radius, point.rate, config.propagator_radius, config.follower_radius, levy};
        s.world = build_world(config.dims, home, sites, make_followers(config.agents));
        if (point.algorithm == Algorithm::PROP) s.message_class = deploy_propagators(s.world);
        s.policy = std::make_unique<PropPolicy>(params);
    }
    return s;
}

SimulatedTrial simulate_trial(const ExperimentConfig& config, const SweepPoint& point, int trial_id) {
    config.validate();
    const std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(trial_id);
    Scenario scenario = make_scenario(config, point, seed);
    SimulatedTrial out;
    out.final_world = std::move(scenario.world);
    out.message_class = std::move(scenario.message_class);
    auto& policy = scenario.policy;

    Engine engine(*policy, seed);
    out.trace = run_trial(out.final_world, engine, config.max_rounds);
    out.trace.fingerprint = fingerprint(config, point);

    TrialResult& r = out.result;
    r.point = point;
    r.trial_id = trial_id;
    r.seed = seed;
    r.width = config.dims.width;
    r.height = config.dims.height;
    r.agents = config.agents;
    r.total_demand = config.total_demand;
    r.timeout = out.trace.timeout;
    r.completion_rounds = out.trace.completion_round;
    if (r.completion_rounds && point.algorithm == Algorithm::PROP && config.deployment_offset)
        *r.completion_rounds += deployment_offset(config.dims);
    if (point.algorithm != Algorithm::RW) {
        std::uint64_t total = 0;
        for (const AgentId id : out.message_class) total += out.trace.messages_sent[id];
        r.total_messages = total;
        r.msgs_per_agent_per_round = messages_per_agent_per_round(out.trace, out.message_class).value;
        r.msgs_per_agent = static_cast<double>(total) / static_cast<double>(out.message_class.size());
    }
    return out;
}

TrialResult run_point_trial(const ExperimentConfig& config, const SweepPoint& point, int trial_id) {
    return simulate_trial(config, point, trial_id).result;
}

std::vector<TrialResult> run_sweep(const ExperimentConfig& config) {
    config.validate();
    const auto points = sweep_points(config);
    const std::size_t total = points.size() * static_cast<std::size_t>(config.trials);
    std::vector<TrialResult> results(total);

    unsigned workers = config.threads > 0 ? static_cast<unsigned>(config.threads) : std::thread::hardware_concurrency();
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(total)));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < total; i = next++) {
            try {
                const auto& point = points[i / static_cast<std::size_t>(config.trials)];
                results[i] = run_point_trial(config, point, static_cast<int>(i % static_cast<std::size_t>(config.trials)));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = total;
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);
    return results;
}

double timeout_fraction(const std::vector<TrialResult>& results) noexcept {
    if (results.empty()) return 0.0;
    const auto n = std::count_if(results.begin(), results.end(), [](const TrialResult& r) { return r.timeout; });
    return static_cast<double>(n) / static_cast<double>(results.size());
}

}  // namespace swarmta
