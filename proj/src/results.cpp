#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "swarmta/experiment.hpp"

namespace swarmta {

namespace {

constexpr std::string_view kHeader =
    "trial_id,seed,algorithm,M,N,agents,T,total_demand,P_c,P_e,r_m,d_p,r_p,completion_rounds,timeout,"
    "total_messages,msgs_per_agent_per_round,msgs_per_agent";
constexpr std::size_t kColumns = 18;

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

template <class T>
T field_number(const std::string& text, std::size_t row, const char* column) {
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw SchemaError("row " + std::to_string(row) + ": bad " + column + " '" + text + "'");
    return value;
}

}  // namespace

std::string_view csv_header() noexcept { return kHeader; }

void write_csv(std::ostream& out, const std::vector<TrialResult>& results) {
    out << kHeader << '\n';
    for (const auto& r : results) {
        const auto& p = r.point;
        out << r.trial_id << ',' << r.seed << ',' << to_string(p.algorithm) << ',' << r.width << ',' << r.height << ','
            << r.agents << ',' << p.tasks << ',' << r.total_demand << ',' << format_double(p.commit) << ','
            << format_double(p.explore) << ',' << format_double(p.message_rate) << ','
            << format_double(p.max_radius) << ',' << p.rate << ',';
        if (r.completion_rounds) out << *r.completion_rounds;
        out << ',' << (r.timeout ? 1 : 0) << ',';
        if (r.total_messages) out << *r.total_messages;
        out << ',';
        if (r.msgs_per_agent_per_round) out << format_double(*r.msgs_per_agent_per_round);
        out << ',';
        if (r.msgs_per_agent) out << format_double(*r.msgs_per_agent);
        out << '\n';
    }
}

std::vector<TrialResult> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw SchemaError("empty results file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kHeader) throw SchemaError("unexpected header: " + line);

    std::vector<TrialResult> out;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(cell);
        if (!line.empty() && line.back() == ',') f.emplace_back();
        if (f.size() != kColumns)
            throw SchemaError("row " + std::to_string(row) + ": expected " + std::to_string(kColumns) + " fields");
        TrialResult r;
        r.trial_id = field_number<int>(f[0], row, "trial_id");
        r.seed = field_number<std::uint64_t>(f[1], row, "seed");
        try {
            r.point.algorithm = parse_algorithm(f[2]);
        } catch (const ConfigError& e) {
            throw SchemaError("row " + std::to_string(row) + ": " + e.what());
        }
        r.width = field_number<int>(f[3], row, "M");
        r.height = field_number<int>(f[4], row, "N");
        r.agents = field_number<int>(f[5], row, "agents");
        r.point.tasks = field_number<int>(f[6], row, "T");
        r.total_demand = field_number<int>(f[7], row, "total_demand");
        r.point.commit = field_number<double>(f[8], row, "P_c");
        r.point.explore = field_number<double>(f[9], row, "P_e");
        r.point.message_rate = field_number<double>(f[10], row, "r_m");
        r.point.max_radius = field_number<double>(f[11], row, "d_p");
        r.point.rate = field_number<int>(f[12], row, "r_p");
        if (!f[13].empty()) r.completion_rounds = field_number<std::int64_t>(f[13], row, "completion_rounds");
        r.timeout = field_number<int>(f[14], row, "timeout") != 0;
        if (!f[15].empty()) r.total_messages = field_number<std::uint64_t>(f[15], row, "total_messages");
        if (!f[16].empty()) r.msgs_per_agent_per_round = field_number<double>(f[16], row, "msgs_per_agent_per_round");
        if (!f[17].empty()) r.msgs_per_agent = field_number<double>(f[17], row, "msgs_per_agent");
        out.push_back(r);
    }
    return out;
}

std::string column_value(const TrialResult& r, std::string_view column) {
    if (column == "algorithm") return std::string(to_string(r.point.algorithm));
    if (column == "T") return std::to_string(r.point.tasks);
    if (column == "P_c") return format_double(r.point.commit);
    if (column == "P_e") return format_double(r.point.explore);
    if (column == "r_m") return format_double(r.point.message_rate);
    if (column == "d_p") return format_double(r.point.max_radius);
    if (column == "r_p") return std::to_string(r.point.rate);
    if (column == "M") return std::to_string(r.width);
    if (column == "N") return std::to_string(r.height);
    if (column == "agents") return std::to_string(r.agents);
    if (column == "total_demand") return std::to_string(r.total_demand);
    throw SchemaError("unknown column '" + std::string(column) + "'");
}

std::vector<ComparisonRow> compare(const std::vector<TrialResult>& a, const std::vector<TrialResult>& b) {
    auto by_tasks = [](const std::vector<TrialResult>& rs) {
        std::map<int, std::vector<double>> m;
        for (const auto& r : rs) {
            auto& v = m[r.point.tasks];
            if (r.completion_rounds && !r.timeout) v.push_back(static_cast<double>(*r.completion_rounds));
        }
        return m;
    };
    const auto ma = by_tasks(a);
    const auto mb = by_tasks(b);
    std::vector<ComparisonRow> rows;
    for (const auto& [tasks, va] : ma) {
        const auto it = mb.find(tasks);
        if (it == mb.end()) continue;
        const auto& vb = it->second;
        ComparisonRow row;
        row.tasks = tasks;
        row.n_a = va.size();
        row.n_b = vb.size();
        if (!va.empty()) row.mean_a = summarize(va).mean;
        if (!vb.empty()) row.mean_b = summarize(vb).mean;
        row.mean_difference = row.mean_a - row.mean_b;
        if (va.size() >= 2 && vb.size() >= 2) {
            const auto sa = summarize(va);
            const auto sb = summarize(vb);
            if (sa.stddev == 0.0 && sb.stddev == 0.0)
                row.p = sa.mean == sb.mean ? 1.0 : 0.0;
            else
                row.p = welch_t_test(va, vb).p;
        } else {
            row.p = std::nan("");
        }
        row.significant = row.p < 0.05;
        rows.push_back(row);
    }
    if (rows.empty()) throw ConfigError("the two result sets share no T values");
    return rows;
}

void print_comparison(std::ostream& out, const std::vector<ComparisonRow>& rows) {
    out << std::left << std::setw(6) << "T" << std::setw(6) << "n_a" << std::setw(6) << "n_b" << std::setw(12)
        << "mean_a" << std::setw(12) << "mean_b" << std::setw(12) << "a-b" << std::setw(14) << "p"
        << "significant\n";
    for (const auto& r : rows) {
        out << std::left << std::setw(6) << r.tasks << std::setw(6) << r.n_a << std::setw(6) << r.n_b
            << std::setw(12) << std::fixed << std::setprecision(2) << r.mean_a << std::setw(12) << r.mean_b
            << std::setw(12) << r.mean_difference << std::setw(14) << std::scientific << std::setprecision(4) << r.p
            << (r.significant ? "yes" : "no") << '\n';
        out << std::defaultfloat;
    }
}

}  // namespace swarmta
