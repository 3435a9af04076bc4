#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "swarmta/experiment.hpp"

namespace swarmta {

PlotSpec plot_preset(std::string_view name) {
    if (name == "density") return {"T", "completion_rounds", {"algorithm"}, "Completion time vs number of tasks"};
    if (name == "messages")
        return {"T", "msgs_per_agent_per_round", {"algorithm"}, "Messages per agent per round vs number of tasks"};
    if (name == "p_commit") return {"P_c", "completion_rounds", {"T"}, "HHTA completion time vs P_c"};
    if (name == "p_explore") return {"P_e", "completion_rounds", {"T"}, "HHTA completion time vs P_e"};
    if (name == "prop_radius") return {"d_p", "completion_rounds", {"T"}, "PROP completion time vs d_p"};
    if (name == "prop_rate") return {"r_p", "completion_rounds", {"T"}, "PROP completion time vs r_p"};
    throw ConfigError("unknown plot preset '" + std::string(name) + "'");
}

namespace {

std::optional<double> metric(const TrialResult& r, std::string_view y) {
    if (y == "completion_rounds") {
        if (r.timeout || !r.completion_rounds) return std::nullopt;
        return static_cast<double>(*r.completion_rounds);
    }
    if (y == "total_messages") {
        if (!r.total_messages) return std::nullopt;
        return static_cast<double>(*r.total_messages);
    }
    if (y == "msgs_per_agent_per_round") return r.msgs_per_agent_per_round;
    if (y == "msgs_per_agent") return r.msgs_per_agent;
    throw SchemaError("unknown metric '" + std::string(y) + "'");
}

struct Axis {
    double lo = 0.0;
    double hi = 1.0;
    double step = 0.2;
};

Axis nice_axis(double lo, double hi) {
    if (!(hi > lo)) {
        const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.5;
        lo -= pad;
        hi += pad;
    }
    const double raw = (hi - lo) / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (raw <= m * mag) {
            step = m * mag;
            break;
        }
    return {std::floor(lo / step) * step, std::ceil(hi / step) * step, step};
}

std::string escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

std::string label(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

std::string emit_plot(const std::vector<TrialResult>& results, const PlotSpec& spec) {
    // series -> x -> samples
    std::map<std::string, std::map<double, std::vector<double>>> data;
    for (const auto& r : results) {
        const double x = std::stod(column_value(r, spec.x_column));
        std::string key;
        for (const auto& c : spec.series_columns) {
            if (!key.empty()) key += ", ";
            key += c + "=" + column_value(r, c);
        }
        const auto y = metric(r, spec.y_metric);
        if (y) data[key][x].push_back(*y);
    }

    struct PointStat {
        double x, mean, sd;
    };
    std::map<std::string, std::vector<PointStat>> series;
    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (const auto& [key, by_x] : data)
        for (const auto& [x, ys] : by_x) {
            const auto s = summarize(ys);
            series[key].push_back({x, s.mean, s.stddev});
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, s.mean - s.stddev);
            ymax = std::max(ymax, s.mean + s.stddev);
        }
    if (series.empty()) {
        xmin = ymin = 0.0;
        xmax = ymax = 1.0;
    }
    const Axis ax = nice_axis(xmin, xmax);
    const Axis ay = nice_axis(std::min(ymin, 0.0), ymax);

    constexpr double W = 720, H = 460, left = 80, right = 200, top = 50, bottom = 60;
    const double pw = W - left - right, ph = H - top - bottom;
    auto sx = [&](double x) { return left + (x - ax.lo) / (ax.hi - ax.lo) * pw; };
    auto sy = [&](double y) { return top + ph - (y - ay.lo) / (ay.hi - ay.lo) * ph; };
    static constexpr const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                              "#9467bd", "#8c564b", "#e377c2", "#17becf"};

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
       << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << left + pw / 2 << "\" y=\"25\" text-anchor=\"middle\" font-size=\"15\">"
       << escape(spec.title.empty() ? spec.y_metric + " vs " + spec.x_column : spec.title) << "</text>\n";
    os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double t = ax.lo; t <= ax.hi + ax.step * 1e-9; t += ax.step) {
        os << "<line x1=\"" << sx(t) << "\" y1=\"" << top + ph << "\" x2=\"" << sx(t) << "\" y2=\"" << top + ph + 5
           << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << sx(t) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">" << label(t)
           << "</text>\n";
    }
    for (double t = ay.lo; t <= ay.hi + ay.step * 1e-9; t += ay.step) {
        os << "<line x1=\"" << left - 5 << "\" y1=\"" << sy(t) << "\" x2=\"" << left << "\" y2=\"" << sy(t)
           << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << left - 8 << "\" y=\"" << sy(t) + 4 << "\" text-anchor=\"end\">" << label(t)
           << "</text>\n";
    }
    os << "<text x=\"" << left + pw / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">"
       << escape(spec.x_column) << "</text>\n";
    os << "<text transform=\"translate(20 " << top + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
       << escape(spec.y_metric) << "</text>\n";

    std::size_t i = 0;
    for (const auto& [key, pts] : series) {
        const char* colour = palette[i % std::size(palette)];
        os << "<g stroke=\"" << colour << "\" fill=\"" << colour << "\">\n";
        if (pts.size() > 1) {
            os << "<polyline fill=\"none\" stroke-width=\"1.5\" points=\"";
            for (const auto& p : pts) os << sx(p.x) << ',' << sy(p.mean) << ' ';
            os << "\"/>\n";
        }
        for (const auto& p : pts) {
            os << "<line x1=\"" << sx(p.x) << "\" y1=\"" << sy(p.mean - p.sd) << "\" x2=\"" << sx(p.x) << "\" y2=\""
               << sy(p.mean + p.sd) << "\"/>\n";
            os << "<circle cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.mean) << "\" r=\"3\"/>\n";
        }
        const double ly = top + 10 + 18.0 * static_cast<double>(i);
        os << "<line x1=\"" << left + pw + 15 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 35 << "\" y2=\"" << ly
           << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << left + pw + 40 << "\" y=\"" << ly + 4 << "\" stroke=\"none\" fill=\"black\">"
           << escape(key) << "</text>\n";
        os << "</g>\n";
        ++i;
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace swarmta
