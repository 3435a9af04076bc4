#include "swarmta/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace swarmta {

std::optional<std::int64_t> completion_time(const TrialTrace& trace) {
    for (std::size_t i = 0; i < trace.residual_demand.size(); ++i)
        if (trace.residual_demand[i] == 0) return static_cast<std::int64_t>(i);
    return std::nullopt;
}

MessageRate messages_per_agent_per_round(std::uint64_t total_messages, std::size_t population,
                                         std::int64_t elapsed_rounds) {
    if (population == 0 || elapsed_rounds <= 0) return {0.0, true};
    return {static_cast<double>(total_messages) / (static_cast<double>(population) * static_cast<double>(elapsed_rounds)),
            false};
}

MessageRate messages_per_agent_per_round(const TrialTrace& trace, std::span<const AgentId> agent_class) {
    std::uint64_t total = 0;
    for (const AgentId id : agent_class)
        if (id < trace.messages_sent.size()) total += trace.messages_sent[id];
    const std::int64_t elapsed = trace.completion_round.value_or(trace.rounds());
    return messages_per_agent_per_round(total, agent_class.size(), elapsed);
}

SummaryStats summarize(std::span<const double> sample) {
    if (sample.empty()) throw std::invalid_argument("summary of an empty sample");
    SummaryStats s;
    s.n = sample.size();
    s.mean = std::accumulate(sample.begin(), sample.end(), 0.0) / static_cast<double>(s.n);
    if (s.n > 1) {
        double ss = 0.0;
        for (double v : sample) ss += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(ss / static_cast<double>(s.n - 1));
    }
    s.std_error = s.stddev / std::sqrt(static_cast<double>(s.n));
    return s;
}

namespace {

// Continued fraction for I_x(a, b), evaluated with the modified Lentz method.
double beta_continued_fraction(double a, double b, double x) {
    constexpr int max_iterations = 10000;
    constexpr double eps = 1e-16;
    constexpr double tiny = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps) break;
    }
    return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("incomplete beta needs a, b > 0");
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("incomplete beta needs x in [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double log_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double df) {
    if (!(df > 0.0)) throw std::invalid_argument("student t needs positive degrees of freedom");
    if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
    const double x = df / (df + t * t);
    const double tail = 0.5 * regularized_incomplete_beta(df / 2.0, 0.5, x);
    return t > 0 ? 1.0 - tail : tail;
}

WelchResult welch_t_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2) throw std::invalid_argument("welch test needs two observations per sample");
    const auto sa = summarize(a);
    const auto sb = summarize(b);
    const double va = sa.stddev * sa.stddev / static_cast<double>(sa.n);
    const double vb = sb.stddev * sb.stddev / static_cast<double>(sb.n);
    if (va == 0.0 && vb == 0.0) throw std::invalid_argument("welch test with zero variance in both samples");
    WelchResult r;
    r.t = (sa.mean - sb.mean) / std::sqrt(va + vb);
    r.df = (va + vb) * (va + vb) /
           (va * va / static_cast<double>(sa.n - 1) + vb * vb / static_cast<double>(sb.n - 1));
    // Two-sided tail: I_{df/(df+t^2)}(df/2, 1/2).
    r.p = regularized_incomplete_beta(r.df / 2.0, 0.5, r.df / (r.df + r.t * r.t));
    return r;
}

namespace {

std::vector<double> average_ranks(std::span<const double> v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return v[i] < v[j]; });
    std::vector<double> ranks(v.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
        const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

double spearman_rho(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("spearman needs equal-length samples");
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    const double n = static_cast<double>(rx.size());
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace swarmta
