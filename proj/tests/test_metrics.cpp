#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "swarmta/metrics.hpp"

using namespace swarmta;

TEST_CASE("completion_time finds the first zero") {
    TrialTrace t;
    t.residual_demand = {5, 3, 0};
    CHECK(completion_time(t) == 2);
    t.residual_demand = {5, 3, 1};
    CHECK_FALSE(completion_time(t));
    t.residual_demand = {0};
    CHECK(completion_time(t) == 0);
}

TEST_CASE("message rates") {
    CHECK(messages_per_agent_per_round(0, 100, 6).value == 0.0);
    CHECK(messages_per_agent_per_round(600, 100, 6).value == 1.0);
    const auto none = messages_per_agent_per_round(10, 0, 6);
    CHECK(none.undefined);
    CHECK(none.value == 0.0);
    CHECK(messages_per_agent_per_round(10, 5, 0).undefined);

    TrialTrace t;
    t.residual_demand = {4, 3, 2, 1, 0};
    t.completion_round = 4;
    t.messages_sent = {8, 0, 4, 100};
    const std::vector<AgentId> cls{0, 1, 2};
    CHECK(messages_per_agent_per_round(t, cls).value == doctest::Approx(12.0 / (3 * 4)));
    t.residual_demand = {4, 3, 2, 1, 1, 1, 1, 1};
    t.completion_round.reset();
    t.timeout = true;
    CHECK(messages_per_agent_per_round(t, cls).value == doctest::Approx(12.0 / (3 * 7)));
}

TEST_CASE("summary statistics") {
    const std::vector<double> xs{2, 4, 4, 4, 5, 5, 7, 9};
    const auto s = summarize(xs);
    CHECK(s.n == 8);
    CHECK(s.mean == 5.0);
    CHECK(s.stddev == doctest::Approx(std::sqrt(32.0 / 7.0)));
    CHECK(s.std_error == doctest::Approx(std::sqrt(32.0 / 7.0) / std::sqrt(8.0)));
    const std::vector<double> one{3.5};
    CHECK(summarize(one).stddev == 0.0);
    CHECK_THROWS_AS(summarize(std::vector<double>{}), std::invalid_argument);
}

namespace {

struct WelchFixture {
    std::vector<double> a, b;
    double t, df, p;
};

// Frozen values from scipy.stats.ttest_ind(a, b, equal_var=False).
const WelchFixture fixtures[] = {
    {{1, 2, 3, 4, 5}, {2, 3, 4, 5, 6}, -1.0, 8.0, 0.34659350708733416},
    {{12.1, 14.3, 9.8, 11.0, 13.7, 10.2},
     {15.2, 16.8, 14.1, 17.9, 15.5, 16.0, 18.2, 14.9},
     -4.624606914111478,
     9.268270670746613,
     0.001153254467064431},
    {{203, 187, 256, 231, 198, 244, 219, 262, 190, 228},
     {301, 276, 255, 318, 289, 342, 270, 295},
     -5.500790812250948,
     14.956549254057649,
     6.1601407986116e-05},
};

}  // namespace

TEST_CASE("welch_t_test matches reference values") {
    for (const auto& f : fixtures) {
        const auto r = welch_t_test(f.a, f.b);
        CHECK(r.t == doctest::Approx(f.t).epsilon(1e-10));
        CHECK(r.df == doctest::Approx(f.df).epsilon(1e-10));
        CHECK(std::abs(r.p - f.p) <= 1e-6);
        CHECK(r.p == doctest::Approx(f.p).epsilon(1e-8));
    }
}

TEST_CASE("welch_t_test edge cases") {
    const std::vector<double> a{3, 1, 4, 1, 5};
    const auto same = welch_t_test(a, a);
    CHECK(same.t == 0.0);
    CHECK(same.p == doctest::Approx(1.0));

    std::mt19937_64 gen(1);
    std::normal_distribution<double> z(0.0, 1.0);
    std::vector<double> lo(20), hi(20);
    for (auto& x : lo) x = z(gen);
    for (auto& x : hi) x = 100.0 + z(gen);
    CHECK(welch_t_test(lo, hi).p < 1e-10);

    const std::vector<double> flat{2, 2, 2};
    CHECK_THROWS_AS(welch_t_test(flat, flat), std::invalid_argument);
    const std::vector<double> single{1};
    CHECK_THROWS_AS(welch_t_test(single, a), std::invalid_argument);
}

TEST_CASE("welch_t_test symmetry and ranges") {
    std::mt19937_64 gen(5);
    std::normal_distribution<double> z(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t na = 2 + gen() % 30, nb = 2 + gen() % 30;
        const double shift = z(gen), scale = 0.1 + std::abs(z(gen));
        std::vector<double> a(na), b(nb);
        for (auto& x : a) x = z(gen);
        for (auto& x : b) x = shift + scale * z(gen);
        const auto ab = welch_t_test(a, b);
        const auto ba = welch_t_test(b, a);
        CHECK(ab.t == doctest::Approx(-ba.t).epsilon(1e-12));
        CHECK(ab.p == doctest::Approx(ba.p).epsilon(1e-12));
        CHECK(ab.p > 0.0);
        CHECK(ab.p <= 1.0);
        CHECK(ab.df >= static_cast<double>(std::min(na, nb)) - 1.0 - 1e-9);
        CHECK(ab.df <= static_cast<double>(na + nb) - 2.0 + 1e-9);
    }
}

TEST_CASE("student t distribution") {
    CHECK(student_t_cdf(0.0, 4.0) == doctest::Approx(0.5));
    for (double t : {-3.0, -0.4, 0.7, 12.0})
        CHECK(student_t_cdf(t, 1.0) == doctest::Approx(0.5 + std::atan(t) / std::numbers::pi).epsilon(1e-12));
    // scipy.special.stdtr
    CHECK(student_t_cdf(1.2, 3.5) == doctest::Approx(0.8474927573110678).epsilon(1e-10));
    CHECK(student_t_cdf(-2.1, 7.25) == doctest::Approx(0.0362539878609106).epsilon(1e-10));
}

TEST_CASE("incomplete beta reference values") {
    CHECK(std::abs(regularized_incomplete_beta(2.5, 0.5, 0.3) - 0.018927124071945658) < 1e-12);
    CHECK(std::abs(regularized_incomplete_beta(4.0, 2.0, 5.0 / 6.0) - 0.8037551440329218) < 1e-12);
    CHECK(regularized_incomplete_beta(3.0, 2.0, 0.0) == 0.0);
    CHECK(regularized_incomplete_beta(3.0, 2.0, 1.0) == 1.0);
}

TEST_CASE("incomplete beta agrees with numerical integration") {
    boost::math::quadrature::tanh_sinh<double> integrator;
    const double shapes[] = {0.5, 1.0, 2.5, 5.0, 10.0, 30.0};
    const double xs[] = {0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99};
    for (double a : shapes)
        for (double b : shapes) {
            // tc is the signed distance to the nearest endpoint; near the
            // upper end it gives 1 - t without cancellation.
            auto density_to = [a, b](double upper) {
                return [a, b, upper](double t, double tc) {
                    const double rest = tc > 0 ? (1.0 - upper) + tc : 1.0 - t;
                    return std::pow(t, a - 1.0) * std::pow(rest, b - 1.0);
                };
            };
            const double whole = integrator.integrate(density_to(1.0), 0.0, 1.0, 1e-14);
            for (double x : xs) {
                CAPTURE(a);
                CAPTURE(b);
                CAPTURE(x);
                const double oracle = integrator.integrate(density_to(x), 0.0, x, 1e-14) / whole;
                CHECK(std::abs(regularized_incomplete_beta(a, b, x) - oracle) < 1e-8);
            }
        }
}

TEST_CASE("spearman rank correlation") {
    const std::vector<double> x{1, 2, 3, 4, 5};
    const std::vector<double> up{2, 4, 8, 16, 32}, down{9, 7, 5, 3, 1};
    CHECK(spearman_rho(x, up) == doctest::Approx(1.0));
    CHECK(spearman_rho(x, down) == doctest::Approx(-1.0));
    const std::vector<double> a{1, 2, 3, 4}, b{1, 1, 2, 2};
    CHECK(spearman_rho(a, b) == doctest::Approx(0.8944271909999159).epsilon(1e-12));
    const std::vector<double> c{3, 1, 4, 1, 5, 9, 2, 6}, d{2, 7, 1, 8, 2, 8, 1, 8};
    CHECK(spearman_rho(c, d) == doctest::Approx(0.19885368120992467).epsilon(1e-12));
}
