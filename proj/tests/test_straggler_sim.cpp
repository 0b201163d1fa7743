#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "codedconv/straggler_sim.hpp"

using namespace codedconv;

TEST_CASE("task_shift") {
    const TimeModel model;  // mu=1, alpha=1, C=1, log2
    CHECK(task_shift(1024, model) == doctest::Approx(22528.0));
    CHECK(task_shift(2048, model) == doctest::Approx(49152.0));
    CHECK(task_shift(1, model) == doctest::Approx(2.0));
}

TEST_CASE("cdf") {
    const TimeModel model;
    const double tau = task_shift(1024, model);
    CHECK(cdf(1024, tau, model) == 0.0);
    CHECK(cdf(1024, 0.5 * tau, model) == 0.0);
    CHECK(cdf(1024, 2.0 * tau, model) == doctest::Approx(1.0 - std::exp(-1.0)));
    CHECK(cdf(1024, 100.0 * tau, model) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sample_time inverts the cdf") {
    const TimeModel exp_model;
    CHECK(sample_time(64, exp_model, 0.0) == doctest::Approx(task_shift(64, exp_model)));
    CHECK(sample_time(64, exp_model, 1.0 - std::exp(-1.0)) ==
          doctest::Approx(2.0 * task_shift(64, exp_model)));
    CHECK_THROWS_AS(sample_time(64, exp_model, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(sample_time(64, exp_model, -0.1), std::invalid_argument);

    std::mt19937_64 rng(79);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (const auto& [alpha, mu] : std::vector<std::pair<double, double>>{
             {1.0, 1.0}, {2.0, 0.5}, {0.5, 2.0}}) {
        TimeModel model;
        model.alpha = alpha;
        model.mu = mu;
        for (int i = 0; i < 1000; ++i) {
            const double u = unif(rng);
            CHECK(cdf(64, sample_time(64, model, u), model) ==
                  doctest::Approx(u).epsilon(1e-12));
        }
    }
}

TEST_CASE("simulate_trace") {
    const auto plan = plan_coded({4096, 2048, 8}, 2048);
    const TimeModel model;
    const double tau = task_shift(plan.piece_len, model);

    SUBCASE("support and determinism") {
        const auto trace = simulate_trace(plan, model, 99);
        CHECK(trace.finish_times.size() == 8);
        for (double t : trace.finish_times) CHECK(t >= tau);
        const auto again = simulate_trace(plan, model, 99);
        CHECK(trace.finish_times == again.finish_times);
        const auto other = simulate_trace(plan, model, 100);
        CHECK(trace.finish_times != other.finish_times);
    }
    SUBCASE("empirical mean of the exponential excess") {
        double total = 0.0;
        const long draws = 100000 / 8;
        for (long i = 0; i < draws; ++i) {
            const auto trace = simulate_trace(plan, model, static_cast<std::uint64_t>(i));
            for (double t : trace.finish_times) total += t - tau;
        }
        const double mean = total / (static_cast<double>(draws) * 8.0);
        CHECK(mean == doctest::Approx(tau).epsilon(0.02));
    }
}

TEST_CASE("strategy_finish_time quorum semantics") {
    SUBCASE("uncoded: max over all tasks") {
        const auto plan = plan_uncoded({64, 32, 8});
        CompletionTrace trace{{5, 3, 9, 1, 2, 8, 7, 4}, 0};
        CHECK(strategy_finish_time(plan, trace) == 9.0);
    }
    SUBCASE("replication: max over groups of min over replicas") {
        const auto plan = plan_replication({4096, 2048, 8}, 4);
        // groups {0..3} and {4..7}
        CompletionTrace trace{{5, 3, 9, 6, 2, 8, 7, 4}, 0};
        CHECK(strategy_finish_time(plan, trace) == 3.0);
    }
    SUBCASE("coded single group: quorum-th order statistic") {
        const auto plan = plan_coded({4096, 2048, 8}, 2048);
        CompletionTrace trace{{5, 3, 9, 6, 2, 8, 7, 4}, 0};
        CHECK(strategy_finish_time(plan, trace) == 3.0);  // 2nd smallest
    }
    SUBCASE("monotone in every task time") {
        const auto plan = plan_coded({64, 32, 8}, 32);
        std::mt19937_64 rng(83);
        const TimeModel model;
        for (int trial = 0; trial < 20; ++trial) {
            auto trace = simulate_trace(plan, model, static_cast<std::uint64_t>(trial));
            const double base = strategy_finish_time(plan, trace);
            for (std::size_t i = 0; i < trace.finish_times.size(); ++i) {
                CompletionTrace bumped = trace;
                bumped.finish_times[i] *= 1.5;
                CHECK(strategy_finish_time(plan, bumped) >= base);
            }
        }
    }
}

TEST_CASE("monte_carlo_tail") {
    const TimeModel model;
    SUBCASE("deadline below the shift never finishes") {
        const auto plan = plan_uncoded({64, 32, 8});
        const double tau = task_shift(plan.piece_len, model);
        const auto tail = monte_carlo_tail(plan, model, {0.5 * tau}, 1000, 5);
        CHECK(tail[0].second == 1.0);
    }
    SUBCASE("single task matches the analytic survival within 3 sigma") {
        const auto plan = plan_uncoded({16, 16, 1});
        const double tau = task_shift(plan.piece_len, model);
        const long trials = 100000;
        for (double factor : {1.5, 2.0, 3.0}) {
            const auto tail = monte_carlo_tail(plan, model, {factor * tau}, trials, 17);
            const double want = std::exp(-(factor - 1.0));
            const double sigma = std::sqrt(want * (1.0 - want) / static_cast<double>(trials));
            CHECK(std::abs(tail[0].second - want) < 3.0 * sigma);
        }
    }
    SUBCASE("reproducible and monotone in the deadline") {
        const auto plan = plan_replication({4096, 2048, 8}, 4);
        const double tau = task_shift(plan.piece_len, model);
        const std::vector<double> deadlines{tau, 1.5 * tau, 2.0 * tau, 3.0 * tau};
        const auto tail = monte_carlo_tail(plan, model, deadlines, 2000, 21);
        const auto again = monte_carlo_tail(plan, model, deadlines, 2000, 21);
        CHECK(tail == again);
        for (std::size_t i = 1; i < tail.size(); ++i) {
            CHECK(tail[i].second <= tail[i - 1].second);
        }
    }
}

TEST_CASE("Kolmogorov-Smirnov distance of sampled times vs cdf") {
    for (const auto& [alpha, mu] : std::vector<std::pair<double, double>>{
             {1.0, 1.0}, {2.0, 0.5}, {0.5, 2.0}}) {
        TimeModel model;
        model.alpha = alpha;
        model.mu = mu;
        const long s = 64;
        const long n = 10000;
        std::mt19937_64 rng(137);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        std::vector<double> samples(static_cast<std::size_t>(n));
        for (auto& v : samples) v = sample_time(s, model, unif(rng));
        std::sort(samples.begin(), samples.end());
        double ks = 0.0;
        for (long i = 0; i < n; ++i) {
            const double f = cdf(s, samples[static_cast<std::size_t>(i)], model);
            ks = std::max(ks, std::abs(f - static_cast<double>(i + 1) / n));
            ks = std::max(ks, std::abs(f - static_cast<double>(i) / n));
        }
        CHECK(ks < 0.02);
    }
}
