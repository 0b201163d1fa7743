#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "codedconv/planner.hpp"

using namespace codedconv;

TEST_CASE("problem spec validation") {
    CHECK_NOTHROW(validate({4096, 2048, 8}));
    CHECK_NOTHROW(validate({64, 32, 8}));
    CHECK_THROWS_AS(validate({1 << 20, 4, 2}), std::invalid_argument);
    CHECK_THROWS_AS(validate({0, 4, 2}), std::invalid_argument);
    // Degenerate single-processor full convolution is allowed.
    CHECK_NOTHROW(validate({128, 128, 1}));
    CHECK_THROWS_AS(validate({128, 64, 1}), std::invalid_argument);
}

TEST_CASE("plan_uncoded") {
    SUBCASE("(4096, 2048, 8): s=1024, 4x2 grid") {
        const auto plan = plan_uncoded({4096, 2048, 8});
        CHECK(plan.piece_len == 1024);
        CHECK(plan.worst_k == 8);
        CHECK(plan.tasks.size() == 8);
        CHECK(plan.groups.size() == 8);
        for (const auto& g : plan.groups) {
            CHECK(g.members.size() == 1);
            CHECK(g.quorum == 1);
        }
        // 4x2 grid of (a piece, x piece) assignments
        CHECK(plan.tasks.back().a_index == 3);
        CHECK(plan.tasks.back().x_index == 1);
    }
    SUBCASE("(4, 4, 4): s=2") {
        const auto plan = plan_uncoded({4, 4, 4});
        CHECK(plan.piece_len == 2);
        CHECK(plan.worst_k == 4);
    }
    SUBCASE("p=1 degenerate single task") {
        const auto plan = plan_uncoded({16, 16, 1});
        CHECK(plan.piece_len == 16);
        CHECK(plan.tasks.size() == 1);
        CHECK(plan.worst_k == 1);
    }
    SUBCASE("divisibility violation names a nearby valid p") {
        try {
            plan_uncoded({4096, 2048, 9});
            FAIL("expected invalid_argument");
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).find("nearest valid p = 8") != std::string::npos);
        }
    }
}

TEST_CASE("plan_replication") {
    SUBCASE("(4096, 2048, 8), r=4: K=5") {
        const auto plan = plan_replication({4096, 2048, 8}, 4);
        CHECK(plan.piece_len == 2048);
        CHECK(plan.worst_k == 5);
        CHECK(plan.groups.size() == 2);
        for (const auto& g : plan.groups) {
            CHECK(g.members.size() == 4);
            CHECK(g.quorum == 1);
        }
    }
    SUBCASE("r=1 normalizes to uncoded") {
        const auto plan = plan_replication({4096, 2048, 8}, 1);
        CHECK(plan.strategy.kind == StrategyKind::uncoded);
        CHECK(plan.piece_len == 1024);
        CHECK(plan.worst_k == 8);
    }
    SUBCASE("non-integral s rejected") {
        CHECK_THROWS_AS(plan_replication({16, 16, 4}, 2), std::invalid_argument);
    }
    SUBCASE("r must divide p") {
        CHECK_THROWS_AS(plan_replication({4096, 2048, 8}, 3), std::invalid_argument);
    }
}

TEST_CASE("plan_coded") {
    SUBCASE("(4096, 2048, 8), s=2048: one group of 8, quorum 2, K=2") {
        const auto plan = plan_coded({4096, 2048, 8}, 2048);
        CHECK(plan.piece_len == 2048);
        CHECK(plan.worst_k == 2);
        CHECK(plan.groups.size() == 1);
        CHECK(plan.groups[0].members.size() == 8);
        CHECK(plan.groups[0].quorum == 2);
    }
    SUBCASE("(4, 2, 4), s=2: one group of 4, quorum 2, K=2") {
        const auto plan = plan_coded({4, 2, 4}, 2);
        CHECK(plan.worst_k == 2);
        CHECK(plan.groups.size() == 1);
        CHECK(plan.groups[0].quorum == 2);
    }
    SUBCASE("(64, 32, 8), s=16: two groups of 4, quorum 4, K=8") {
        const auto plan = plan_coded({64, 32, 8}, 16);
        CHECK(plan.worst_k == 8);
        CHECK(plan.groups.size() == 2);
        CHECK(plan.groups[0].members.size() == 4);
        CHECK(plan.groups[0].quorum == 4);
    }
    SUBCASE("s at the uncoded optimum is the degenerate boundary, K=p") {
        const auto plan = plan_coded({4096, 2048, 8}, 1024);
        CHECK(plan.worst_k == 8);
        CHECK(plan.groups.size() == 2);
        CHECK(plan.groups[0].quorum == 4);
    }
    SUBCASE("s below the uncoded optimum is rejected") {
        CHECK_THROWS_WITH_AS(plan_coded({4096, 2048, 8}, 512),
                             doctest::Contains("not in the coded regime"),
                             std::invalid_argument);
    }
    SUBCASE("divisibility violations rejected") {
        CHECK_THROWS_AS(plan_coded({4096, 2048, 8}, 1536), std::invalid_argument);
    }
}

TEST_CASE("brute-force worst-case K equals the closed forms") {
    SUBCASE("coded (4,2,4,s=2) by full enumeration") {
        const auto plan = plan_coded({4, 2, 4}, 2);
        CHECK(brute_force_worst_case_k(plan) == 2);
        CHECK(brute_force_worst_case_k(plan) == plan.worst_k);
    }
    SUBCASE("replication p=8, r=2 by full enumeration") {
        const auto plan = plan_replication({8, 8, 8}, 2);
        CHECK(brute_force_worst_case_k(plan) == 7);
        CHECK(brute_force_worst_case_k(plan) == plan.worst_k);
    }
    SUBCASE("replication p=8, r=4 by full enumeration") {
        const auto plan = plan_replication({4096, 2048, 8}, 4);
        CHECK(brute_force_worst_case_k(plan) == 5);
    }
    SUBCASE("uncoded p=4 needs all tasks") {
        const auto plan = plan_uncoded({8, 8, 4});
        CHECK(brute_force_worst_case_k(plan) == 4);
    }
    SUBCASE("adversarial construction for 8 < p <= 16") {
        const auto plan = plan_coded({4096, 1024, 16}, 1024);
        CHECK(brute_force_worst_case_k(plan) == plan.worst_k);
        const auto rep = plan_replication({8192, 8192, 16}, 4);
        CHECK(brute_force_worst_case_k(rep) == rep.worst_k);
    }
    SUBCASE("p above the cap is refused") {
        const auto plan = plan_replication({16384, 16384, 32}, 8);
        CHECK_THROWS_AS(brute_force_worst_case_k(plan), std::invalid_argument);
    }
}

TEST_CASE("appendix_a_costs comparisons") {
    const ProblemSpec spec{4096, 2048, 8};
    const auto report = appendix_a_costs(spec);

    SUBCASE("one serial use is the single-shot cost") {
        CHECK(report.serial_cost(1) == doctest::Approx(report.scenario1_opt()));
    }
    SUBCASE("overlap methods never beat the balanced split") {
        const double s0 = std::sqrt(4096.0 * 2048.0 / 8.0);
        for (double f : {1.0, 1.5, 2.0, 3.0, 4.0}) {
            CHECK(report.scenario2_at(f * s0) >= report.scenario1_opt() * (1 - 1e-12));
        }
    }
    SUBCASE("serial use worsens the cost, roughly by sqrt(r)") {
        CHECK(report.serial_cost(4) > report.serial_cost(1));
        const double growth = report.serial_cost(4) / report.serial_cost(1);
        CHECK(growth > 1.5);
        CHECK(growth < 2.0);  // sqrt(4) = 2 is the asymptotic factor
    }
    SUBCASE("scenario-2 derivative positive over the whole range") {
        const double s0 = std::sqrt(4096.0 * 2048.0 / 8.0);
        const double hi = std::min(4096.0, 4096.0 * 2048.0 / 8.0);
        for (int i = 0; i < 100; ++i) {
            const double s1 = s0 + (hi - s0) * (i + 0.5) / 100.0;
            const double h = s1 * 1e-6;
            CHECK(report.scenario2_at(s1 + h) - report.scenario2_at(s1 - h) > 0.0);
        }
    }
}

TEST_CASE("plan task counts always total p") {
    for (const auto& plan :
         {plan_uncoded({64, 32, 8}), plan_replication({64, 32, 8}, 4),
          plan_coded({64, 32, 8}, 32), plan_coded({256, 128, 8}, 128)}) {
        CHECK(static_cast<long>(plan.tasks.size()) == plan.spec.p);
    }
}
