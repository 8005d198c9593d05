#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "laststop/biased.hpp"
#include "laststop/oracle.hpp"
#include "laststop/timevarying.hpp"
#include "testutil.hpp"

using namespace laststop;

TEST_CASE("w_recurrence fills the 9-outcome example grid") {
    const WGrid g = w_recurrence(2, 0.3, 0.2);
    CHECK(g.w(2, 2) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(g.w(2, 1) == doctest::Approx(0.56).epsilon(1e-12));
    CHECK(g.w(1, 1) == doctest::Approx(0.62).epsilon(1e-12));

    CHECK(w_recurrence(3, 0.4, 0.1).w(2, 1) == doctest::Approx(0.603).epsilon(1e-12));

    for (const auto& [n, p, pp] : {std::tuple{7, 0.3, 0.25}, {1, 0.5, 0.4}, {13, 0.09, 0.05}})
        CHECK(w_recurrence(n, p, pp).w(n, n) == doctest::Approx(p + pp).epsilon(1e-12));

    CHECK_THROWS_AS(w_recurrence(5, 0.3, 0.0), SpecError);
    CHECK_THROWS_AS(w_recurrence(5, 0.7, 0.5), SpecError);
}

TEST_CASE("w grid entries lie in [0, 1]") {
    for (double p : {0.09, 0.3, 0.49})
        for (double pp : {0.05, 0.3}) {
            if (p + pp > 1.0 || pp > p) continue;
            const WGrid g = w_recurrence(25, p, pp);
            for (int j = 1; j <= 25; ++j)
                for (int k = 1; k <= j; ++k) {
                    CHECK(g.w(j, k) >= 0.0);
                    CHECK(g.w(j, k) <= 1.0);
                }
        }
}

TEST_CASE("w_closed_form single entries") {
    // 1.5*0.24 + (2/3)*0.39
    CHECK(w_closed_form(2, 0.3, 0.2, 1, 1) == doctest::Approx(0.62).epsilon(1e-12));
    // 1*0.1*0.81 + 0.9*(4*(0.36-0.25) + 0.25*(0.81-0.25))
    CHECK(w_closed_form(3, 0.4, 0.1, 2, 1) == doctest::Approx(0.603).epsilon(1e-12));
    for (const auto& [n, p, pp] : {std::tuple{9, 0.2, 0.15}, {4, 0.45, 0.22}})
        CHECK(w_closed_form(n, p, pp, n, n) == doctest::Approx(p + pp).epsilon(1e-12));

    CHECK_THROWS_AS(w_closed_form(5, 0.0, 0.2, 3, 2), SpecError);
    CHECK_THROWS_AS(w_closed_form(5, 0.2, 0.0, 3, 2), SpecError);
    CHECK_THROWS_AS(w_closed_form(5, 0.2, 0.1, 6, 1), SpecError);
}

TEST_CASE("closed form extends to j < k by exchanging the signs' roles") {
    // brute oracle over all 27 outcomes of the mirrored instance
    const double direct = w_closed_form(3, 0.1, 0.4, 1, 2);
    CHECK(direct == doctest::Approx(testutil::brute_threshold_value(
                        {0.1, 0.1, 0.1}, {0.4, 0.4, 0.4}, 1, 2))
                        .epsilon(1e-12));
    // and symmetry with the swapped instance
    CHECK(direct == doctest::Approx(w_closed_form(3, 0.4, 0.1, 2, 1)).epsilon(1e-12));
}

TEST_CASE("closed form equals the recurrence over a parameter grid") {
    for (int n : {1, 2, 3, 5, 9, 17, 33, 60})
        for (double p : {0.03, 0.09, 0.21, 0.45})
            for (double pp : {0.01, 0.05, 0.2, 0.45}) {
                if (pp > p || p + pp >= 1.0) continue;
                const WGrid g = w_recurrence(n, p, pp);
                for (int j = 1; j <= n; ++j)
                    for (int k = 1; k <= j; ++k)
                        CHECK(w_closed_form(n, p, pp, j, k) ==
                              doctest::Approx(g.w(j, k)).epsilon(1e-12));
            }
}

TEST_CASE("grid entries equal exhaustive policy evaluation for small n") {
    for (int n : {1, 2, 3, 4, 6, 8})
        for (const auto& [p, pp] : {std::pair{0.3, 0.2}, {0.4, 0.1}, {0.09, 0.05}}) {
            const ProblemSpec spec = ProblemSpec::biased(n, p, pp);
            const WGrid g = w_recurrence(n, p, pp);
            for (int j = 1; j <= n; ++j)
                for (int k = 1; k <= j; ++k)
                    CHECK(g.w(j, k) ==
                          doctest::Approx(enumerate_policy_value(
                                              spec, StoppingRegion::from_thresholds(n, j, k)))
                              .epsilon(1e-12));
        }
}

TEST_CASE("solve_walk headline and small examples") {
    {
        const SolveReport r = solve_walk(40, 0.09, 0.05);
        CHECK(r.thresholds == ThresholdPolicy{33, 28});
        CHECK(r.value == doctest::Approx(0.52987).epsilon(1e-4));
        CHECK(r.method == Method::walk);
        CHECK(r.evaluation_count > 0);
    }
    {
        const SolveReport r = solve_walk(2, 0.3, 0.2);
        CHECK(r.thresholds == ThresholdPolicy{1, 1});
        CHECK(r.value == doctest::Approx(0.62).epsilon(1e-12));
    }
    {
        // exercises the plus-test-failure branch and its index fix
        const SolveReport r = solve_walk(3, 0.4, 0.1);
        CHECK(r.thresholds == ThresholdPolicy{2, 1});
        CHECK(r.value == doctest::Approx(0.603).epsilon(1e-12));
    }
}

TEST_CASE("solve_walk degenerate dispatches") {
    CHECK(solve_walk(5, 0.6, 0.4).thresholds == ThresholdPolicy{5, 5});
    CHECK(solve_walk(5, 0.6, 0.4).value == doctest::Approx(1.0));
    CHECK(solve_walk(4, 0.0, 0.0).thresholds == ThresholdPolicy{4, 4});
    CHECK(solve_walk(4, 0.0, 0.0).value == doctest::Approx(0.0));

    {  // p' = 0 routes to the odds rule
        const SolveReport r = solve_walk(10, 0.2, 0.0);
        CHECK(r.method == Method::odds);
        CHECK(r.thresholds.s == 7);
        CHECK(r.value == doctest::Approx(0.4096).epsilon(1e-12));
    }
    {  // p = p' routes to the symmetric-case threshold
        const SolveReport r = solve_walk(10, 0.2, 0.2);
        CHECK(r.thresholds == ThresholdPolicy{8, 8});
        CHECK(r.value == doctest::Approx(0.592).epsilon(1e-12));
    }
    {  // p < p' swaps the signs and swaps back
        const SolveReport r = solve_walk(3, 0.1, 0.4);
        CHECK(r.thresholds == ThresholdPolicy{1, 2});
        CHECK(r.value == doctest::Approx(0.603).epsilon(1e-12));
        const DPResult dp = solve_backward(ProblemSpec::biased(3, 0.1, 0.4));
        CHECK(dp.policy == r.thresholds);
        CHECK(dp.value == doctest::Approx(r.value).epsilon(1e-12));
    }
    CHECK_THROWS_AS(solve_walk(3, 0.7, 0.5), SpecError);
}

TEST_CASE("solve_bisection examples") {
    {
        const SolveReport r = solve_bisection(40, 0.09, 0.05);
        CHECK(r.thresholds == ThresholdPolicy{33, 28});
        CHECK(r.value == doctest::Approx(0.52987).epsilon(1e-4));
        CHECK(r.method == Method::bisection);
    }
    {
        // w(1,1) = 0.515 < w(2,1) = 0.603 > w(3,1) = 0.567
        CHECK(w_closed_form(3, 0.4, 0.1, 1, 1) == doctest::Approx(0.515).epsilon(1e-12));
        CHECK(w_closed_form(3, 0.4, 0.1, 3, 1) == doctest::Approx(0.567).epsilon(1e-12));
        const SolveReport r = solve_bisection(3, 0.4, 0.1);
        CHECK(r.thresholds == ThresholdPolicy{2, 1});
        CHECK(r.value == doctest::Approx(0.603).epsilon(1e-12));
    }
    CHECK(solve_bisection(2, 0.3, 0.2).thresholds == ThresholdPolicy{1, 1});
    CHECK(solve_bisection(2, 0.3, 0.2).value == doctest::Approx(0.62).epsilon(1e-12));
}

TEST_CASE("bisection uses O(log n) evaluations") {
    const SolveReport r = solve_bisection(4096, 0.02, 0.01);
    // two ternary searches, each ~2 log_{3/2} n probes plus scan/verify slack
    CHECK(r.evaluation_count < 300);
    CHECK(r.thresholds == solve_walk(4096, 0.02, 0.01).thresholds);
}

TEST_CASE("walk, bisection, and DP agree across a parameter grid") {
    for (int n : {1, 2, 3, 4, 7, 12, 19, 30, 45, 60})
        for (double p = 0.04; p <= 0.451; p += 0.06)
            for (double pp = 0.01; pp <= p + 1e-9; pp += 0.05) {
                if (p + pp >= 1.0) continue;
                const DPResult dp = solve_backward(ProblemSpec::biased(n, p, pp));
                const SolveReport walk = solve_walk(n, p, pp);
                const SolveReport bis = solve_bisection(n, p, pp);
                CHECK(walk.thresholds == dp.policy);
                CHECK(bis.thresholds == dp.policy);
                CHECK(walk.value == doctest::Approx(dp.value).epsilon(1e-10));
                CHECK(bis.value == doctest::Approx(dp.value).epsilon(1e-10));
                CHECK(walk.thresholds.s >= walk.thresholds.s_prime);
            }
}

TEST_CASE("walk value equals the closed form at its own thresholds") {
    for (const auto& [n, p, pp] :
         {std::tuple{40, 0.09, 0.05}, {17, 0.3, 0.12}, {3, 0.4, 0.1}, {25, 0.45, 0.44}}) {
        const SolveReport r = solve_walk(n, p, pp);
        CHECK(r.value ==
              doctest::Approx(w_closed_form(n, p, pp, r.thresholds.s, r.thresholds.s_prime))
                  .epsilon(1e-12));
    }
}

TEST_CASE("whenever s' < s the diagonal check w(s-1,s-1) <= w(s,s-1) holds") {
    for (int n : {3, 5, 9, 16, 28, 40})
        for (double p = 0.05; p <= 0.451; p += 0.05)
            for (double pp = 0.01; pp <= p - 0.01 + 1e-9; pp += 0.05) {
                if (p + pp >= 1.0) continue;
                const SolveReport r = solve_walk(n, p, pp);
                const int s = r.thresholds.s;
                if (r.thresholds.s_prime < s && s > 1)
                    CHECK(w_closed_form(n, p, pp, s - 1, s - 1) <=
                          w_closed_form(n, p, pp, s, s - 1) + 1e-12);
            }
}

TEST_CASE("for every k <= s' the map j -> w(j,k) is unimodal with mode s") {
    for (const auto& [n, p, pp] :
         {std::tuple{40, 0.09, 0.05}, {40, 0.1, 0.05}, {20, 0.3, 0.1}, {12, 0.25, 0.2}}) {
        const SolveReport opt = solve_walk(n, p, pp);
        const WGrid g = w_recurrence(n, p, pp);
        for (int k = 1; k <= opt.thresholds.s_prime; ++k) {
            int mode = k;  // smallest argmax over j >= k
            for (int j = k + 1; j <= n; ++j)
                if (g.w(j, k) > g.w(mode, k)) mode = j;
            CHECK(mode == opt.thresholds.s);
            for (int j = k; j < mode; ++j) CHECK(g.w(j, k) <= g.w(j + 1, k) + 1e-12);
            for (int j = mode; j < n; ++j) CHECK(g.w(j + 1, k) <= g.w(j, k) + 1e-12);
        }
    }
}

TEST_CASE("linear descent comparison finds the same s as the bisection") {
    // alternative s-finder: park the minus threshold at 1 and walk j down
    // from n until w(j-1,1) < w(j,1)
    for (const auto& [n, p, pp] : {std::tuple{40, 0.09, 0.05}, {15, 0.3, 0.1}, {7, 0.2, 0.18}}) {
        int j = n;
        while (j > 1 && w_closed_form(n, p, pp, j - 1, 1) >= w_closed_form(n, p, pp, j, 1)) --j;
        CHECK(j == solve_bisection(n, p, pp).thresholds.s);
    }
}

TEST_CASE("odds rule: classical-secretary style examples") {
    {
        // p_k = 1/k, n = 4: backward odds sum 1/3 + 1/2 + 1 >= 1 at index 2
        const SolveReport r = odds_threshold(std::vector<double>{1.0, 0.5, 1.0 / 3.0, 0.25});
        CHECK(r.thresholds.s == 2);
        CHECK(r.value == doctest::Approx(11.0 / 24.0).epsilon(1e-12));
        CHECK(r.method == Method::odds);
    }
    {
        const SolveReport r = odds_threshold(std::vector<double>{0.0, 0.0, 0.5});
        CHECK(r.thresholds.s == 3);
        CHECK(r.value == doctest::Approx(0.5).epsilon(1e-12));
    }
    {
        // constant 0.2: backward sum of r = 0.25 reaches 1.0 after four terms
        const SolveReport r = odds_threshold(std::vector<double>(10, 0.2));
        CHECK(r.thresholds.s == 7);
        CHECK(r.value == doctest::Approx(0.4096).epsilon(1e-12));
    }
}

TEST_CASE("odds rule: degenerate sequences") {
    {  // certain success mid-sequence: infinite odds at index 2
        const SolveReport r = odds_threshold(std::vector<double>{0.3, 1.0, 0.2});
        CHECK(r.thresholds.s == 2);
        CHECK(r.value == doctest::Approx(0.8).epsilon(1e-12));
        // cross-check: exact DP on the indicator spec
        const DPResult dp =
            solve_backward(ProblemSpec::general({0.3, 1.0, 0.2}, {0.0, 0.0, 0.0}));
        CHECK(dp.policy.s == 2);
        CHECK(dp.value == doctest::Approx(r.value).epsilon(1e-12));
    }
    {  // all-zero odds never reach 1: s = 1, value 0
        const SolveReport r = odds_threshold(std::vector<double>{0.0, 0.0});
        CHECK(r.thresholds.s == 1);
        CHECK(r.value == doctest::Approx(0.0));
    }
    CHECK_THROWS_AS(odds_threshold(std::vector<double>{}), SpecError);
    CHECK_THROWS_AS(odds_threshold(std::vector<double>{1.2}), SpecError);
}

TEST_CASE("odds value matches the product-times-sum formula away from p = 1") {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> u(0.0, 0.9);
    for (int rep = 0; rep < 100; ++rep) {
        const int n = 1 + static_cast<int>(rng() % 20);
        std::vector<double> p(static_cast<size_t>(n));
        for (double& x : p) x = u(rng);
        const SolveReport r = odds_threshold(p);
        double prod = 1.0, sum = 0.0;
        for (int j = r.thresholds.s; j <= n; ++j) {
            prod *= 1.0 - p[static_cast<size_t>(j - 1)];
            sum += p[static_cast<size_t>(j - 1)] / (1.0 - p[static_cast<size_t>(j - 1)]);
        }
        CHECK(r.value == doctest::Approx(prod * sum).epsilon(1e-10));
        // and the DP agrees on both threshold and value
        const DPResult dp = solve_backward(
            ProblemSpec::general(p, std::vector<double>(static_cast<size_t>(n), 0.0)));
        CHECK(dp.policy.s == r.thresholds.s);
        CHECK(dp.value == doctest::Approx(r.value).epsilon(1e-10));
    }
}
