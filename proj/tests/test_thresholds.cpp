#include <cmath>

#include <doctest.h>

#include "votemarket/errors.hpp"
#include "votemarket/scoring.hpp"
#include "votemarket/thresholds.hpp"

using namespace votemarket;

TEST_SUITE("thresholds") {

TEST_CASE("quadratic thresholds are exactly (0.25, 0.75)") {
    // The quadratic gap is affine with a dyadic root, so bisection on [0.5, 1]
    // hits it exactly at the first midpoint.
    const Thresholds th = solve_thresholds(ScoringRule::quadratic);
    CHECK(th.p_H == 0.75);
    CHECK(th.p_L == 0.25);
}

TEST_CASE("logarithmic thresholds converge to (0.2, 0.8)") {
    const Thresholds th = solve_thresholds(ScoringRule::logarithmic);
    CHECK(th.p_H == doctest::Approx(0.8).epsilon(1e-9));
    CHECK(th.p_L == doctest::Approx(0.2).epsilon(1e-9));
}

TEST_CASE("spherical thresholds match the closed form") {
    // Root of (p - 1/2)/n(p) = 1 - 1/sqrt(2), i.e.
    // p_H = 1/2 + c / sqrt(2 (1 - 2 c^2)) with c = 1 - 1/sqrt(2).
    const double c = 1.0 - 1.0 / std::sqrt(2.0);
    const double expected = 0.5 + c / std::sqrt(2.0 * (1.0 - 2.0 * c * c));
    const Thresholds th = solve_thresholds(ScoringRule::spherical);
    CHECK(th.p_H == doctest::Approx(expected).epsilon(1e-10));
    CHECK(th.p_H == doctest::Approx(0.7275449302811137).epsilon(1e-10));
}

TEST_CASE("p_L is the exact mirror of p_H") {
    for (const ScoringRule rule : all_scoring_rules) {
        const Thresholds th = solve_thresholds(rule);
        CHECK(th.p_L == 1.0 - th.p_H);
        CHECK(th.p_H > 0.5);
        CHECK(th.p_H < 1.0);
    }
}

TEST_CASE("indifference gap values and sign structure") {
    // Quadratic gap is 0.75 - p.
    CHECK(bob_indifference_gap(ScoringRule::quadratic, 0.6) ==
          doctest::Approx(0.15).epsilon(1e-14));
    CHECK(bob_indifference_gap(ScoringRule::quadratic, 0.75) == 0.0);
    CHECK(bob_indifference_gap(ScoringRule::quadratic, 0.9) ==
          doctest::Approx(-0.15).epsilon(1e-14));

    // Exactly one sign change on (1/2, 1), located at p_H.
    for (const ScoringRule rule : all_scoring_rules) {
        const Thresholds th = solve_thresholds(rule);
        int transitions = 0;
        bool last_positive = true;
        for (int k = 501; k <= 999; ++k) {
            const double p = k / 1000.0;
            const bool positive = bob_indifference_gap(rule, p) > 0.0;
            if (k > 501 && positive != last_positive) {
                ++transitions;
                // The flip may land one grid step past the root when the gap
                // at the root-adjacent point rounds to the wrong side of zero.
                CHECK(std::abs(p - th.p_H) <= 1e-3 + 1e-6);
            }
            last_positive = positive;
        }
        CHECK(transitions == 1);
    }
}

TEST_CASE("gap is only defined strictly between 1/2 and 1") {
    CHECK_THROWS_AS(bob_indifference_gap(ScoringRule::quadratic, 0.5), ValidationError);
    CHECK_THROWS_AS(bob_indifference_gap(ScoringRule::quadratic, 1.0), ValidationError);
    CHECK_THROWS_AS(bob_indifference_gap(ScoringRule::quadratic, 0.3), ValidationError);
}

TEST_CASE("positive-affine transforms leave the thresholds bit-identical") {
    for (const ScoringRule rule : all_scoring_rules) {
        const ScoreFn affine = [rule](double p, int outcome) {
            return 2.0 * score(rule, p, outcome) - 1.0;
        };
        const Thresholds original = solve_thresholds(rule);
        const Thresholds transformed = solve_thresholds(affine);
        CHECK(transformed.p_H == original.p_H);
        CHECK(transformed.p_L == original.p_L);
    }
}

TEST_CASE("tolerance controls the bracket width") {
    const Thresholds coarse = solve_thresholds(ScoringRule::logarithmic, 1e-2);
    CHECK(coarse.p_H == doctest::Approx(0.8).epsilon(1e-2));
    CHECK_THROWS_AS(solve_thresholds(ScoringRule::logarithmic, 0.0), ValidationError);
    CHECK_THROWS_AS(solve_thresholds(ScoringRule::logarithmic, -1.0), ValidationError);
}

}  // TEST_SUITE("thresholds")
