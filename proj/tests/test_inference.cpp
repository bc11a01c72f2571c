#include <cmath>

#include <doctest.h>

#include "votemarket/errors.hpp"
#include "votemarket/inference.hpp"

using namespace votemarket;

namespace {

SignalModel correlated_model() {
    return SignalModel{
        {"good", "bad"},
        {0.6, 0.4},
        {
            {{{{0.5, 0.2}}, {{0.2, 0.1}}}},
            {{{{0.1, 0.2}}, {{0.2, 0.5}}}},
        },
    };
}

/// Conditionally independent signals of the given accuracy with a fair prior:
/// q0 | s_A=1 = 2 a (1-a), below 1/2 for any accuracy above 1/2.
SignalModel accuracy_model(double a) {
    const double b = 1.0 - a;
    return SignalModel{
        {"down", "up"},
        {0.5, 0.5},
        {
            {{{{a * a, a * b}}, {{b * a, b * b}}}},
            {{{{b * b, b * a}}, {{a * b, a * a}}}},
        },
    };
}

}  // namespace

TEST_SUITE("inference") {

TEST_CASE("price informativeness labels") {
    const EquilibriumProfile lpp = solve_equilibrium(ScoringRule::quadratic, 0.98, 0.25);
    const EquilibriumProfile hpp = solve_equilibrium(ScoringRule::quadratic, 0.9, 0.25);

    auto labels = classify_informativeness(lpp, true);
    REQUIRE(labels.size() == 2);
    CHECK(labels[0].stage == PriceStage::after_alice);
    CHECK(labels[0].label == PriceLabel::bayesian_estimate);
    CHECK(labels[1].stage == PriceStage::final_price);
    CHECK(labels[1].label == PriceLabel::actual_outcome);

    labels = classify_informativeness(lpp, false);
    CHECK(labels[0].label == PriceLabel::bayesian_estimate);
    CHECK(labels[1].label == PriceLabel::bayesian_estimate);

    labels = classify_informativeness(hpp, true);
    CHECK(labels[0].label == PriceLabel::predetermined);
    CHECK(labels[1].label == PriceLabel::actual_outcome);

    labels = classify_informativeness(hpp, false);
    CHECK(labels[0].label == PriceLabel::predetermined);
    CHECK(labels[1].label == PriceLabel::predetermined);
}

TEST_CASE("an LPP price from a relevant model identifies the signal exactly") {
    const SignalModel model = correlated_model();
    const double pi = 0.999;  // both posteriors sit in the LPP regime here

    const double price_s1 =
        solve_equilibrium(ScoringRule::quadratic, pi, posterior_q0(model, 1)).alice_price;
    const double price_s0 =
        solve_equilibrium(ScoringRule::quadratic, pi, posterior_q0(model, 0)).alice_price;
    CHECK(price_s1 == doctest::Approx(0.7823260869565218).epsilon(1e-12));
    CHECK(price_s0 == doctest::Approx(0.1855).epsilon(1e-12));

    const RecoveryResult r1 = recover_signal(model, ScoringRule::quadratic, pi, price_s1);
    CHECK(r1.kind == RecoveryKind::exact_signal);
    REQUIRE(r1.signal.has_value());
    CHECK(*r1.signal == 1);
    CHECK_FALSE(r1.halfspace.has_value());

    const RecoveryResult r0 = recover_signal(model, ScoringRule::quadratic, pi, price_s0);
    CHECK(r0.kind == RecoveryKind::exact_signal);
    CHECK(*r0.signal == 0);
}

TEST_CASE("recovery from an accuracy-style model at a literal observed price") {
    // accuracy 0.8, pi 0.99: q0 | s_A=1 = 0.32, price (1 + 0.99 * 0.68) / 2 = 0.8366.
    const RecoveryResult r =
        recover_signal(accuracy_model(0.8), ScoringRule::quadratic, 0.99, 0.8366);
    CHECK(r.kind == RecoveryKind::exact_signal);
    CHECK(*r.signal == 1);
}

TEST_CASE("a threshold price only bounds the posterior") {
    const SignalModel model = correlated_model();
    // pi = 0.9 puts both signals in the HPP regime for the quadratic rule.
    const RecoveryResult high = recover_signal(model, ScoringRule::quadratic, 0.9, 0.75);
    CHECK(high.kind == RecoveryKind::halfspace_only);
    CHECK_FALSE(high.signal.has_value());
    REQUIRE(high.halfspace.has_value());
    CHECK(*high.halfspace == Halfspace::q0_below_half);

    const RecoveryResult low = recover_signal(model, ScoringRule::quadratic, 0.9, 0.25);
    CHECK(low.kind == RecoveryKind::halfspace_only);
    CHECK(*low.halfspace == Halfspace::q0_above_half);
}

TEST_CASE("an uninformative model leaves even an LPP price indeterminate") {
    // One type, identical rows: both signals map to q0 = 0.6, so the two
    // candidate prices coincide and neither can be singled out.
    const SignalModel flat{
        {"only"},
        {1.0},
        {
            {{{{0.3, 0.2}}, {{0.3, 0.2}}}},
        },
    };
    CHECK_FALSE(stochastically_relevant(flat));

    const double price =
        solve_equilibrium(ScoringRule::quadratic, 0.995, posterior_q0(flat, 1)).alice_price;
    CHECK(price == doctest::Approx(0.2015).epsilon(1e-12));
    const RecoveryResult r = recover_signal(flat, ScoringRule::quadratic, 0.995, price);
    CHECK(r.kind == RecoveryKind::indeterminate);
    CHECK_FALSE(r.signal.has_value());
    CHECK_FALSE(r.halfspace.has_value());
}

TEST_CASE("posteriors closer than the price tolerance are indeterminate") {
    // Relevant, but only just: the posteriors differ by 1.6e-6 (above the
    // relevance cutoff), yet the two LPP prices differ by about half that,
    // which is inside the 1e-6 price-match tolerance.
    const SignalModel close{
        {"only"},
        {1.0},
        {
            {{{{0.2, 0.3}}, {{0.2000008, 0.2999992}}}},
        },
    };
    CHECK(stochastically_relevant(close));

    const double price =
        solve_equilibrium(ScoringRule::quadratic, 0.995, posterior_q0(close, 0)).alice_price;
    const RecoveryResult r = recover_signal(close, ScoringRule::quadratic, 0.995, price);
    CHECK(r.kind == RecoveryKind::indeterminate);
}

TEST_CASE("recovery input validation") {
    const SignalModel model = correlated_model();
    CHECK_THROWS_WITH_AS(recover_signal(model, ScoringRule::quadratic, 0.9, 0.0),
                         "observed p_A must lie in (0,1)", ValidationError);
    CHECK_THROWS_AS(recover_signal(model, ScoringRule::quadratic, 0.9, 1.0), ValidationError);
    CHECK_THROWS_AS(recover_signal(model, ScoringRule::quadratic, 1.5, 0.75), ValidationError);
}

TEST_CASE("the posterior-mean price is a fixed point of the vote expectation") {
    // pi = 0.98, q0 = 0.25: E[v] = 0.02 * 0.5 + 0.98 * (0.75 + 0.25 * 0.5) = 0.8675.
    CHECK(fixed_point_residual(ScoringRule::quadratic, 0.98, 0.25, 0.8675) < 1e-9);
    // The mirrored orientation.
    CHECK(fixed_point_residual(ScoringRule::quadratic, 0.98, 0.75, 0.1325) < 1e-9);
    // A threshold price is not a fixed point: residual 0.8875 - 0.75.
    CHECK(fixed_point_residual(ScoringRule::quadratic, 0.9, 0.25, 0.75) ==
          doctest::Approx(0.1375).epsilon(1e-12));
}

TEST_CASE("fixed-point residual separates the regimes across solved profiles") {
    bool saw_lpp = false;
    bool saw_hpp = false;
    for (const ScoringRule rule : all_scoring_rules) {
        for (const double q0 : {0.2, 0.25, 0.3}) {
            for (const double pi : {0.9, 0.99, 0.999}) {
                const EquilibriumProfile profile = solve_equilibrium(rule, pi, q0);
                const double residual =
                    fixed_point_residual(rule, pi, q0, profile.alice_price);
                if (profile.regime == Regime::lpp) {
                    saw_lpp = true;
                    CHECK(residual < 1e-9);
                } else {
                    saw_hpp = true;
                    CHECK(residual > 0.01);
                }
            }
        }
    }
    CHECK(saw_lpp);
    CHECK(saw_hpp);
}

TEST_CASE("fixed-point residual validation") {
    CHECK_THROWS_WITH_AS(fixed_point_residual(ScoringRule::quadratic, 0.9, 0.25, 0.5),
                         "p_A must lie in (0,1) and differ from 0.5", ValidationError);
    CHECK_THROWS_AS(fixed_point_residual(ScoringRule::quadratic, 0.9, 0.25, 0.0),
                    ValidationError);
    CHECK_THROWS_AS(fixed_point_residual(ScoringRule::quadratic, 1.5, 0.25, 0.75),
                    ValidationError);
    CHECK_THROWS_AS(fixed_point_residual(ScoringRule::quadratic, 0.9, 1.2, 0.75),
                    ValidationError);
}

}  // TEST_SUITE("inference")
