#include "votemarket/inference.hpp"

#include <cmath>

#include "votemarket/errors.hpp"

namespace votemarket {

std::vector<InformativenessLabel> classify_informativeness(const EquilibriumProfile& profile,
                                                           bool bob_traded) {
    const PriceLabel after_alice = profile.regime == Regime::lpp ? PriceLabel::bayesian_estimate
                                                                 : PriceLabel::predetermined;
    const PriceLabel final_label = bob_traded ? PriceLabel::actual_outcome : after_alice;
    return {{PriceStage::after_alice, after_alice}, {PriceStage::final_price, final_label}};
}

RecoveryResult recover_signal(const SignalModel& model, ScoringRule rule, double pi,
                              double observed_p_a) {
    if (!(observed_p_a > 0.0 && observed_p_a < 1.0)) {
        throw ValidationError("observed p_A must lie in (0,1)");
    }
    if (!(pi >= 0.0 && pi <= 1.0)) throw ValidationError("pi must lie in [0,1]");

    const Thresholds th = solve_thresholds(rule);
    const EquilibriumProfile candidates[2] = {
        solve_equilibrium(rule, th, pi, posterior_q0(model, 0)),
        solve_equilibrium(rule, th, pi, posterior_q0(model, 1)),
    };

    const bool match[2] = {
        std::abs(observed_p_a - candidates[0].alice_price) <= kPriceMatchTolerance,
        std::abs(observed_p_a - candidates[1].alice_price) <= kPriceMatchTolerance,
    };

    if (match[0] != match[1]) {
        const int s = match[0] ? 0 : 1;
        if (candidates[s].regime == Regime::lpp && stochastically_relevant(model)) {
            return RecoveryResult{RecoveryKind::exact_signal, s, std::nullopt};
        }
    }

    // A threshold price is a constant of the rule: it only tells us which
    // half-space the posterior fell in.
    if (std::abs(observed_p_a - th.p_H) <= kPriceMatchTolerance) {
        return RecoveryResult{RecoveryKind::halfspace_only, std::nullopt,
                              Halfspace::q0_below_half};
    }
    if (std::abs(observed_p_a - th.p_L) <= kPriceMatchTolerance) {
        return RecoveryResult{RecoveryKind::halfspace_only, std::nullopt,
                              Halfspace::q0_above_half};
    }
    return RecoveryResult{RecoveryKind::indeterminate, std::nullopt, std::nullopt};
}

double fixed_point_residual(ScoringRule rule, double pi, double q0, double p_a) {
    if (!(pi >= 0.0 && pi <= 1.0)) throw ValidationError("pi must lie in [0,1]");
    if (!(q0 >= 0.0 && q0 <= 1.0)) throw ValidationError("q0 must lie in [0,1]");
    if (!(p_a > 0.0 && p_a < 1.0) || p_a == 0.5) {
        throw ValidationError("p_A must lie in (0,1) and differ from 0.5");
    }

    const Thresholds th = solve_thresholds(rule);
    double expected_v;
    if (p_a > 0.5) {
        // Alice votes 1; a trading Bob locks 1 while colluding, 1/2 while correcting.
        const double v_trade = p_a <= th.p_H ? 1.0 : 0.5;
        expected_v = (1.0 - pi) * v_trade + pi * ((1.0 - q0) * 1.0 + q0 * 0.5);
    } else {
        const double v_trade = p_a >= th.p_L ? 0.0 : 0.5;
        expected_v = (1.0 - pi) * v_trade + pi * (1.0 - q0) * 0.5;
    }
    return std::abs(p_a - expected_v);
}

}  // namespace votemarket
