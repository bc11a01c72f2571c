#pragma once

#include <optional>
#include <vector>

#include "votemarket/beliefs.hpp"
#include "votemarket/equilibrium.hpp"

namespace votemarket {

/// What an outside observer may read off the market price at each stage.
enum class PriceStage { after_alice, final_price };

enum class PriceLabel {
    bayesian_estimate,  // price equals Alice's posterior mean of the liquidation value
    predetermined,      // price is a constant of the rule, carrying one bit at most
    actual_outcome,     // price equals the liquidation value itself
};

struct InformativenessLabel {
    PriceStage stage;
    PriceLabel label;
};

/// Two labels: the price after Alice's trade, and the final price. A trading
/// Bob moves the price to the realized liquidation value; an absent Bob
/// leaves Alice's price (and its label) standing.
std::vector<InformativenessLabel> classify_informativeness(const EquilibriumProfile& profile,
                                                           bool bob_traded);

/// Signal recovery from an observed post-Alice price.
enum class RecoveryKind { exact_signal, halfspace_only, indeterminate };
enum class Halfspace { q0_below_half, q0_above_half };

struct RecoveryResult {
    RecoveryKind kind;
    std::optional<int> signal;         // set iff kind == exact_signal
    std::optional<Halfspace> halfspace;  // set iff kind == halfspace_only
};

inline constexpr double kPriceMatchTolerance = 1e-6;

/// Match the observed price against the two per-signal candidate profiles.
/// An LPP price pins the signal exactly when the model is stochastically
/// relevant and only one candidate matches; an HPP price (p_H or p_L) only
/// reveals which side of 1/2 the posterior lies on; anything else -- including
/// a pair of candidate prices that coincide within tolerance -- is
/// indeterminate.
RecoveryResult recover_signal(const SignalModel& model, ScoringRule rule, double pi,
                              double observed_p_a);

/// |p_A - E[v | p_A]| where the expectation runs over Bob's participation and
/// signal, with Bob best-responding when trading. Zero (up to solver
/// tolerance) exactly characterizes LPP prices.
double fixed_point_residual(ScoringRule rule, double pi, double q0, double p_a);

}  // namespace votemarket
