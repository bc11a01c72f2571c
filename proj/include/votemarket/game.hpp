#pragma once

#include <cstdint>
#include <variant>

#include "votemarket/beliefs.hpp"
#include "votemarket/equilibrium.hpp"

namespace votemarket {

/// Belief input without a full type model: the two conditionals
/// Pr(s_B = 0 | s_A) directly. Alice's signal is drawn uniformly in this mode.
struct DirectPosteriors {
    double q0_given_s0;
    double q0_given_s1;
};

struct GameConfig {
    ScoringRule rule = ScoringRule::quadratic;
    double pi = 0.0;  // probability Bob is absent
    std::variant<DirectPosteriors, SignalModel> belief = DirectPosteriors{0.5, 0.5};
    std::uint64_t seed = 0;
    std::uint64_t replications = 1;
};

void validate(const GameConfig& config);

/// One play of the protocol: the market opens at 1/2, Alice moves it to her
/// equilibrium price and votes, Bob either trades + votes (best response) or
/// is absent (price stands, he votes his signal), and the contract liquidates
/// at the vote average.
struct GameOutcome {
    int s_a;
    int s_b;
    bool bob_traded;
    double p_a;
    double p_b;
    int v_a;
    int v_b;
    double v;
    double r_a;  // Alice's score difference s(p_A, v) - s(1/2, v)
    double r_b;  // Bob's score difference s(p_B, v) - s(p_A, v); 0 when absent
};

GameOutcome play(const GameConfig& config, int s_a, int s_b, bool bob_participates);

/// Seeded Monte Carlo over the game. Replication i draws from its own
/// substream of the root seed, and partial sums are combined per fixed-size
/// block in index order, so the report is bit-identical no matter how many
/// threads ran it. `simulate` distributes blocks with OpenMP;
/// `simulate_serial` is the straightforward sequential reference.
struct SimulationReport {
    std::uint64_t replications;
    double mean_r_a, stderr_r_a;
    double mean_r_b, stderr_r_b;
    double mean_v, stderr_v;
    double bob_trade_frequency;
    std::uint64_t lpp_count, hpp_count;

    bool operator==(const SimulationReport&) const = default;
};

inline constexpr std::uint64_t kSimulationBlock = 4096;

SimulationReport simulate(const GameConfig& config);
SimulationReport simulate_serial(const GameConfig& config);

/// Exhaustive grid argmax of Alice's exact expected payoff — the purely
/// numerical oracle the closed-form solver is checked against. The regime
/// guess is HPP iff the argmax lands within one grid step of p_H or p_L.
struct BruteForceResult {
    double price;
    double payoff;
    Regime regime_guess;
};

BruteForceResult brute_force_equilibrium(ScoringRule rule, double pi, double q0,
                                         double price_grid_step);
BruteForceResult brute_force_equilibrium_serial(ScoringRule rule, double pi, double q0,
                                                double price_grid_step);
BruteForceResult brute_force_equilibrium(const ScoreFn& s, const Thresholds& thresholds,
                                         double pi, double q0, double price_grid_step);
BruteForceResult brute_force_equilibrium_serial(const ScoreFn& s, const Thresholds& thresholds,
                                                double pi, double q0, double price_grid_step);

/// Scan every alternative price on a grid (plus the abstain option, payoff 0)
/// and report how much the best of them gains over the profile's payoff.
/// Non-positive max_gap certifies the profile against unilateral deviations
/// up to grid resolution.
struct DeviationReport {
    double max_gap;
    double best_price;
    double best_payoff;
    double profile_payoff;
    double grid_step;
    std::uint64_t points_checked;
};

DeviationReport verify_no_deviation(ScoringRule rule, double pi, double q0,
                                    const EquilibriumProfile& profile, double price_grid_step);
DeviationReport verify_no_deviation_serial(ScoringRule rule, double pi, double q0,
                                           const EquilibriumProfile& profile,
                                           double price_grid_step);

}  // namespace votemarket
