#pragma once

#include <span>
#include <vector>

#include "votemarket/scoring.hpp"
#include "votemarket/thresholds.hpp"

namespace votemarket {

/// LPP: Alice prices at the posterior mean of the liquidation value and a
/// trading Bob corrects her. HPP: Alice parks the price exactly at Bob's
/// vote-flip threshold and a trading Bob colludes.
enum class Regime { lpp, hpp };

/// Which side of 1/2 the equilibrium price sits on. q0 > 1/2 mirrors the
/// up-direction solution; q0 == 1/2 is degenerate and reported in the up
/// orientation by convention.
enum class Direction { up, down, degenerate };

struct BobStrategy {
    double trade_target;  // price Bob moves the market to
    int vote;
};

struct EquilibriumProfile {
    Regime regime;
    Direction direction;
    double alice_price;
    int alice_vote;
    BobStrategy bob_if_trading;
    double alice_expected_payoff;
    double pi;  // probability Bob is absent
    double q0;  // Pr(s_B = 0 | s_A)
};

/// A price above 1/2 commits Alice to voting 1, below 1/2 to voting 0 (her
/// market position dominates her outcome stake). At exactly 1/2 she is
/// indifferent and votes her signal.
int alice_rational_vote(double p_a, int s_a);

/// Bob's optimal trade + vote after observing Alice's price, p_a in (0,1) \ {1/2}:
///   (1/2, p_H]  -> move to 1,   vote 1   (collude upward)
///   (p_H, 1)    -> move to 1/2, vote 0   (correct)
///   [p_L, 1/2)  -> move to 0,   vote 0   (collude downward)
///   (0, p_L)    -> move to 1/2, vote 1   (correct)
/// The target always equals the liquidation value his and Alice's votes lock in.
BobStrategy bob_best_response(ScoringRule rule, const Thresholds& thresholds, double p_a);

/// Alice's exact expected market payoff for moving the price from 1/2 to p,
/// with Bob best-responding when he trades (probability 1-pi) and voting his
/// signal when absent. Defined on [0,1]; p == 1/2 is the zero-payoff abstain.
/// Every candidate payoff, the deviation scan, and the brute-force oracle all
/// run through this one evaluator so their values agree bit-for-bit.
double expected_alice_payoff(ScoringRule rule, const Thresholds& thresholds,
                             double pi, double q0, double p);
double expected_alice_payoff(const ScoreFn& s, const Thresholds& thresholds,
                             double pi, double q0, double p);

/// An up-direction (q0 <= 1/2) equilibrium candidate. For the LPP candidate
/// `price` is the posterior mean (1 + pi*(1-q0))/2 and `feasible` says whether
/// it clears p_H (otherwise a trading Bob would collude rather than correct,
/// and the profile is not self-consistent). The HPP candidate is always
/// feasible. `payoff` is expected_alice_payoff at `price` in either case.
struct Candidate {
    double price;
    double payoff;
    bool feasible;
};

Candidate lpp_candidate(ScoringRule rule, const Thresholds& thresholds, double pi, double q0);
Candidate lpp_candidate(const ScoreFn& s, const Thresholds& thresholds, double pi, double q0);
Candidate hpp_candidate(ScoringRule rule, const Thresholds& thresholds, double pi, double q0);
Candidate hpp_candidate(const ScoreFn& s, const Thresholds& thresholds, double pi, double q0);

/// Best of the two candidates (ties go to HPP), mirrored through p -> 1-p,
/// votes complemented, when q0 > 1/2.
EquilibriumProfile solve_equilibrium(ScoringRule rule, double pi, double q0);
EquilibriumProfile solve_equilibrium(ScoringRule rule, const Thresholds& thresholds,
                                     double pi, double q0);
EquilibriumProfile solve_equilibrium(const ScoreFn& s, const Thresholds& thresholds,
                                     double pi, double q0);

/// Where the regime flips as Bob's absence probability rises. `boundary`
/// records the degenerate cases where one regime rules all of [0,1].
enum class CrossoverNote { interior, hpp_only, lpp_only };

struct Crossover {
    double pi_c;
    CrossoverNote note;
};

Crossover crossover_probability(ScoringRule rule, double q0,
                                double tolerance = kDefaultRootTolerance);
Crossover crossover_probability(const ScoreFn& s, const Thresholds& thresholds, double q0,
                                double tolerance = kDefaultRootTolerance);

struct CrossoverRow {
    double q0;
    double pi_c;
    CrossoverNote note;
};

/// Crossover per grid point. Grid values must lie in (0,1) and differ from 1/2.
/// Rows are computed independently (OpenMP in `crossover_curve`); the serial
/// variant is the plain reference loop and produces identical output.
std::vector<CrossoverRow> crossover_curve(ScoringRule rule, std::span<const double> q0_grid,
                                          double tolerance = kDefaultRootTolerance);
std::vector<CrossoverRow> crossover_curve_serial(ScoringRule rule, std::span<const double> q0_grid,
                                                 double tolerance = kDefaultRootTolerance);

}  // namespace votemarket
