#pragma once

#include "votemarket/scoring.hpp"

namespace votemarket {

/// Bob's vote-flip prices. For an observed price above 1/2 he colludes
/// (votes with the price move) up to p_H and corrects beyond it; below 1/2
/// the mirror holds with p_L = 1 - p_H.
struct Thresholds {
    double p_L;
    double p_H;
};

inline constexpr double kDefaultRootTolerance = 1e-10;

/// Collusion premium at a price p in (1/2, 1): what Bob gains by voting the
/// price's way and riding it to 1, minus what he gains by voting against it
/// and correcting to 1/2:
///   [s(1,1) - s(p,1)] - [s(1/2,1/2) - s(p,1/2)]
/// Positive means collusion pays; the root is p_H.
double bob_indifference_gap(ScoringRule rule, double p);
double bob_indifference_gap(const ScoreFn& s, double p);

/// Bisection root of the gap on (1/2, 1) to the given bracket width, with
/// p_L = 1 - p_H. Throws SolverError if the gap does not change sign (cannot
/// happen for the three canonical rules).
Thresholds solve_thresholds(ScoringRule rule, double tolerance = kDefaultRootTolerance);
Thresholds solve_thresholds(const ScoreFn& s, double tolerance = kDefaultRootTolerance);

}  // namespace votemarket
