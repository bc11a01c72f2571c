#pragma once

#include <array>
#include <functional>
#include <string>
#include <string_view>

namespace votemarket {

/// The three proper scoring rules the solver knows, in their canonical forms:
///
///   logarithmic:  s(p,1) = ln p            s(p,0) = ln(1-p)
///   quadratic:    s(p,1) = 2p - p^2        s(p,0) = 1 - p^2
///   spherical:    s(p,1) = p / n(p)        s(p,0) = (1-p) / n(p),  n(p) = sqrt(p^2 + (1-p)^2)
enum class ScoringRule { logarithmic, quadratic, spherical };

inline constexpr std::array<ScoringRule, 3> all_scoring_rules{
    ScoringRule::logarithmic, ScoringRule::quadratic, ScoringRule::spherical};

/// Accepts the full names plus the market aliases "lmsr", "qmsr", "smsr"
/// (case-insensitive). Anything else throws ValidationError listing the options.
ScoringRule parse_scoring_rule(std::string_view name);
std::string_view scoring_rule_name(ScoringRule rule);

/// A score is an extended real: finite or -infinity (the logarithmic rule at a
/// boundary mismatch). +infinity is never a legal score value.
using Score = double;

/// s(p, outcome) for a binary outcome. p must lie in [0,1], outcome in {0,1}.
Score score(ScoringRule rule, double p, int outcome);

/// Linear extension to a liquidation value v in [0,1]:
///   s(p, v) = v * s(p,1) + (1-v) * s(p,0)
/// Exact at the endpoints (v==0 and v==1 return the corresponding branch
/// directly, so a -inf on the zero-weight side cannot poison the result).
Score score_outcome(ScoringRule rule, double p, double v);

/// Market payoff for moving the price from p_old to p_new when the contract
/// liquidates at v: s(p_new, v) - s(p_old, v).
/// -inf - -inf and finite - -inf (a +infinite payoff) both throw
/// IndeterminateScoreError rather than returning a non-score.
Score payoff(ScoringRule rule, double p_new, double p_old, double v);

/// The report maximizing expected score under a proper rule is the expected
/// liquidation value itself.
double optimal_report(ScoringRule rule, double expected_v);

/// Generic binary score function s(p, outcome). The solvers run on this
/// signature so positive-affine variants (a*s + b, a > 0) can be pushed
/// through the same code paths; the canonical rules are the common case.
using ScoreFn = std::function<Score(double p, int outcome)>;

ScoreFn score_fn(ScoringRule rule);
Score score_outcome(const ScoreFn& s, double p, double v);

}  // namespace votemarket
