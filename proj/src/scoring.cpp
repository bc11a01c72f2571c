#include "votemarket/scoring.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "votemarket/errors.hpp"

namespace votemarket {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ValidationError(std::string(what) + " must lie in [0,1]");
    }
}

void require_outcome(int outcome) {
    if (outcome != 0 && outcome != 1) {
        throw ValidationError("outcome must be 0 or 1");
    }
}

}  // namespace

ScoringRule parse_scoring_rule(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "logarithmic" || lower == "lmsr") return ScoringRule::logarithmic;
    if (lower == "quadratic" || lower == "qmsr") return ScoringRule::quadratic;
    if (lower == "spherical" || lower == "smsr") return ScoringRule::spherical;
    throw ValidationError("unknown scoring rule '" + std::string(name) +
                          "' (expected logarithmic|quadratic|spherical or lmsr|qmsr|smsr)");
}

std::string_view scoring_rule_name(ScoringRule rule) {
    switch (rule) {
        case ScoringRule::logarithmic: return "logarithmic";
        case ScoringRule::quadratic: return "quadratic";
        case ScoringRule::spherical: return "spherical";
    }
    throw ValidationError("invalid scoring rule value");
}

Score score(ScoringRule rule, double p, int outcome) {
    require_probability(p, "p");
    require_outcome(outcome);
    switch (rule) {
        case ScoringRule::logarithmic:
            // ln 0 = -inf is a legal score; log1p keeps the 1-p branch accurate.
            return outcome == 1 ? std::log(p) : std::log1p(-p);
        case ScoringRule::quadratic:
            return outcome == 1 ? 2.0 * p - p * p : 1.0 - p * p;
        case ScoringRule::spherical: {
            const double n = std::sqrt(p * p + (1.0 - p) * (1.0 - p));
            return (outcome == 1 ? p : 1.0 - p) / n;
        }
    }
    throw ValidationError("invalid scoring rule value");
}

Score score_outcome(ScoringRule rule, double p, double v) {
    return score_outcome(score_fn(rule), p, v);
}

Score score_outcome(const ScoreFn& s, double p, double v) {
    require_probability(v, "v");
    if (v == 0.0) return s(p, 0);
    if (v == 1.0) return s(p, 1);
    const Score s1 = s(p, 1);
    const Score s0 = s(p, 0);
    // Both weights are strictly positive here, so one -inf term dominates;
    // never form 0 * inf.
    if (std::isinf(s1) || std::isinf(s0)) return kNegInf;
    return v * s1 + (1.0 - v) * s0;
}

Score payoff(ScoringRule rule, double p_new, double p_old, double v) {
    const Score after = score_outcome(rule, p_new, v);
    const Score before = score_outcome(rule, p_old, v);
    if (std::isinf(before)) {
        throw IndeterminateScoreError(
            std::isinf(after) ? "payoff is -inf minus -inf, which is indeterminate"
                              : "payoff from a boundary report would be +inf, which is not a score");
    }
    return after - before;
}

double optimal_report(ScoringRule rule, double expected_v) {
    (void)rule;  // every proper rule shares the same argmax
    require_probability(expected_v, "expected_v");
    return expected_v;
}

ScoreFn score_fn(ScoringRule rule) {
    (void)scoring_rule_name(rule);  // reject invalid enum values up front
    return [rule](double p, int outcome) { return score(rule, p, outcome); };
}

}  // namespace votemarket
