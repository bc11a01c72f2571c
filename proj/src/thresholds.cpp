#include "votemarket/thresholds.hpp"

#include "bisect.hpp"
#include "votemarket/errors.hpp"

namespace votemarket {

namespace {

// Valid on the closed interval: at p == 1 the logarithmic rule yields a -inf
// correction score and the gap is -inf, which bisection handles by sign.
double gap_unchecked(const ScoreFn& s, double p) {
    const double collude = s(1.0, 1) - s(p, 1);
    const double correct = score_outcome(s, 0.5, 0.5) - score_outcome(s, p, 0.5);
    return collude - correct;
}

}  // namespace

double bob_indifference_gap(const ScoreFn& s, double p) {
    if (!(p > 0.5 && p < 1.0)) {
        throw ValidationError("p must lie in (0.5, 1)");
    }
    return gap_unchecked(s, p);
}

double bob_indifference_gap(ScoringRule rule, double p) {
    return bob_indifference_gap(score_fn(rule), p);
}

Thresholds solve_thresholds(const ScoreFn& s, double tolerance) {
    const double p_h = detail::bisect([&s](double p) { return gap_unchecked(s, p); },
                                      0.5, 1.0, tolerance, "indifference gap");
    return Thresholds{1.0 - p_h, p_h};
}

Thresholds solve_thresholds(ScoringRule rule, double tolerance) {
    return solve_thresholds(score_fn(rule), tolerance);
}

}  // namespace votemarket
