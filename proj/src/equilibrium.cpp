#include "votemarket/equilibrium.hpp"

#include <cmath>
#include <string>

#include "bisect.hpp"
#include "votemarket/errors.hpp"

namespace votemarket {

namespace {

void require_unit(double x, const char* name) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw ValidationError(std::string(name) + " must lie in [0,1]");
    }
}

// Best response without the open-interval domain check, so the solver can
// evaluate it at the corner price 1 (pi == 1, q0 == 0) where the LPP price
// degenerates to the boundary. Correcting is optimal there.
BobStrategy best_response_unchecked(const Thresholds& th, double p_a) {
    if (p_a > 0.5) {
        return p_a <= th.p_H ? BobStrategy{1.0, 1} : BobStrategy{0.5, 0};
    }
    return p_a >= th.p_L ? BobStrategy{0.0, 0} : BobStrategy{0.5, 1};
}

}  // namespace

int alice_rational_vote(double p_a, int s_a) {
    require_unit(p_a, "p_A");
    if (s_a != 0 && s_a != 1) throw ValidationError("s_A must be 0 or 1");
    if (p_a > 0.5) return 1;
    if (p_a < 0.5) return 0;
    return s_a;
}

BobStrategy bob_best_response(ScoringRule rule, const Thresholds& thresholds, double p_a) {
    (void)rule;  // the response is fully determined by the rule's thresholds
    if (!(p_a > 0.0 && p_a < 1.0)) {
        throw ValidationError("p_A must lie in (0,1)");
    }
    if (p_a == 0.5) {
        throw ValidationError("p_A == 0.5 leaves Bob's response undefined (no price move to react to)");
    }
    return best_response_unchecked(thresholds, p_a);
}

double expected_alice_payoff(const ScoreFn& s, const Thresholds& th,
                             double pi, double q0, double p) {
    require_unit(pi, "pi");
    require_unit(q0, "q0");
    require_unit(p, "p_A");
    if (p == 0.5) return 0.0;

    const Score base_1 = score_outcome(s, 0.5, 1.0);
    const Score base_h = score_outcome(s, 0.5, 0.5);
    const Score base_0 = score_outcome(s, 0.5, 0.0);
    auto gain = [&](double v) {
        const Score before = v == 1.0 ? base_1 : (v == 0.0 ? base_0 : base_h);
        return score_outcome(s, p, v) - before;  // `before` is finite for all three rules
    };

    double total = 0.0;
    auto add = [&](double weight, double v) {
        if (weight > 0.0) total += weight * gain(v);
    };

    if (p > 0.5) {
        // Alice votes 1. A trading Bob locks in v = 1 while colluding, 1/2 while
        // correcting; an absent Bob votes his signal.
        const double v_trade = p <= th.p_H ? 1.0 : 0.5;
        add(1.0 - pi, v_trade);
        add(pi * q0, 0.5);
        add(pi * (1.0 - q0), 1.0);
    } else {
        // Alice votes 0; mirrored liquidation values.
        const double v_trade = p >= th.p_L ? 0.0 : 0.5;
        add(1.0 - pi, v_trade);
        add(pi * q0, 0.0);
        add(pi * (1.0 - q0), 0.5);
    }
    return total;
}

double expected_alice_payoff(ScoringRule rule, const Thresholds& thresholds,
                             double pi, double q0, double p) {
    return expected_alice_payoff(score_fn(rule), thresholds, pi, q0, p);
}

Candidate lpp_candidate(const ScoreFn& s, const Thresholds& th, double pi, double q0) {
    require_unit(pi, "pi");
    require_unit(q0, "q0");
    if (q0 > 0.5) throw ValidationError("q0 must be <= 0.5 (mirror handles the down direction)");
    const double price = 0.5 * (1.0 + pi * (1.0 - q0));
    return Candidate{price, expected_alice_payoff(s, th, pi, q0, price), price > th.p_H};
}

Candidate hpp_candidate(const ScoreFn& s, const Thresholds& th, double pi, double q0) {
    require_unit(pi, "pi");
    require_unit(q0, "q0");
    if (q0 > 0.5) throw ValidationError("q0 must be <= 0.5 (mirror handles the down direction)");
    return Candidate{th.p_H, expected_alice_payoff(s, th, pi, q0, th.p_H), true};
}

Candidate lpp_candidate(ScoringRule rule, const Thresholds& th, double pi, double q0) {
    return lpp_candidate(score_fn(rule), th, pi, q0);
}

Candidate hpp_candidate(ScoringRule rule, const Thresholds& th, double pi, double q0) {
    return hpp_candidate(score_fn(rule), th, pi, q0);
}

EquilibriumProfile solve_equilibrium(const ScoreFn& s, const Thresholds& th,
                                     double pi, double q0) {
    require_unit(pi, "pi");
    require_unit(q0, "q0");

    const bool mirrored = q0 > 0.5;
    const double q_up = mirrored ? 1.0 - q0 : q0;

    const Candidate lpp = lpp_candidate(s, th, pi, q_up);
    const Candidate hpp = hpp_candidate(s, th, pi, q_up);
    const bool use_lpp = lpp.feasible && lpp.payoff > hpp.payoff;  // ties go to HPP

    EquilibriumProfile profile;
    profile.regime = use_lpp ? Regime::lpp : Regime::hpp;
    profile.direction = mirrored ? Direction::down
                                 : (q0 == 0.5 ? Direction::degenerate : Direction::up);
    profile.pi = pi;
    profile.q0 = q0;

    double price = use_lpp ? lpp.price : hpp.price;
    if (mirrored) price = 1.0 - price;
    profile.alice_price = price;
    profile.alice_vote = price > 0.5 ? 1 : 0;  // equilibrium prices never sit at 1/2
    profile.bob_if_trading = best_response_unchecked(th, price);
    // Re-evaluate at the final orientation so the stored payoff matches the
    // deviation scanner's value at this price exactly.
    profile.alice_expected_payoff = expected_alice_payoff(s, th, pi, q0, price);
    return profile;
}

EquilibriumProfile solve_equilibrium(ScoringRule rule, const Thresholds& thresholds,
                                     double pi, double q0) {
    return solve_equilibrium(score_fn(rule), thresholds, pi, q0);
}

EquilibriumProfile solve_equilibrium(ScoringRule rule, double pi, double q0) {
    return solve_equilibrium(rule, solve_thresholds(rule), pi, q0);
}

Crossover crossover_probability(const ScoreFn& s, const Thresholds& th, double q0,
                                double tolerance) {
    require_unit(q0, "q0");
    const double q_up = q0 > 0.5 ? 1.0 - q0 : q0;

    // Payoff advantage of the LPP candidate. While the candidate is infeasible
    // the HPP regime rules by fiat, encoded as a plain negative value.
    auto advantage = [&](double pi) {
        const Candidate lpp = lpp_candidate(s, th, pi, q_up);
        if (!lpp.feasible) return -1.0;
        return lpp.payoff - hpp_candidate(s, th, pi, q_up).payoff;
    };

    const double at_zero = advantage(0.0);
    const double at_one = advantage(1.0);
    if (at_zero >= 0.0) return Crossover{0.0, CrossoverNote::lpp_only};
    if (at_one < 0.0) return Crossover{1.0, CrossoverNote::hpp_only};
    if (at_one == 0.0) return Crossover{1.0, CrossoverNote::interior};
    return Crossover{detail::bisect(advantage, 0.0, 1.0, tolerance, "regime crossover"),
                     CrossoverNote::interior};
}

Crossover crossover_probability(ScoringRule rule, double q0, double tolerance) {
    return crossover_probability(score_fn(rule), solve_thresholds(rule), q0, tolerance);
}

namespace {

std::vector<CrossoverRow> curve_validate(std::span<const double> q0_grid) {
    for (std::size_t i = 0; i < q0_grid.size(); ++i) {
        const double q = q0_grid[i];
        if (!(q > 0.0 && q < 1.0) || q == 0.5) {
            throw ValidationError("q0_grid[" + std::to_string(i) +
                                  "] must lie in (0,1) and differ from 0.5");
        }
    }
    return std::vector<CrossoverRow>(q0_grid.size());
}

}  // namespace

std::vector<CrossoverRow> crossover_curve(ScoringRule rule, std::span<const double> q0_grid,
                                          double tolerance) {
    auto rows = curve_validate(q0_grid);
    const ScoreFn s = score_fn(rule);
    const Thresholds th = solve_thresholds(s);
    const std::int64_t n = static_cast<std::int64_t>(q0_grid.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i) {
        const Crossover c = crossover_probability(s, th, q0_grid[i], tolerance);
        rows[i] = CrossoverRow{q0_grid[i], c.pi_c, c.note};
    }
    return rows;
}

std::vector<CrossoverRow> crossover_curve_serial(ScoringRule rule,
                                                 std::span<const double> q0_grid,
                                                 double tolerance) {
    auto rows = curve_validate(q0_grid);
    const ScoreFn s = score_fn(rule);
    const Thresholds th = solve_thresholds(s);
    for (std::size_t i = 0; i < q0_grid.size(); ++i) {
        const Crossover c = crossover_probability(s, th, q0_grid[i], tolerance);
        rows[i] = CrossoverRow{q0_grid[i], c.pi_c, c.note};
    }
    return rows;
}

}  // namespace votemarket
