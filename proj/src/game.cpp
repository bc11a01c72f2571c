#include "votemarket/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "votemarket/errors.hpp"
#include "votemarket/rng.hpp"

namespace votemarket {

namespace {

void require_unit(double x, const char* name) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw ValidationError(std::string(name) + " must lie in [0,1]");
    }
}

// ----- shared play logic -------------------------------------------------

GameOutcome resolve_outcome(const ScoreFn& s, const EquilibriumProfile& profile,
                            int s_a, int s_b, bool participates) {
    GameOutcome out;
    out.s_a = s_a;
    out.s_b = s_b;
    out.bob_traded = participates;
    out.p_a = profile.alice_price;
    out.v_a = profile.alice_vote;
    if (participates) {
        out.p_b = profile.bob_if_trading.trade_target;
        out.v_b = profile.bob_if_trading.vote;
    } else {
        out.p_b = out.p_a;
        out.v_b = s_b;
    }
    out.v = 0.5 * (out.v_a + out.v_b);
    out.r_a = score_outcome(s, out.p_a, out.v) - score_outcome(s, 0.5, out.v);
    out.r_b = participates ? score_outcome(s, out.p_b, out.v) - score_outcome(s, out.p_a, out.v)
                           : 0.0;
    return out;
}

// ----- simulation context -------------------------------------------------

struct CellDraw {
    double cum;
    int s_a;
    int s_b;
};

struct TypeDraw {
    double cum;
    std::vector<CellDraw> cells;  // positive-probability cells only
};

struct RepOutcome {
    double r_a, r_b, v;
};

struct SimContext {
    double pi;
    bool direct;
    double q0_direct[2];
    std::vector<TypeDraw> type_draws;  // positive-prior types only
    std::optional<EquilibriumProfile> profile[2];
    RepOutcome table[2][2][2];  // [s_a][participates][s_b]
    Regime regime[2];
};

SimContext make_context(const GameConfig& config) {
    validate(config);
    SimContext ctx;
    ctx.pi = config.pi;
    ctx.direct = std::holds_alternative<DirectPosteriors>(config.belief);

    bool drawable[2] = {false, false};
    if (ctx.direct) {
        const auto& dp = std::get<DirectPosteriors>(config.belief);
        ctx.q0_direct[0] = dp.q0_given_s0;
        ctx.q0_direct[1] = dp.q0_given_s1;
        drawable[0] = drawable[1] = true;
    } else {
        const auto& model = std::get<SignalModel>(config.belief);
        double cum = 0.0;
        for (std::size_t t = 0; t < model.prior.size(); ++t) {
            if (model.prior[t] <= 0.0) continue;
            cum += model.prior[t];
            TypeDraw td;
            td.cum = cum;
            double cell_cum = 0.0;
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    const double c = model.conditional_joint[t][a][b];
                    if (c <= 0.0) continue;
                    cell_cum += c;
                    td.cells.push_back(CellDraw{cell_cum, a, b});
                    drawable[a] = true;
                }
            }
            ctx.type_draws.push_back(std::move(td));
        }
    }

    const ScoreFn s = score_fn(config.rule);
    const Thresholds th = solve_thresholds(s);
    for (int a = 0; a < 2; ++a) {
        if (!drawable[a]) continue;
        const double q0 = ctx.direct ? ctx.q0_direct[a]
                                     : posterior_q0(std::get<SignalModel>(config.belief), a);
        const EquilibriumProfile profile = solve_equilibrium(s, th, config.pi, q0);
        ctx.profile[a] = profile;
        ctx.regime[a] = profile.regime;
        for (int participates = 0; participates < 2; ++participates) {
            for (int b = 0; b < 2; ++b) {
                const GameOutcome out =
                    resolve_outcome(s, profile, a, b, participates != 0);
                ctx.table[a][participates][b] = RepOutcome{out.r_a, out.r_b, out.v};
            }
        }
    }
    return ctx;
}

struct RepDraw {
    int s_a;
    int s_b;
    bool participates;
};

// Fixed draw order per replication: signals first, then Bob's participation.
RepDraw draw_replication(const SimContext& ctx, std::uint64_t seed, std::uint64_t i) {
    SplitMix64 rng = replication_substream(seed, i);
    const double u_signal = rng.next_unit();
    const double u_joint = rng.next_unit();
    const double u_bob = rng.next_unit();

    RepDraw draw;
    if (ctx.direct) {
        draw.s_a = u_signal < 0.5 ? 0 : 1;
        draw.s_b = u_joint < ctx.q0_direct[draw.s_a] ? 0 : 1;
    } else {
        const TypeDraw* td = &ctx.type_draws.back();
        for (const TypeDraw& cand : ctx.type_draws) {
            if (u_signal < cand.cum) {
                td = &cand;
                break;
            }
        }
        const CellDraw* cell = &td->cells.back();
        for (const CellDraw& cand : td->cells) {
            if (u_joint < cand.cum) {
                cell = &cand;
                break;
            }
        }
        draw.s_a = cell->s_a;
        draw.s_b = cell->s_b;
    }
    draw.participates = u_bob < 1.0 - ctx.pi;
    return draw;
}

// ----- blockwise aggregation ----------------------------------------------

struct BlockSums {
    double s_ra = 0.0, q_ra = 0.0;
    double s_rb = 0.0, q_rb = 0.0;
    double s_v = 0.0, q_v = 0.0;
    std::uint64_t trades = 0;
    std::uint64_t lpp = 0;
};

BlockSums accumulate_block(const SimContext& ctx, std::uint64_t seed,
                           std::uint64_t begin, std::uint64_t end) {
    BlockSums sums;
    for (std::uint64_t i = begin; i < end; ++i) {
        const RepDraw d = draw_replication(ctx, seed, i);
        const RepOutcome& o = ctx.table[d.s_a][d.participates ? 1 : 0][d.s_b];
        sums.s_ra += o.r_a;
        sums.q_ra += o.r_a * o.r_a;
        sums.s_rb += o.r_b;
        sums.q_rb += o.r_b * o.r_b;
        sums.s_v += o.v;
        sums.q_v += o.v * o.v;
        sums.trades += d.participates ? 1 : 0;
        sums.lpp += ctx.regime[d.s_a] == Regime::lpp ? 1 : 0;
    }
    return sums;
}

SimulationReport report_from_blocks(const std::vector<BlockSums>& blocks, std::uint64_t n) {
    BlockSums total;
    for (const BlockSums& b : blocks) {  // fixed fold order: block 0, 1, 2, ...
        total.s_ra += b.s_ra;
        total.q_ra += b.q_ra;
        total.s_rb += b.s_rb;
        total.q_rb += b.q_rb;
        total.s_v += b.s_v;
        total.q_v += b.q_v;
        total.trades += b.trades;
        total.lpp += b.lpp;
    }

    const double dn = static_cast<double>(n);
    auto stderr_of = [&](double sum, double sumsq) {
        if (n < 2) return 0.0;
        const double var = std::max(0.0, (sumsq - sum * sum / dn) / (dn - 1.0));
        return std::sqrt(var / dn);
    };

    SimulationReport report;
    report.replications = n;
    report.mean_r_a = total.s_ra / dn;
    report.stderr_r_a = stderr_of(total.s_ra, total.q_ra);
    report.mean_r_b = total.s_rb / dn;
    report.stderr_r_b = stderr_of(total.s_rb, total.q_rb);
    report.mean_v = total.s_v / dn;
    report.stderr_v = stderr_of(total.s_v, total.q_v);
    report.bob_trade_frequency = static_cast<double>(total.trades) / dn;
    report.lpp_count = total.lpp;
    report.hpp_count = n - total.lpp;
    return report;
}

// ----- price grid ----------------------------------------------------------

std::int64_t grid_points(double step) {
    auto k = static_cast<std::int64_t>(std::ceil(1.0 / step)) - 1;
    while (static_cast<double>(k) * step >= 1.0) --k;
    return k;  // p_k = k * step for k in [1, K] covers (0, 1) exclusive
}

struct GridBest {
    double payoff;
    double price;
};

// First-maximum-wins merge, applied in ascending price order everywhere so the
// blocked (parallel) scan reproduces the linear scan exactly.
void merge_best(GridBest& best, const GridBest& candidate) {
    if (candidate.payoff > best.payoff) best = candidate;
}

GridBest scan_block(const ScoreFn& s, const Thresholds& th, double pi, double q0,
                    double step, std::int64_t k_begin, std::int64_t k_end) {
    GridBest best{-std::numeric_limits<double>::infinity(), 0.0};
    for (std::int64_t k = k_begin; k < k_end; ++k) {
        const double p = static_cast<double>(k) * step;
        merge_best(best, GridBest{expected_alice_payoff(s, th, pi, q0, p), p});
    }
    return best;
}

constexpr std::int64_t kScanBlock = 8192;

GridBest grid_argmax(const ScoreFn& s, const Thresholds& th, double pi, double q0,
                     double step) {
    const std::int64_t K = grid_points(step);
    const std::int64_t blocks = (K + kScanBlock - 1) / kScanBlock;
    std::vector<GridBest> partial(static_cast<std::size_t>(blocks));
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < blocks; ++b) {
        const std::int64_t k_begin = 1 + b * kScanBlock;
        const std::int64_t k_end = std::min<std::int64_t>(K + 1, k_begin + kScanBlock);
        partial[static_cast<std::size_t>(b)] = scan_block(s, th, pi, q0, step, k_begin, k_end);
    }
    GridBest best{-std::numeric_limits<double>::infinity(), 0.0};
    for (const GridBest& p : partial) merge_best(best, p);
    return best;
}

GridBest grid_argmax_serial(const ScoreFn& s, const Thresholds& th, double pi, double q0,
                            double step) {
    const std::int64_t K = grid_points(step);
    return scan_block(s, th, pi, q0, step, 1, K + 1);
}

Regime guess_regime(const Thresholds& th, double price, double step) {
    const double slack = step + 1e-12;
    return (std::abs(price - th.p_H) <= slack || std::abs(price - th.p_L) <= slack)
               ? Regime::hpp
               : Regime::lpp;
}

void require_step(double step, double max_step) {
    if (!(step > 0.0 && step <= max_step)) {
        throw ValidationError("price_grid_step must lie in (0, " + std::to_string(max_step) + "]");
    }
}

}  // namespace

// ----- public API -----------------------------------------------------------

void validate(const GameConfig& config) {
    require_unit(config.pi, "pi");
    if (config.replications < 1) throw ValidationError("replications must be >= 1");
    if (const auto* dp = std::get_if<DirectPosteriors>(&config.belief)) {
        require_unit(dp->q0_given_s0, "q0_given_s0");
        require_unit(dp->q0_given_s1, "q0_given_s1");
    } else {
        validate(std::get<SignalModel>(config.belief));
    }
}

GameOutcome play(const GameConfig& config, int s_a, int s_b, bool bob_participates) {
    validate(config);
    if (s_a != 0 && s_a != 1) throw ValidationError("s_A must be 0 or 1");
    if (s_b != 0 && s_b != 1) throw ValidationError("s_B must be 0 or 1");

    const double q0 = std::holds_alternative<DirectPosteriors>(config.belief)
                          ? (s_a == 0 ? std::get<DirectPosteriors>(config.belief).q0_given_s0
                                      : std::get<DirectPosteriors>(config.belief).q0_given_s1)
                          : posterior_q0(std::get<SignalModel>(config.belief), s_a);

    const ScoreFn s = score_fn(config.rule);
    const EquilibriumProfile profile =
        solve_equilibrium(s, solve_thresholds(s), config.pi, q0);
    return resolve_outcome(s, profile, s_a, s_b, bob_participates);
}

SimulationReport simulate(const GameConfig& config) {
    const SimContext ctx = make_context(config);
    const std::uint64_t n = config.replications;
    const auto blocks = static_cast<std::int64_t>((n + kSimulationBlock - 1) / kSimulationBlock);
    std::vector<BlockSums> partial(static_cast<std::size_t>(blocks));
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < blocks; ++b) {
        const std::uint64_t begin = static_cast<std::uint64_t>(b) * kSimulationBlock;
        const std::uint64_t end = std::min(n, begin + kSimulationBlock);
        partial[static_cast<std::size_t>(b)] = accumulate_block(ctx, config.seed, begin, end);
    }
    return report_from_blocks(partial, n);
}

SimulationReport simulate_serial(const GameConfig& config) {
    const SimContext ctx = make_context(config);
    const std::uint64_t n = config.replications;
    std::vector<BlockSums> partial;
    for (std::uint64_t begin = 0; begin < n; begin += kSimulationBlock) {
        const std::uint64_t end = std::min(n, begin + kSimulationBlock);
        partial.push_back(accumulate_block(ctx, config.seed, begin, end));
    }
    return report_from_blocks(partial, n);
}

BruteForceResult brute_force_equilibrium(const ScoreFn& s, const Thresholds& th,
                                         double pi, double q0, double step) {
    require_unit(pi, "pi");
    require_unit(q0, "q0");
    require_step(step, 0.01);
    const GridBest best = grid_argmax(s, th, pi, q0, step);
    return BruteForceResult{best.price, best.payoff, guess_regime(th, best.price, step)};
}

BruteForceResult brute_force_equilibrium_serial(const ScoreFn& s, const Thresholds& th,
                                                double pi, double q0, double step) {
    require_unit(pi, "pi");
    require_unit(q0, "q0");
    require_step(step, 0.01);
    const GridBest best = grid_argmax_serial(s, th, pi, q0, step);
    return BruteForceResult{best.price, best.payoff, guess_regime(th, best.price, step)};
}

BruteForceResult brute_force_equilibrium(ScoringRule rule, double pi, double q0, double step) {
    return brute_force_equilibrium(score_fn(rule), solve_thresholds(rule), pi, q0, step);
}

BruteForceResult brute_force_equilibrium_serial(ScoringRule rule, double pi, double q0,
                                                double step) {
    return brute_force_equilibrium_serial(score_fn(rule), solve_thresholds(rule), pi, q0, step);
}

namespace {

DeviationReport deviation_report(const ScoreFn& s, const Thresholds& th, double pi, double q0,
                                 const EquilibriumProfile& profile, double step, bool parallel) {
    require_unit(pi, "pi");
    require_unit(q0, "q0");
    require_step(step, 0.1);
    // The abstain option (leave the price at 1/2, payoff 0) seeds the scan.
    GridBest best{0.0, 0.5};
    const GridBest grid = parallel ? grid_argmax(s, th, pi, q0, step)
                                   : grid_argmax_serial(s, th, pi, q0, step);
    merge_best(best, grid);

    DeviationReport report;
    report.max_gap = best.payoff - profile.alice_expected_payoff;
    report.best_price = best.price;
    report.best_payoff = best.payoff;
    report.profile_payoff = profile.alice_expected_payoff;
    report.grid_step = step;
    report.points_checked = static_cast<std::uint64_t>(grid_points(step)) + 1;
    return report;
}

}  // namespace

DeviationReport verify_no_deviation(ScoringRule rule, double pi, double q0,
                                    const EquilibriumProfile& profile, double step) {
    return deviation_report(score_fn(rule), solve_thresholds(rule), pi, q0, profile, step, true);
}

DeviationReport verify_no_deviation_serial(ScoringRule rule, double pi, double q0,
                                           const EquilibriumProfile& profile, double step) {
    return deviation_report(score_fn(rule), solve_thresholds(rule), pi, q0, profile, step, false);
}

}  // namespace votemarket
