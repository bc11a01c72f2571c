#include "votemarket/serialization.hpp"

#include "votemarket/errors.hpp"

namespace votemarket {

std::string_view regime_name(Regime r) {
    return r == Regime::lpp ? "LPP" : "HPP";
}

std::string_view direction_name(Direction d) {
    switch (d) {
        case Direction::up: return "up";
        case Direction::down: return "down";
        case Direction::degenerate: return "degenerate";
    }
    throw ValidationError("invalid direction value");
}

std::string_view crossover_note_name(CrossoverNote n) {
    switch (n) {
        case CrossoverNote::interior: return "interior";
        case CrossoverNote::hpp_only: return "hpp_only";
        case CrossoverNote::lpp_only: return "lpp_only";
    }
    throw ValidationError("invalid crossover note value");
}

std::string_view price_stage_name(PriceStage s) {
    return s == PriceStage::after_alice ? "after_alice" : "final";
}

std::string_view price_label_name(PriceLabel l) {
    switch (l) {
        case PriceLabel::bayesian_estimate: return "bayesian_estimate";
        case PriceLabel::predetermined: return "predetermined";
        case PriceLabel::actual_outcome: return "actual_outcome";
    }
    throw ValidationError("invalid price label value");
}

std::string_view recovery_kind_name(RecoveryKind k) {
    switch (k) {
        case RecoveryKind::exact_signal: return "exact_signal";
        case RecoveryKind::halfspace_only: return "halfspace_only";
        case RecoveryKind::indeterminate: return "indeterminate";
    }
    throw ValidationError("invalid recovery kind value");
}

std::string_view halfspace_name(Halfspace h) {
    return h == Halfspace::q0_below_half ? "q0_below_half" : "q0_above_half";
}

Regime parse_regime(std::string_view name) {
    if (name == "LPP") return Regime::lpp;
    if (name == "HPP") return Regime::hpp;
    throw ValidationError("unknown regime '" + std::string(name) + "'");
}

Direction parse_direction(std::string_view name) {
    if (name == "up") return Direction::up;
    if (name == "down") return Direction::down;
    if (name == "degenerate") return Direction::degenerate;
    throw ValidationError("unknown direction '" + std::string(name) + "'");
}

nlohmann::json to_json(const Thresholds& thresholds) {
    return {{"p_L", thresholds.p_L}, {"p_H", thresholds.p_H}};
}

nlohmann::json to_json(const BobStrategy& strategy) {
    return {{"trade_target", strategy.trade_target}, {"vote", strategy.vote}};
}

nlohmann::json to_json(const EquilibriumProfile& profile) {
    return {
        {"regime", regime_name(profile.regime)},
        {"direction", direction_name(profile.direction)},
        {"alice_price", profile.alice_price},
        {"alice_vote", profile.alice_vote},
        {"bob_if_trading", to_json(profile.bob_if_trading)},
        {"alice_expected_payoff", profile.alice_expected_payoff},
        {"pi", profile.pi},
        {"q0", profile.q0},
    };
}

nlohmann::json to_json(const Crossover& crossover) {
    return {{"pi_c", crossover.pi_c}, {"note", crossover_note_name(crossover.note)}};
}

nlohmann::json to_json(const std::vector<CrossoverRow>& rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const CrossoverRow& row : rows) {
        out.push_back({{"q0", row.q0},
                       {"pi_c", row.pi_c},
                       {"note", crossover_note_name(row.note)}});
    }
    return out;
}

nlohmann::json to_json(const SimulationReport& report) {
    return {
        {"replications", report.replications},
        {"mean_r_A", report.mean_r_a},
        {"stderr_r_A", report.stderr_r_a},
        {"mean_r_B", report.mean_r_b},
        {"stderr_r_B", report.stderr_r_b},
        {"mean_v", report.mean_v},
        {"stderr_v", report.stderr_v},
        {"bob_trade_frequency", report.bob_trade_frequency},
        {"regime_counts", {{"LPP", report.lpp_count}, {"HPP", report.hpp_count}}},
    };
}

nlohmann::json to_json(const BruteForceResult& result) {
    return {{"price", result.price},
            {"payoff", result.payoff},
            {"regime_guess", regime_name(result.regime_guess)}};
}

nlohmann::json to_json(const DeviationReport& report) {
    return {
        {"max_gap", report.max_gap},
        {"best_price", report.best_price},
        {"best_payoff", report.best_payoff},
        {"profile_payoff", report.profile_payoff},
        {"grid_step", report.grid_step},
        {"points_checked", report.points_checked},
    };
}

nlohmann::json to_json(const RecoveryResult& result) {
    nlohmann::json out{{"kind", recovery_kind_name(result.kind)}};
    if (result.signal) out["signal"] = *result.signal;
    if (result.halfspace) out["halfspace"] = halfspace_name(*result.halfspace);
    return out;
}

nlohmann::json to_json(const std::vector<InformativenessLabel>& labels) {
    nlohmann::json out = nlohmann::json::array();
    for (const InformativenessLabel& l : labels) {
        out.push_back({{"stage", price_stage_name(l.stage)}, {"label", price_label_name(l.label)}});
    }
    return out;
}

nlohmann::json to_json(const GameOutcome& outcome) {
    return {
        {"s_A", outcome.s_a},
        {"s_B", outcome.s_b},
        {"bob_traded", outcome.bob_traded},
        {"p_A", outcome.p_a},
        {"p_B", outcome.p_b},
        {"v_A", outcome.v_a},
        {"v_B", outcome.v_b},
        {"v", outcome.v},
        {"r_A", outcome.r_a},
        {"r_B", outcome.r_b},
    };
}

EquilibriumProfile equilibrium_profile_from_json(const nlohmann::json& doc) {
    EquilibriumProfile profile;
    profile.regime = parse_regime(doc.at("regime").get<std::string>());
    profile.direction = parse_direction(doc.at("direction").get<std::string>());
    profile.alice_price = doc.at("alice_price").get<double>();
    profile.alice_vote = doc.at("alice_vote").get<int>();
    profile.bob_if_trading.trade_target = doc.at("bob_if_trading").at("trade_target").get<double>();
    profile.bob_if_trading.vote = doc.at("bob_if_trading").at("vote").get<int>();
    profile.alice_expected_payoff = doc.at("alice_expected_payoff").get<double>();
    profile.pi = doc.at("pi").get<double>();
    profile.q0 = doc.at("q0").get<double>();
    return profile;
}

}  // namespace votemarket
