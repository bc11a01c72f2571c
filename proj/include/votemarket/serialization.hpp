#pragma once

#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "votemarket/equilibrium.hpp"
#include "votemarket/game.hpp"
#include "votemarket/inference.hpp"

namespace votemarket {

std::string_view regime_name(Regime r);
std::string_view direction_name(Direction d);
std::string_view crossover_note_name(CrossoverNote n);
std::string_view price_stage_name(PriceStage s);
std::string_view price_label_name(PriceLabel l);
std::string_view recovery_kind_name(RecoveryKind k);
std::string_view halfspace_name(Halfspace h);

Regime parse_regime(std::string_view name);
Direction parse_direction(std::string_view name);

nlohmann::json to_json(const Thresholds& thresholds);
nlohmann::json to_json(const BobStrategy& strategy);
nlohmann::json to_json(const EquilibriumProfile& profile);
nlohmann::json to_json(const Crossover& crossover);
nlohmann::json to_json(const std::vector<CrossoverRow>& rows);
nlohmann::json to_json(const SimulationReport& report);
nlohmann::json to_json(const BruteForceResult& result);
nlohmann::json to_json(const DeviationReport& report);
nlohmann::json to_json(const RecoveryResult& result);
nlohmann::json to_json(const std::vector<InformativenessLabel>& labels);
nlohmann::json to_json(const GameOutcome& outcome);

EquilibriumProfile equilibrium_profile_from_json(const nlohmann::json& doc);

}  // namespace votemarket
