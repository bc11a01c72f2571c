#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace votemarket {

/// Finite-type signal structure shared by both traders. `prior[t]` is the
/// probability of type t; `conditional_joint[t][a][b]` is
/// Pr(s_A = a, s_B = b | type t). Rows are indexed by Alice's signal.
struct SignalModel {
    std::vector<std::string> types;
    std::vector<double> prior;
    std::vector<std::array<std::array<double, 2>, 2>> conditional_joint;
};

inline constexpr double kNormalizationTolerance = 1e-9;
inline constexpr double kDefaultRelevanceTolerance = 1e-6;

/// Structural + probabilistic validation. Throws ValidationError naming the
/// offending field and index (e.g. "prior[2] is negative").
void validate(const SignalModel& model);

/// Pr(s_B = 0 | s_A = s_a), marginalizing over types.
/// Throws UndefinedPosteriorError when Pr(s_A = s_a) == 0.
double posterior_q0(const SignalModel& model, int s_a);

/// Both conditionals at once; a missing value marks a zero-probability signal.
struct Posterior {
    std::optional<double> q0_given_s0;
    std::optional<double> q0_given_s1;
};

Posterior posteriors(const SignalModel& model);

/// Bob's signal is informative about Alice's exactly when the two posteriors
/// differ. Requires both posteriors to exist.
bool stochastically_relevant(const SignalModel& model,
                             double tolerance = kDefaultRelevanceTolerance);

/// Parse + validate the on-disk schema:
///   { "types": [string...], "prior": [number...],
///     "conditional_joint": [ [[p00,p01],[p10,p11]], ... ] }
/// Errors name the field and index that failed.
SignalModel signal_model_from_json(const nlohmann::json& doc);

nlohmann::json signal_model_to_json(const SignalModel& model);

}  // namespace votemarket
