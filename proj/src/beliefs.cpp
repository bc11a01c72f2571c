#include "votemarket/beliefs.hpp"

#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "votemarket/errors.hpp"

namespace votemarket {

namespace {

std::string at(const char* field, std::size_t index) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s[%zu]", field, index);
    return buf;
}

}  // namespace

void validate(const SignalModel& model) {
    const std::size_t n = model.types.size();
    if (n == 0) throw ValidationError("types must not be empty");
    if (model.prior.size() != n) {
        throw ValidationError("prior has " + std::to_string(model.prior.size()) +
                              " entries but types has " + std::to_string(n));
    }
    if (model.conditional_joint.size() != n) {
        throw ValidationError("conditional_joint has " +
                              std::to_string(model.conditional_joint.size()) +
                              " entries but types has " + std::to_string(n));
    }

    double prior_sum = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const double w = model.prior[t];
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw ValidationError(at("prior", t) + " is negative or not finite");
        }
        prior_sum += w;
    }
    if (std::abs(prior_sum - 1.0) > kNormalizationTolerance) {
        throw ValidationError("prior sums to " + std::to_string(prior_sum) +
                              ", expected 1 within 1e-9");
    }

    for (std::size_t t = 0; t < n; ++t) {
        double cell_sum = 0.0;
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                const double c = model.conditional_joint[t][a][b];
                if (!(c >= 0.0) || !std::isfinite(c)) {
                    throw ValidationError(at("conditional_joint", t) + "[" + std::to_string(a) +
                                          "][" + std::to_string(b) + "] is negative or not finite");
                }
                cell_sum += c;
            }
        }
        if (std::abs(cell_sum - 1.0) > kNormalizationTolerance) {
            throw ValidationError(at("conditional_joint", t) + " sums to " +
                                  std::to_string(cell_sum) + ", expected 1 within 1e-9");
        }
    }
}

double posterior_q0(const SignalModel& model, int s_a) {
    if (s_a != 0 && s_a != 1) throw ValidationError("s_A must be 0 or 1");
    validate(model);
    double joint_b0 = 0.0;  // Pr(s_A = s_a, s_B = 0)
    double marginal = 0.0;  // Pr(s_A = s_a)
    for (std::size_t t = 0; t < model.types.size(); ++t) {
        const auto& row = model.conditional_joint[t][s_a];
        joint_b0 += model.prior[t] * row[0];
        marginal += model.prior[t] * (row[0] + row[1]);
    }
    if (marginal == 0.0) {
        throw UndefinedPosteriorError("Pr(s_A = " + std::to_string(s_a) +
                                      ") is zero; the posterior is undefined");
    }
    return joint_b0 / marginal;
}

Posterior posteriors(const SignalModel& model) {
    Posterior result;
    try {
        result.q0_given_s0 = posterior_q0(model, 0);
    } catch (const UndefinedPosteriorError&) {
    }
    try {
        result.q0_given_s1 = posterior_q0(model, 1);
    } catch (const UndefinedPosteriorError&) {
    }
    return result;
}

bool stochastically_relevant(const SignalModel& model, double tolerance) {
    if (!(tolerance > 0.0)) throw ValidationError("tolerance must be positive");
    const double q0 = posterior_q0(model, 0);
    const double q1 = posterior_q0(model, 1);
    return std::abs(q0 - q1) > tolerance;
}

SignalModel signal_model_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ValidationError("model document must be a JSON object");
    for (const char* field : {"types", "prior", "conditional_joint"}) {
        if (!doc.contains(field)) {
            throw ValidationError(std::string("missing field '") + field + "'");
        }
        if (!doc[field].is_array()) {
            throw ValidationError(std::string("field '") + field + "' must be an array");
        }
    }

    SignalModel model;
    const auto& types = doc["types"];
    for (std::size_t i = 0; i < types.size(); ++i) {
        if (!types[i].is_string()) {
            throw ValidationError(at("types", i) + " must be a string");
        }
        model.types.push_back(types[i].get<std::string>());
    }

    const auto& prior = doc["prior"];
    for (std::size_t i = 0; i < prior.size(); ++i) {
        if (!prior[i].is_number()) {
            throw ValidationError(at("prior", i) + " must be a number");
        }
        model.prior.push_back(prior[i].get<double>());
    }

    const auto& joint = doc["conditional_joint"];
    for (std::size_t t = 0; t < joint.size(); ++t) {
        if (!joint[t].is_array() || joint[t].size() != 2) {
            throw ValidationError(at("conditional_joint", t) +
                                  " must be a 2x2 array (rows indexed by s_A)");
        }
        std::array<std::array<double, 2>, 2> cells{};
        for (int a = 0; a < 2; ++a) {
            const auto& row = joint[t][a];
            if (!row.is_array() || row.size() != 2) {
                throw ValidationError(at("conditional_joint", t) + "[" + std::to_string(a) +
                                      "] must be an array of 2 numbers (indexed by s_B)");
            }
            for (int b = 0; b < 2; ++b) {
                if (!row[b].is_number()) {
                    throw ValidationError(at("conditional_joint", t) + "[" + std::to_string(a) +
                                          "][" + std::to_string(b) + "] must be a number");
                }
                cells[a][b] = row[b].get<double>();
            }
        }
        model.conditional_joint.push_back(cells);
    }

    validate(model);
    return model;
}

nlohmann::json signal_model_to_json(const SignalModel& model) {
    nlohmann::json joint = nlohmann::json::array();
    for (const auto& cells : model.conditional_joint) {
        joint.push_back({{cells[0][0], cells[0][1]}, {cells[1][0], cells[1][1]}});
    }
    return {{"types", model.types}, {"prior", model.prior}, {"conditional_joint", joint}};
}

}  // namespace votemarket
