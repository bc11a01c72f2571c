#include <array>
#include <vector>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "votemarket/beliefs.hpp"
#include "votemarket/errors.hpp"

using namespace votemarket;

namespace {

// Two types with correlated signals; worked by hand below.
SignalModel correlated_model() {
    SignalModel model;
    model.types = {"good", "bad"};
    model.prior = {0.6, 0.4};
    model.conditional_joint = {
        {{{{0.5, 0.2}}, {{0.2, 0.1}}}},
        {{{{0.1, 0.2}}, {{0.2, 0.5}}}},
    };
    return model;
}

// Both traders observe the type through a channel of the given accuracy,
// conditionally independently.
SignalModel accuracy_model(double accuracy, double prior0 = 0.5) {
    const double a = accuracy;
    SignalModel model;
    model.types = {"zero", "one"};
    model.prior = {prior0, 1.0 - prior0};
    model.conditional_joint = {
        {{{{a * a, a * (1 - a)}}, {{(1 - a) * a, (1 - a) * (1 - a)}}}},
        {{{{(1 - a) * (1 - a), (1 - a) * a}}, {{a * (1 - a), a * a}}}},
    };
    return model;
}

}  // namespace

TEST_SUITE("beliefs") {

TEST_CASE("posterior marginalizes over types") {
    const SignalModel model = correlated_model();
    // Pr(s_A=0) = 0.6*0.7 + 0.4*0.3 = 0.54; Pr(s_A=0, s_B=0) = 0.6*0.5 + 0.4*0.1 = 0.34
    CHECK(posterior_q0(model, 0) == doctest::Approx(17.0 / 27.0).epsilon(1e-14));
    // Pr(s_A=1) = 0.46; Pr(s_A=1, s_B=0) = 0.6*0.2 + 0.4*0.2 = 0.2
    CHECK(posterior_q0(model, 1) == doctest::Approx(10.0 / 23.0).epsilon(1e-14));

    const Posterior both = posteriors(model);
    REQUIRE(both.q0_given_s0.has_value());
    REQUIRE(both.q0_given_s1.has_value());
    CHECK(*both.q0_given_s0 == posterior_q0(model, 0));
    CHECK(*both.q0_given_s1 == posterior_q0(model, 1));
}

TEST_CASE("accuracy channel has the textbook posteriors") {
    const SignalModel model = accuracy_model(0.8);
    CHECK(posterior_q0(model, 0) == doctest::Approx(0.68).epsilon(1e-14));
    CHECK(posterior_q0(model, 1) == doctest::Approx(0.32).epsilon(1e-14));
}

TEST_CASE("law of total probability across the two conditionals") {
    for (const SignalModel& model :
         {correlated_model(), accuracy_model(0.8), accuracy_model(0.65, 0.3)}) {
        double marginal_a0 = 0.0, marginal_b0 = 0.0;
        for (std::size_t t = 0; t < model.types.size(); ++t) {
            const auto& j = model.conditional_joint[t];
            marginal_a0 += model.prior[t] * (j[0][0] + j[0][1]);
            marginal_b0 += model.prior[t] * (j[0][0] + j[1][0]);
        }
        const double reconstructed = marginal_a0 * posterior_q0(model, 0) +
                                     (1.0 - marginal_a0) * posterior_q0(model, 1);
        CHECK(reconstructed == doctest::Approx(marginal_b0).epsilon(1e-12));
    }
}

TEST_CASE("zero-probability signals have no posterior") {
    SignalModel model;
    model.types = {"only"};
    model.prior = {1.0};
    model.conditional_joint = {{{{{0.7, 0.3}}, {{0.0, 0.0}}}}};  // s_A = 1 never happens
    CHECK_THROWS_AS(posterior_q0(model, 1), UndefinedPosteriorError);
    CHECK(posterior_q0(model, 0) == doctest::Approx(0.7).epsilon(1e-14));

    const Posterior both = posteriors(model);
    CHECK(both.q0_given_s0.has_value());
    CHECK_FALSE(both.q0_given_s1.has_value());
}

TEST_CASE("stochastic relevance compares the two posteriors") {
    CHECK(stochastically_relevant(correlated_model()));
    CHECK(stochastically_relevant(accuracy_model(0.8)));

    SignalModel independent;
    independent.types = {"only"};
    independent.prior = {1.0};
    independent.conditional_joint = {{{{{0.25, 0.25}}, {{0.25, 0.25}}}}};
    CHECK_FALSE(stochastically_relevant(independent));

    // A difference inside the tolerance is treated as irrelevant.
    SignalModel close;
    close.types = {"only"};
    close.prior = {1.0};
    close.conditional_joint = {{{{{0.2, 0.3}}, {{0.2000000001, 0.2999999999}}}}};
    CHECK_FALSE(stochastically_relevant(close));
    CHECK(stochastically_relevant(close, 1e-12));
}

TEST_CASE("validation names the offending field") {
    SignalModel model = correlated_model();
    model.prior[1] = -0.1;
    CHECK_THROWS_WITH_AS(validate(model), "prior[1] is negative or not finite", ValidationError);

    model = correlated_model();
    model.prior = {0.6, 0.3};
    CHECK_THROWS_AS(validate(model), ValidationError);

    model = correlated_model();
    model.conditional_joint[0][1][0] = -0.2;
    CHECK_THROWS_WITH_AS(validate(model), "conditional_joint[0][1][0] is negative or not finite",
                         ValidationError);

    model = correlated_model();
    model.conditional_joint[1][0][0] = 0.4;  // cells of type 1 now sum to 1.3
    CHECK_THROWS_AS(validate(model), ValidationError);

    model = correlated_model();
    model.prior.push_back(0.0);
    CHECK_THROWS_AS(validate(model), ValidationError);

    model = SignalModel{};
    CHECK_THROWS_WITH_AS(validate(model), "types must not be empty", ValidationError);
}

TEST_CASE("JSON round trip preserves the model exactly") {
    const SignalModel model = correlated_model();
    const SignalModel back = signal_model_from_json(signal_model_to_json(model));
    CHECK(back.types == model.types);
    CHECK(back.prior == model.prior);
    CHECK(back.conditional_joint == model.conditional_joint);
}

TEST_CASE("JSON parsing reports schema violations field by field") {
    nlohmann::json good = signal_model_to_json(correlated_model());

    nlohmann::json doc = good;
    doc.erase("prior");
    CHECK_THROWS_WITH_AS(signal_model_from_json(doc), "missing field 'prior'", ValidationError);

    doc = good;
    doc["types"] = "good";
    CHECK_THROWS_WITH_AS(signal_model_from_json(doc), "field 'types' must be an array",
                         ValidationError);

    doc = good;
    doc["types"][1] = 7;
    CHECK_THROWS_WITH_AS(signal_model_from_json(doc), "types[1] must be a string",
                         ValidationError);

    doc = good;
    doc["prior"][0] = "heavy";
    CHECK_THROWS_WITH_AS(signal_model_from_json(doc), "prior[0] must be a number",
                         ValidationError);

    doc = good;
    doc["conditional_joint"][1] = {1, 2, 3};
    CHECK_THROWS_WITH_AS(signal_model_from_json(doc),
                         "conditional_joint[1] must be a 2x2 array (rows indexed by s_A)",
                         ValidationError);

    doc = good;
    doc["conditional_joint"][0][1] = {0.5};
    CHECK_THROWS_WITH_AS(signal_model_from_json(doc),
                         "conditional_joint[0][1] must be an array of 2 numbers (indexed by s_B)",
                         ValidationError);

    doc = good;
    doc["conditional_joint"][0][0][1] = nullptr;
    CHECK_THROWS_WITH_AS(signal_model_from_json(doc),
                         "conditional_joint[0][0][1] must be a number", ValidationError);

    CHECK_THROWS_AS(signal_model_from_json(nlohmann::json::array()), ValidationError);

    // Structurally sound but probabilistically wrong documents still fail.
    doc = good;
    doc["prior"] = {0.7, 0.7};
    CHECK_THROWS_AS(signal_model_from_json(doc), ValidationError);
}

}  // TEST_SUITE("beliefs")
