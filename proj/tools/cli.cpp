#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "votemarket/beliefs.hpp"
#include "votemarket/equilibrium.hpp"
#include "votemarket/errors.hpp"
#include "votemarket/game.hpp"
#include "votemarket/inference.hpp"
#include "votemarket/serialization.hpp"
#include "votemarket/thresholds.hpp"

namespace votemarket::cli {

namespace {

constexpr const char* kArtifactVersion = "1.0.0";

/// CSV columns are printed with 9 significant digits; JSON numbers keep the
/// full shortest-round-trip representation of the double.
std::string fmt9(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

nlohmann::json envelope(const char* command, nlohmann::json parameters, nlohmann::json results) {
    return {
        {"command", command},
        {"parameters", std::move(parameters)},
        {"results", std::move(results)},
        {"artifact_version", kArtifactVersion},
    };
}

void emit_json(std::ostream& out, const nlohmann::json& doc) {
    out << doc.dump(2) << '\n';
}

SignalModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open model file '" + path + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("model file '" + path + "' is not valid JSON: " +
                              std::string(e.what()));
    }
    return signal_model_from_json(doc);
}

std::string csv_profile_row(ScoringRule rule, const EquilibriumProfile& p) {
    return std::string(scoring_rule_name(rule)) + ',' + fmt9(p.pi) + ',' + fmt9(p.q0) + ',' +
           std::string(regime_name(p.regime)) + ',' + std::string(direction_name(p.direction)) +
           ',' + fmt9(p.alice_price) + ',' + std::to_string(p.alice_vote) + ',' +
           fmt9(p.bob_if_trading.trade_target) + ',' + std::to_string(p.bob_if_trading.vote) +
           ',' + fmt9(p.alice_expected_payoff);
}

// ---- reproduce: the built-in reference checks ------------------------------

int run_reproduce(std::ostream& out) {
    struct Check {
        std::string name;
        bool pass;
        std::string detail;
    };
    std::vector<Check> checks;
    auto add = [&](std::string name, bool pass, std::string detail) {
        checks.push_back(Check{std::move(name), pass, std::move(detail)});
    };

    const struct {
        ScoringRule rule;
        double p_l, p_h;
    } threshold_refs[] = {
        {ScoringRule::logarithmic, 0.2, 0.8},
        {ScoringRule::quadratic, 0.25, 0.75},
        {ScoringRule::spherical, 0.2725, 0.7275},
    };
    for (const auto& ref : threshold_refs) {
        const Thresholds th = solve_thresholds(ref.rule);
        const bool pass =
            std::abs(th.p_L - ref.p_l) <= 5e-4 && std::abs(th.p_H - ref.p_h) <= 5e-4;
        add("thresholds " + std::string(scoring_rule_name(ref.rule)), pass,
            "expected (" + fmt9(ref.p_l) + ", " + fmt9(ref.p_h) + "), got (" + fmt9(th.p_L) +
                ", " + fmt9(th.p_H) + ")");
    }

    const Crossover cross = crossover_probability(ScoringRule::quadratic, 0.25);
    add("crossover quadratic q0=0.25", std::abs(cross.pi_c - 0.9537) <= 5e-4,
        "expected 0.9537 within 5e-4, got " + fmt9(cross.pi_c));
    // pi_c for the quadratic rule at q0 = 0.25 is the positive root of
    // 9 pi^2 + 4 pi - 12 = 0.
    const double algebraic_root = (std::sqrt(448.0) - 4.0) / 18.0;
    add("crossover quadratic vs algebraic root", std::abs(cross.pi_c - algebraic_root) <= 1e-8,
        "expected " + fmt9(algebraic_root) + " within 1e-8, got " + fmt9(cross.pi_c));

    const EquilibriumProfile hpp = solve_equilibrium(ScoringRule::quadratic, 0.9, 0.25);
    add("regime quadratic pi=0.9 q0=0.25",
        hpp.regime == Regime::hpp && std::abs(hpp.alice_price - 0.75) <= 1e-9,
        "expected HPP at price 0.75, got " + std::string(regime_name(hpp.regime)) + " at " +
            fmt9(hpp.alice_price));

    for (const double pi : {0.96, 0.98, 1.0}) {
        const EquilibriumProfile lpp = solve_equilibrium(ScoringRule::quadratic, pi, 0.25);
        const double formula = 0.5 * (1.0 + pi * 0.75);
        add("lpp price quadratic pi=" + fmt9(pi) + " q0=0.25",
            lpp.regime == Regime::lpp && std::abs(lpp.alice_price - formula) <= 1e-9,
            "expected LPP at price " + fmt9(formula) + ", got " +
                std::string(regime_name(lpp.regime)) + " at " + fmt9(lpp.alice_price));
    }

    bool all_pass = true;
    for (const Check& c : checks) {
        all_pass = all_pass && c.pass;
        std::string name = c.name;
        if (name.size() < 44) name.resize(44, ' ');
        out << (c.pass ? "PASS  " : "FAIL  ") << name << "  " << c.detail << '\n';
    }
    out << (all_pass ? "all reference checks passed\n" : "reference check mismatch\n");
    return all_pass ? 0 : 2;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"equilibrium solver and simulator for a two-player prediction market "
                 "whose traders also vote on the outcome",
                 "votemarket"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::Throw);
    app.require_subcommand(1);

    const auto format_check = CLI::IsMember({"json", "csv"});

    // thresholds
    std::string th_rule;
    double th_tolerance = kDefaultRootTolerance;
    std::string th_format = "csv";
    CLI::App* cmd_thresholds =
        app.add_subcommand("thresholds", "vote-flip price thresholds p_L, p_H per scoring rule");
    cmd_thresholds->add_option("--rule", th_rule,
                               "scoring rule, or 'all' (default: all three, one row each)");
    cmd_thresholds->add_option("--tolerance", th_tolerance, "root bracket width");
    cmd_thresholds->add_option("--format", th_format, "json|csv (default csv)")
        ->check(format_check);

    // crossover
    std::string cr_rule;
    double cr_q0 = 0.0;
    int cr_grid = 99;
    double cr_tolerance = kDefaultRootTolerance;
    std::string cr_format = "csv";
    CLI::App* cmd_crossover = app.add_subcommand(
        "crossover", "absence probability pi_c at which the equilibrium regime flips");
    cmd_crossover->add_option("--rule", cr_rule, "scoring rule")->required();
    CLI::Option* cr_q0_opt = cmd_crossover->add_option("--q0", cr_q0, "single posterior value");
    CLI::Option* cr_grid_opt = cmd_crossover->add_option(
        "--grid", cr_grid, "N grid points q0 = i/(N+1), i = 1..N, skipping 0.5 (default 99)");
    cr_q0_opt->excludes(cr_grid_opt);
    cr_grid_opt->excludes(cr_q0_opt);
    cmd_crossover->add_option("--tolerance", cr_tolerance, "root bracket width");
    cmd_crossover->add_option("--format", cr_format, "json|csv (default csv)")
        ->check(format_check);

    // equilibrium
    std::string eq_rule;
    double eq_pi = 0.0, eq_q0 = 0.0;
    std::string eq_format = "json";
    CLI::App* cmd_equilibrium =
        app.add_subcommand("equilibrium", "solve the trade-then-vote game for one (pi, q0)");
    cmd_equilibrium->add_option("--rule", eq_rule, "scoring rule")->required();
    cmd_equilibrium->add_option("--pi", eq_pi, "probability Bob is absent")->required();
    cmd_equilibrium->add_option("--q0", eq_q0, "Pr(s_B = 0 | s_A)")->required();
    cmd_equilibrium->add_option("--format", eq_format, "json|csv (default json)")
        ->check(format_check);

    // simulate
    std::string sim_rule;
    double sim_pi = 0.0, sim_q0 = 0.0, sim_q0_s0 = 0.0, sim_q0_s1 = 0.0;
    std::string sim_model_file;
    std::uint64_t sim_n = 10000, sim_seed = 0;
    std::string sim_format = "json";
    CLI::App* cmd_simulate =
        app.add_subcommand("simulate", "seeded Monte Carlo over full plays of the game");
    cmd_simulate->add_option("--rule", sim_rule, "scoring rule")->required();
    cmd_simulate->add_option("--pi", sim_pi, "probability Bob is absent")->required();
    CLI::Option* sim_q0_opt = cmd_simulate->add_option(
        "--q0", sim_q0, "Pr(s_B = 0 | s_A), the same for both of Alice's signals");
    CLI::Option* sim_q0_s0_opt =
        cmd_simulate->add_option("--q0-s0", sim_q0_s0, "Pr(s_B = 0 | s_A = 0)");
    CLI::Option* sim_q0_s1_opt =
        cmd_simulate->add_option("--q0-s1", sim_q0_s1, "Pr(s_B = 0 | s_A = 1)");
    CLI::Option* sim_model_opt =
        cmd_simulate->add_option("--model", sim_model_file, "signal-model JSON file");
    sim_q0_opt->excludes(sim_q0_s0_opt)->excludes(sim_q0_s1_opt)->excludes(sim_model_opt);
    sim_q0_s0_opt->needs(sim_q0_s1_opt)->excludes(sim_model_opt);
    sim_q0_s1_opt->needs(sim_q0_s0_opt)->excludes(sim_model_opt);
    cmd_simulate->add_option("--n", sim_n, "replications (default 10000)");
    cmd_simulate->add_option("--seed", sim_seed, "root seed (default 0)");
    cmd_simulate->add_option("--format", sim_format, "json|csv (default json)")
        ->check(format_check);

    // verify
    std::string ve_rule;
    double ve_pi = 0.0, ve_q0 = 0.0, ve_step = 0.001;
    std::string ve_format = "json";
    CLI::App* cmd_verify = app.add_subcommand(
        "verify", "scan all alternative prices for a profitable unilateral deviation");
    cmd_verify->add_option("--rule", ve_rule, "scoring rule")->required();
    cmd_verify->add_option("--pi", ve_pi, "probability Bob is absent")->required();
    cmd_verify->add_option("--q0", ve_q0, "Pr(s_B = 0 | s_A)")->required();
    cmd_verify->add_option("--step", ve_step, "price grid step (default 0.001)");
    cmd_verify->add_option("--format", ve_format, "json|csv (default json)")
        ->check(format_check);

    // oracle
    std::string or_rule;
    double or_pi = 0.0, or_q0 = 0.0, or_step = 0.001;
    std::string or_format = "json";
    CLI::App* cmd_oracle = app.add_subcommand(
        "oracle", "brute-force grid argmax of Alice's expected payoff (numerical cross-check)");
    cmd_oracle->add_option("--rule", or_rule, "scoring rule")->required();
    cmd_oracle->add_option("--pi", or_pi, "probability Bob is absent")->required();
    cmd_oracle->add_option("--q0", or_q0, "Pr(s_B = 0 | s_A)")->required();
    cmd_oracle->add_option("--step", or_step, "price grid step (default 0.001)");
    cmd_oracle->add_option("--format", or_format, "json|csv (default json)")
        ->check(format_check);

    // recover
    std::string re_rule, re_model_file;
    double re_pi = 0.0, re_observed = 0.0;
    std::string re_format = "json";
    CLI::App* cmd_recover = app.add_subcommand(
        "recover", "infer Alice's signal from an observed post-trade price");
    cmd_recover->add_option("--model", re_model_file, "signal-model JSON file")->required();
    cmd_recover->add_option("--rule", re_rule, "scoring rule")->required();
    cmd_recover->add_option("--pi", re_pi, "probability Bob is absent")->required();
    cmd_recover->add_option("--observed", re_observed, "observed price after Alice's trade")
        ->required();
    cmd_recover->add_option("--format", re_format, "json|csv (default json)")
        ->check(format_check);

    // informativeness
    std::string in_rule;
    double in_pi = 0.0, in_q0 = 0.0;
    bool in_bob_traded = false;
    std::string in_format = "json";
    CLI::App* cmd_informativeness = app.add_subcommand(
        "informativeness", "what the price reveals at each stage of the game");
    cmd_informativeness->add_option("--rule", in_rule, "scoring rule")->required();
    cmd_informativeness->add_option("--pi", in_pi, "probability Bob is absent")->required();
    cmd_informativeness->add_option("--q0", in_q0, "Pr(s_B = 0 | s_A)")->required();
    cmd_informativeness->add_option("--bob-traded", in_bob_traded, "true|false")->required();
    cmd_informativeness->add_option("--format", in_format, "json|csv (default json)")
        ->check(format_check);

    // reproduce
    CLI::App* cmd_reproduce = app.add_subcommand(
        "reproduce", "run the built-in reference checks and print a pass/fail table");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 1;
    }

    try {
        if (cmd_thresholds->parsed()) {
            std::vector<ScoringRule> rules;
            if (th_rule.empty() || th_rule == "all") {
                rules.assign(all_scoring_rules.begin(), all_scoring_rules.end());
            } else {
                rules.push_back(parse_scoring_rule(th_rule));
            }
            if (th_format == "csv") {
                for (const ScoringRule rule : rules) {
                    const Thresholds th = solve_thresholds(rule, th_tolerance);
                    out << scoring_rule_name(rule) << ',' << fmt9(th.p_L) << ','
                        << fmt9(th.p_H) << '\n';
                }
            } else {
                nlohmann::json rows = nlohmann::json::array();
                for (const ScoringRule rule : rules) {
                    const Thresholds th = solve_thresholds(rule, th_tolerance);
                    rows.push_back({{"rule", scoring_rule_name(rule)},
                                    {"p_L", th.p_L},
                                    {"p_H", th.p_H}});
                }
                emit_json(out, envelope("thresholds",
                                        {{"rule", th_rule.empty() ? "all" : th_rule},
                                         {"tolerance", th_tolerance}},
                                        rows));
            }
        } else if (cmd_crossover->parsed()) {
            const ScoringRule rule = parse_scoring_rule(cr_rule);
            std::vector<CrossoverRow> rows;
            nlohmann::json parameters{{"rule", scoring_rule_name(rule)},
                                      {"tolerance", cr_tolerance}};
            if (cr_q0_opt->count() > 0) {
                const Crossover c = crossover_probability(rule, cr_q0, cr_tolerance);
                rows.push_back(CrossoverRow{cr_q0, c.pi_c, c.note});
                parameters["q0"] = cr_q0;
            } else {
                if (cr_grid < 1) throw ValidationError("--grid must be >= 1");
                std::vector<double> grid;
                grid.reserve(static_cast<std::size_t>(cr_grid));
                for (int i = 1; i <= cr_grid; ++i) {
                    if (2 * i == cr_grid + 1) continue;  // skip q0 == 0.5 exactly
                    grid.push_back(static_cast<double>(i) / (cr_grid + 1.0));
                }
                rows = crossover_curve(rule, grid, cr_tolerance);
                parameters["grid"] = cr_grid;
            }
            if (cr_format == "csv") {
                for (const CrossoverRow& row : rows) {
                    out << fmt9(row.q0) << ',' << fmt9(row.pi_c) << '\n';
                }
            } else {
                emit_json(out, envelope("crossover", parameters, to_json(rows)));
            }
        } else if (cmd_equilibrium->parsed()) {
            const ScoringRule rule = parse_scoring_rule(eq_rule);
            const EquilibriumProfile profile = solve_equilibrium(rule, eq_pi, eq_q0);
            if (eq_format == "csv") {
                out << csv_profile_row(rule, profile) << '\n';
            } else {
                emit_json(out, envelope("equilibrium",
                                        {{"rule", scoring_rule_name(rule)},
                                         {"pi", eq_pi},
                                         {"q0", eq_q0}},
                                        to_json(profile)));
            }
        } else if (cmd_simulate->parsed()) {
            GameConfig config;
            config.rule = parse_scoring_rule(sim_rule);
            config.pi = sim_pi;
            config.seed = sim_seed;
            config.replications = sim_n;
            nlohmann::json parameters{{"rule", scoring_rule_name(config.rule)},
                                      {"pi", sim_pi},
                                      {"replications", sim_n},
                                      {"seed", sim_seed}};
            if (sim_q0_opt->count() > 0) {
                config.belief = DirectPosteriors{sim_q0, sim_q0};
                parameters["q0"] = sim_q0;
            } else if (sim_q0_s0_opt->count() > 0) {
                config.belief = DirectPosteriors{sim_q0_s0, sim_q0_s1};
                parameters["q0_given_s0"] = sim_q0_s0;
                parameters["q0_given_s1"] = sim_q0_s1;
            } else if (sim_model_opt->count() > 0) {
                const SignalModel model = load_model(sim_model_file);
                parameters["model_file"] = sim_model_file;
                parameters["model"] = signal_model_to_json(model);
                config.belief = model;
            } else {
                throw ValidationError(
                    "one of --q0, --q0-s0/--q0-s1, or --model is required");
            }
            const SimulationReport report = simulate(config);
            if (sim_format == "csv") {
                out << report.replications << ',' << fmt9(report.mean_r_a) << ','
                    << fmt9(report.stderr_r_a) << ',' << fmt9(report.mean_r_b) << ','
                    << fmt9(report.stderr_r_b) << ',' << fmt9(report.mean_v) << ','
                    << fmt9(report.stderr_v) << ',' << fmt9(report.bob_trade_frequency) << ','
                    << report.lpp_count << ',' << report.hpp_count << '\n';
            } else {
                emit_json(out, envelope("simulate", parameters, to_json(report)));
            }
        } else if (cmd_verify->parsed()) {
            const ScoringRule rule = parse_scoring_rule(ve_rule);
            const EquilibriumProfile profile = solve_equilibrium(rule, ve_pi, ve_q0);
            const DeviationReport report =
                verify_no_deviation(rule, ve_pi, ve_q0, profile, ve_step);
            if (ve_format == "csv") {
                out << scoring_rule_name(rule) << ',' << fmt9(ve_pi) << ',' << fmt9(ve_q0)
                    << ',' << fmt9(report.max_gap) << ',' << fmt9(report.best_price) << ','
                    << fmt9(report.best_payoff) << ',' << fmt9(report.profile_payoff) << ','
                    << fmt9(report.grid_step) << ',' << report.points_checked << '\n';
            } else {
                emit_json(out, envelope("verify",
                                        {{"rule", scoring_rule_name(rule)},
                                         {"pi", ve_pi},
                                         {"q0", ve_q0},
                                         {"step", ve_step}},
                                        {{"profile", to_json(profile)},
                                         {"deviation", to_json(report)}}));
            }
        } else if (cmd_oracle->parsed()) {
            const ScoringRule rule = parse_scoring_rule(or_rule);
            const BruteForceResult result =
                brute_force_equilibrium(rule, or_pi, or_q0, or_step);
            if (or_format == "csv") {
                out << scoring_rule_name(rule) << ',' << fmt9(or_pi) << ',' << fmt9(or_q0)
                    << ',' << fmt9(result.price) << ',' << fmt9(result.payoff) << ','
                    << regime_name(result.regime_guess) << '\n';
            } else {
                emit_json(out, envelope("oracle",
                                        {{"rule", scoring_rule_name(rule)},
                                         {"pi", or_pi},
                                         {"q0", or_q0},
                                         {"step", or_step}},
                                        to_json(result)));
            }
        } else if (cmd_recover->parsed()) {
            const ScoringRule rule = parse_scoring_rule(re_rule);
            const SignalModel model = load_model(re_model_file);
            const RecoveryResult result = recover_signal(model, rule, re_pi, re_observed);
            if (re_format == "csv") {
                out << recovery_kind_name(result.kind) << ','
                    << (result.signal ? std::to_string(*result.signal) : std::string()) << ','
                    << (result.halfspace ? std::string(halfspace_name(*result.halfspace))
                                         : std::string())
                    << '\n';
            } else {
                emit_json(out, envelope("recover",
                                        {{"rule", scoring_rule_name(rule)},
                                         {"pi", re_pi},
                                         {"observed", re_observed},
                                         {"model_file", re_model_file},
                                         {"model", signal_model_to_json(model)}},
                                        to_json(result)));
            }
        } else if (cmd_informativeness->parsed()) {
            const ScoringRule rule = parse_scoring_rule(in_rule);
            const EquilibriumProfile profile = solve_equilibrium(rule, in_pi, in_q0);
            const std::vector<InformativenessLabel> labels =
                classify_informativeness(profile, in_bob_traded);
            if (in_format == "csv") {
                for (const InformativenessLabel& l : labels) {
                    out << price_stage_name(l.stage) << ',' << price_label_name(l.label) << '\n';
                }
            } else {
                emit_json(out, envelope("informativeness",
                                        {{"rule", scoring_rule_name(rule)},
                                         {"pi", in_pi},
                                         {"q0", in_q0},
                                         {"bob_traded", in_bob_traded}},
                                        to_json(labels)));
            }
        } else if (cmd_reproduce->parsed()) {
            return run_reproduce(out);
        }
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const SolverError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace votemarket::cli
