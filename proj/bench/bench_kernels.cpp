// Times each OpenMP kernel against its serial reference implementation and
// checks that the two produce identical output (they are written to be
// bit-for-bit equal, not merely close).

#include <chrono>
#include <cstdio>
#include <vector>

#include "votemarket/equilibrium.hpp"
#include "votemarket/game.hpp"

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
auto timed(F&& f, double& seconds) {
    const auto start = Clock::now();
    auto result = f();
    seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return result;
}

void print_row(const char* name, double serial_s, double parallel_s, bool identical) {
    std::printf("%-34s %10.3f s %10.3f s   %s\n", name, serial_s, parallel_s,
                identical ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
    using namespace votemarket;
    bool all_identical = true;
    std::printf("%-34s %12s %12s   %s\n", "kernel", "serial", "parallel", "output");

    {
        GameConfig config;
        config.rule = ScoringRule::quadratic;
        config.pi = 0.9;
        config.belief = DirectPosteriors{0.25, 0.25};
        config.seed = 42;
        config.replications = 2'000'000;
        double serial_s = 0.0, parallel_s = 0.0;
        const SimulationReport ref = timed([&] { return simulate_serial(config); }, serial_s);
        const SimulationReport par = timed([&] { return simulate(config); }, parallel_s);
        const bool identical = ref == par;
        all_identical = all_identical && identical;
        print_row("simulate, 2e6 replications", serial_s, parallel_s, identical);
    }

    {
        const double step = 1e-6;
        double serial_s = 0.0, parallel_s = 0.0;
        const BruteForceResult ref = timed(
            [&] { return brute_force_equilibrium_serial(ScoringRule::spherical, 0.7, 0.3, step); },
            serial_s);
        const BruteForceResult par = timed(
            [&] { return brute_force_equilibrium(ScoringRule::spherical, 0.7, 0.3, step); },
            parallel_s);
        const bool identical = ref.price == par.price && ref.payoff == par.payoff &&
                               ref.regime_guess == par.regime_guess;
        all_identical = all_identical && identical;
        print_row("price grid argmax, 1e6 points", serial_s, parallel_s, identical);
    }

    {
        std::vector<double> grid;
        for (int i = 1; i < 4000; ++i) {
            if (i == 2000) continue;  // 0.5 is excluded from crossover grids
            grid.push_back(i / 4000.0);
        }
        double serial_s = 0.0, parallel_s = 0.0;
        const std::vector<CrossoverRow> ref = timed(
            [&] { return crossover_curve_serial(ScoringRule::logarithmic, grid); }, serial_s);
        const std::vector<CrossoverRow> par =
            timed([&] { return crossover_curve(ScoringRule::logarithmic, grid); }, parallel_s);
        bool identical = ref.size() == par.size();
        for (std::size_t i = 0; identical && i < ref.size(); ++i) {
            identical = ref[i].q0 == par[i].q0 && ref[i].pi_c == par[i].pi_c &&
                        ref[i].note == par[i].note;
        }
        all_identical = all_identical && identical;
        print_row("crossover curve, 3998 rows", serial_s, parallel_s, identical);
    }

    if (!all_identical) {
        std::printf("\nparallel output diverged from the serial reference\n");
        return 1;
    }
    return 0;
}
