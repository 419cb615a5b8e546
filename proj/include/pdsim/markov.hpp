#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

namespace pdsim {

// Symmetric two-bank system: both nodes share A, PD, LGD and capital E, with
// reciprocal exposures a and hatted exposure a_hat = a * LGD.
struct TwoNodeParams {
    double asset;         // A
    double capital;       // E
    double pd;            // per period
    double lgd = 0.6;
    double exposure_loss; // a_hat = a * LGD, the impact a default inflicts
    double rho;

    void validate() const;
    double sigma() const; // Merton volatility calibrated at t = 0
};

// State order: {0} none defaulted, {1} node 1 down, {2} node 2 down,
// {12} both down (absorbing).
using TransitionMatrix = std::array<std::array<double, 4>, 4>;

struct ChainState {
    std::array<double, 4> pi{1.0, 0.0, 0.0, 0.0};
};

TransitionMatrix transition_matrix(const TwoNodeParams& p);

// Conditional second-default probability p_{1->12} = p_{2->12}; 1 once the
// impact reaches the capital.
double second_default_probability(const TwoNodeParams& p);

// Chain states at t = 0..periods (inclusive).
std::vector<ChainState> evolve(const TwoNodeParams& p, int periods);

// Exact loss distribution over {0, A*LGD, 2A*LGD} at the horizon
// (undiscounted, as in the two-bank analysis).
struct TwoNodeLossDistribution {
    std::array<double, 3> loss;
    std::array<double, 3> probability;
    double expected_loss = 0.0;
};

TwoNodeLossDistribution state_loss_distribution(const TwoNodeParams& p, int periods);

enum class Monotonicity { Increasing, Decreasing, Flat, NonMonotone };

// Classify a sequence by its finite differences; |d| <= 1e-14 counts as flat.
Monotonicity classify_monotonicity(const std::vector<double>& values);

struct StrongContagionScan {
    std::vector<double> e_grid;
    std::vector<double> rho_grid;
    std::vector<std::vector<double>> pi12; // [e][rho] terminal double-default prob
    std::vector<Monotonicity> classification;
    // Smallest E classified increasing, when the pattern flips exactly once
    // from decreasing (small E) to increasing (large E).
    std::optional<double> crossover_e;
    bool single_crossover = false;
};

// Terminal double-default probability against rho for each capital level,
// classified for the contagion-regime flip. `base` supplies A, PD, LGD and
// a_hat; E and rho come from the grids.
StrongContagionScan strong_contagion_scan(const TwoNodeParams& base,
                                          const std::vector<double>& e_grid,
                                          const std::vector<double>& rho_grid, int periods);

} // namespace pdsim
