#pragma once

#include "pdsim/engine.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace pdsim {

struct Summary {
    std::size_t n_paths = 0;
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t zero_loss_paths = 0;
    std::vector<std::pair<double, double>> quantiles; // (level, value)
};

Summary summarize(const LossDistribution& dist, const std::vector<double>& quantile_levels);

// Log-spaced bins over (0, max_loss_bound]; zero-loss paths counted apart so
// plots can drop them.
struct Histogram {
    std::vector<double> edges;        // bins + 1 entries, edges[0] == 0
    std::vector<std::int64_t> counts; // per bin, (edges[k], edges[k+1]]
    std::int64_t zero_count = 0;
};

Histogram histogram(const LossDistribution& dist, std::size_t bins = 50);

// Expected-loss response to an additive shift of the initial default
// probabilities, differenced under common random numbers (identical seed on
// both runs), so a zero shift yields exactly zero.
double pd_impact(const std::vector<BankNode>& banks, const ExposureNetwork& net,
                 const SimulationConfig& config, const std::vector<double>& delta_pd);

// PD_i times the gap between the mean loss with node i forced to default at
// t=1 and with node i immune, common random numbers across the two runs.
double pd_rank(const std::vector<BankNode>& banks, const ExposureNetwork& net,
               const SimulationConfig& config, std::size_t node);

std::vector<double> pd_rank_all(const std::vector<BankNode>& banks, const ExposureNetwork& net,
                                const SimulationConfig& config);

// Zero-intercept least-squares fit of pd_impact against a uniform percentage
// increase of all initial probabilities.
struct BetaFit {
    std::vector<double> x_percent;
    std::vector<double> impact;
    double slope = 0.0;       // loss per one percent increase
    double r_squared = 0.0;   // uncentered, consistent with the zero intercept
    double residual_rms = 0.0;
};

BetaFit pd_beta(const std::vector<BankNode>& banks, const ExposureNetwork& net,
                const SimulationConfig& config, const std::vector<double>& x_percent_grid);

} // namespace pdsim
