#pragma once

#include "pdsim/math.hpp"
#include "pdsim/model.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace pdsim {

// Per-node scenario adjustments used by the risk measures. ForceDefault pins
// the initial probability to 1 (the node goes down at the first sampling);
// Immune pins it to 0 for the whole run, while the node keeps occupying its
// slot in the correlated sampling so the joint law of the others is
// untouched.
enum class NodeScenario : std::uint8_t { None = 0, ForceDefault = 1, Immune = 2 };

struct ScenarioOverride {
    std::vector<NodeScenario> mode; // empty = no overrides
    std::vector<double> delta_pd;   // empty = zero shift

    bool empty() const { return mode.empty() && delta_pd.empty(); }
    void validate(std::size_t n) const;
};

struct SimulationConfig {
    int periods = 7;
    double dt = 1.0; // years per period
    double uniform_rho = 0.0;
    std::optional<CorrelationMatrix> rho_matrix; // takes precedence when set
    double discount_rate = 0.0;
    UpdateRule rule = UpdateRule::Merton;
    std::int64_t n_paths = 100000;
    std::uint64_t seed = 0;
    int threads = 0; // 0 = all hardware threads; has no effect on results
    bool retain_period_losses = false;

    void validate(std::size_t n_banks) const;
};

struct PathResult {
    double total_loss = 0.0;            // discounted
    std::uint64_t defaulted_mask = 0;   // bit i set when node i defaulted
    std::vector<double> period_loss;    // undiscounted, filled on request
};

struct LossDistribution {
    std::vector<double> path_loss;             // discounted total loss per path
    std::vector<std::uint64_t> defaulted_mask; // per path
    std::vector<std::vector<double>> period_loss;
    double max_loss_bound = 0.0; // sum of A_k(0) * LGD_k

    double mean() const;
    double std_error() const;
};

// Multi-period correlated-default Monte Carlo over an exposure network.
// Constructing validates configuration and calibrates the Merton
// volatilities; paths are then pure functions of the path index.
class ContagionEngine {
  public:
    ContagionEngine(std::vector<BankNode> banks, ExposureNetwork net, SimulationConfig config,
                    ScenarioOverride scenario = {});

    PathResult run_path(std::uint64_t path_index) const;
    LossDistribution run() const;

    std::size_t size() const { return banks_.size(); }
    const SimulationConfig& config() const { return config_; }

  private:
    struct Workspace;
    void run_path_into(Workspace& ws, std::uint64_t path_index, PathResult& result) const;
    void sample_defaults(Workspace& ws, std::uint64_t path, std::uint32_t period) const;

    std::vector<BankNode> banks_;
    ExposureNetwork net_;
    SimulationConfig config_;
    ScenarioOverride scenario_;

    std::vector<double> effective_pd0_; // after overrides, floored
    std::vector<double> sigma_;         // Merton calibration at t=0
    std::vector<double> liability_;     // B_i = A_i(0) - E_i(0)
    std::vector<double> discount_;      // D(t) for t = 1..M
    std::vector<double> lgd_;
    SystemState initial_state_;
    std::vector<double> initial_threshold_;

    bool uniform_mode_ = true; // one-factor sampling for uniform rho >= 0
    double sqrt_rho_ = 0.0;
    double sqrt_one_minus_rho_ = 1.0;
    std::vector<double> full_factor_; // Cholesky of the full matrix (matrix mode)
};

LossDistribution run_simulation(const std::vector<BankNode>& banks, const ExposureNetwork& net,
                                const SimulationConfig& config,
                                const ScenarioOverride& scenario = {});

} // namespace pdsim
