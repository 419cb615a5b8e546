#include "pdsim/risk.hpp"

#include "pdsim/common.hpp"

#include <algorithm>
#include <cmath>

namespace pdsim {

Summary summarize(const LossDistribution& dist, const std::vector<double>& quantile_levels) {
    require(!dist.path_loss.empty(), "summarize: empty loss distribution");
    Summary s;
    s.n_paths = dist.path_loss.size();
    s.mean = dist.mean();
    s.std_error = dist.std_error();
    s.zero_loss_paths = static_cast<std::size_t>(
        std::count(dist.path_loss.begin(), dist.path_loss.end(), 0.0));

    if (!quantile_levels.empty()) {
        std::vector<double> sorted = dist.path_loss;
        std::sort(sorted.begin(), sorted.end());
        const double n = static_cast<double>(sorted.size());
        for (double q : quantile_levels) {
            require(q > 0.0 && q < 1.0, "summarize: quantile level out of (0,1): ", q);
            const auto idx = static_cast<std::size_t>(
                std::min(n - 1.0, std::max(0.0, std::ceil(q * n) - 1.0)));
            s.quantiles.emplace_back(q, sorted[idx]);
        }
    }
    return s;
}

Histogram histogram(const LossDistribution& dist, std::size_t bins) {
    require(!dist.path_loss.empty(), "histogram: empty loss distribution");
    require(bins >= 2, "histogram: need at least 2 bins");
    require(dist.max_loss_bound > 0.0, "histogram: max loss bound not set");

    Histogram h;
    const double hi = dist.max_loss_bound;
    const double lo = hi * 1e-5;
    h.edges.resize(bins + 1);
    h.edges[0] = 0.0;
    for (std::size_t k = 1; k <= bins; ++k)
        h.edges[k] = lo * std::pow(hi / lo, static_cast<double>(k - 1) / static_cast<double>(bins - 1));
    h.counts.assign(bins, 0);

    for (double loss : dist.path_loss) {
        if (loss == 0.0) {
            ++h.zero_count;
            continue;
        }
        const auto it = std::lower_bound(h.edges.begin() + 1, h.edges.end(), loss);
        auto bin = static_cast<std::size_t>(it - h.edges.begin()) - 1;
        if (bin >= bins)
            bin = bins - 1; // rounding spill at the top edge
        ++h.counts[bin];
    }
    return h;
}

double pd_impact(const std::vector<BankNode>& banks, const ExposureNetwork& net,
                 const SimulationConfig& config, const std::vector<double>& delta_pd) {
    require(delta_pd.size() == banks.size(), "pd_impact: delta_pd size mismatch");
    for (std::size_t i = 0; i < banks.size(); ++i) {
        const double shifted = banks[i].pd0 + delta_pd[i];
        require(shifted >= 0.0 && shifted <= 1.0 + 1e-12, "pd_impact: shifted pd for '",
                banks[i].name, "' out of [0,1]");
    }

    const LossDistribution base = run_simulation(banks, net, config);
    ScenarioOverride stressed;
    stressed.delta_pd = delta_pd;
    const LossDistribution shifted = run_simulation(banks, net, config, stressed);
    return shifted.mean() - base.mean();
}

double pd_rank(const std::vector<BankNode>& banks, const ExposureNetwork& net,
               const SimulationConfig& config, std::size_t node) {
    require(node < banks.size(), "pd_rank: node index out of range");
    if (banks[node].pd0 == 0.0)
        return 0.0;

    ScenarioOverride forced;
    forced.mode.assign(banks.size(), NodeScenario::None);
    forced.mode[node] = NodeScenario::ForceDefault;

    ScenarioOverride immune;
    immune.mode.assign(banks.size(), NodeScenario::None);
    immune.mode[node] = NodeScenario::Immune;

    const double with_default = run_simulation(banks, net, config, forced).mean();
    const double without_node = run_simulation(banks, net, config, immune).mean();
    return banks[node].pd0 * (with_default - without_node);
}

std::vector<double> pd_rank_all(const std::vector<BankNode>& banks, const ExposureNetwork& net,
                                const SimulationConfig& config) {
    std::vector<double> out(banks.size());
    for (std::size_t i = 0; i < banks.size(); ++i)
        out[i] = pd_rank(banks, net, config, i);
    return out;
}

BetaFit pd_beta(const std::vector<BankNode>& banks, const ExposureNetwork& net,
                const SimulationConfig& config, const std::vector<double>& x_percent_grid) {
    require(!x_percent_grid.empty(), "pd_beta: empty percentage grid");
    double sxx = 0.0;
    for (double x : x_percent_grid) {
        require(std::isfinite(x), "pd_beta: non-finite grid entry");
        sxx += x * x;
    }
    require(sxx > 0.0, "pd_beta: degenerate grid (all zeros)");

    const double base_mean = run_simulation(banks, net, config).mean();

    BetaFit fit;
    fit.x_percent = x_percent_grid;
    fit.impact.reserve(x_percent_grid.size());
    std::vector<double> delta(banks.size());
    for (double x : x_percent_grid) {
        for (std::size_t i = 0; i < banks.size(); ++i)
            delta[i] = banks[i].pd0 * x / 100.0;
        ScenarioOverride stressed;
        stressed.delta_pd = delta;
        const double stressed_mean = run_simulation(banks, net, config, stressed).mean();
        fit.impact.push_back(stressed_mean - base_mean);
    }

    double sxy = 0.0;
    for (std::size_t k = 0; k < fit.x_percent.size(); ++k)
        sxy += fit.x_percent[k] * fit.impact[k];
    fit.slope = sxy / sxx;

    double ss_res = 0.0;
    double ss_tot = 0.0;
    for (std::size_t k = 0; k < fit.x_percent.size(); ++k) {
        const double r = fit.impact[k] - fit.slope * fit.x_percent[k];
        ss_res += r * r;
        ss_tot += fit.impact[k] * fit.impact[k];
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    fit.residual_rms = std::sqrt(ss_res / static_cast<double>(fit.x_percent.size()));
    return fit;
}

} // namespace pdsim
