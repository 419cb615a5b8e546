#include "pdsim/markov.hpp"

#include "pdsim/common.hpp"
#include "pdsim/math.hpp"

#include <algorithm>
#include <cmath>

namespace pdsim {

void TwoNodeParams::validate() const {
    require(asset > 0.0, "two-node system: asset must be positive");
    require(capital > 0.0 && capital < asset, "two-node system: need 0 < E < A");
    require(pd > 0.0 && pd < 1.0, "two-node system: pd must lie in (0,1)");
    require(lgd > 0.0 && lgd <= 1.0, "two-node system: lgd must lie in (0,1]");
    require(exposure_loss >= 0.0, "two-node system: a_hat must be nonnegative");
    require(exposure_loss < asset, "two-node system: a_hat must not reach the asset");
    require(std::abs(rho) <= 1.0, "two-node system: |rho| must be <= 1");
}

double TwoNodeParams::sigma() const {
    return merton_sigma(asset, capital, pd);
}

double second_default_probability(const TwoNodeParams& p) {
    if (p.exposure_loss >= p.capital)
        return 1.0;
    const double s = p.sigma();
    const double arg =
        (std::log((p.asset - p.exposure_loss) / (p.asset - p.capital)) - 0.5 * s * s) / s;
    return 1.0 - norm_cdf(arg);
}

TransitionMatrix transition_matrix(const TwoNodeParams& p) {
    p.validate();
    const double q = norm_inv(p.pd);
    const double p_both = bivariate_norm_cdf(q, q, p.rho);
    const double p_one = std::max(0.0, p.pd - p_both);
    const double p_none = std::max(0.0, 1.0 - 2.0 * p_one - p_both);
    const double p_second = second_default_probability(p);

    return TransitionMatrix{{
        {p_none, p_one, p_one, p_both},
        {0.0, 1.0 - p_second, 0.0, p_second},
        {0.0, 0.0, 1.0 - p_second, p_second},
        {0.0, 0.0, 0.0, 1.0},
    }};
}

std::vector<ChainState> evolve(const TwoNodeParams& p, int periods) {
    require(periods >= 0, "evolve: periods must be nonnegative");
    const TransitionMatrix T = transition_matrix(p);
    std::vector<ChainState> states(static_cast<std::size_t>(periods) + 1);
    for (int t = 1; t <= periods; ++t) {
        const auto& prev = states[static_cast<std::size_t>(t - 1)].pi;
        auto& cur = states[static_cast<std::size_t>(t)].pi;
        for (std::size_t s = 0; s < 4; ++s) {
            double acc = 0.0;
            for (std::size_t r = 0; r < 4; ++r)
                acc += prev[r] * T[r][s];
            cur[s] = acc;
        }
    }
    return states;
}

TwoNodeLossDistribution state_loss_distribution(const TwoNodeParams& p, int periods) {
    const auto states = evolve(p, periods);
    const auto& pi = states.back().pi;
    TwoNodeLossDistribution d;
    const double single = p.asset * p.lgd;
    d.loss = {0.0, single, 2.0 * single};
    d.probability = {pi[0], pi[1] + pi[2], pi[3]};
    d.expected_loss = 0.0;
    for (std::size_t k = 0; k < 3; ++k)
        d.expected_loss += d.loss[k] * d.probability[k];
    return d;
}

Monotonicity classify_monotonicity(const std::vector<double>& values) {
    constexpr double kFlatTol = 1e-14;
    bool up = false;
    bool down = false;
    for (std::size_t k = 0; k + 1 < values.size(); ++k) {
        const double d = values[k + 1] - values[k];
        if (d > kFlatTol)
            up = true;
        else if (d < -kFlatTol)
            down = true;
    }
    if (up && down)
        return Monotonicity::NonMonotone;
    if (up)
        return Monotonicity::Increasing;
    if (down)
        return Monotonicity::Decreasing;
    return Monotonicity::Flat;
}

StrongContagionScan strong_contagion_scan(const TwoNodeParams& base,
                                          const std::vector<double>& e_grid,
                                          const std::vector<double>& rho_grid, int periods) {
    require(!e_grid.empty() && !rho_grid.empty(), "strong_contagion_scan: empty grid");
    require(std::is_sorted(rho_grid.begin(), rho_grid.end()),
            "strong_contagion_scan: rho grid must be sorted");

    StrongContagionScan scan;
    scan.e_grid = e_grid;
    scan.rho_grid = rho_grid;
    scan.pi12.resize(e_grid.size());
    scan.classification.resize(e_grid.size());

    for (std::size_t ei = 0; ei < e_grid.size(); ++ei) {
        auto& row = scan.pi12[ei];
        row.reserve(rho_grid.size());
        for (double rho : rho_grid) {
            TwoNodeParams p = base;
            p.capital = e_grid[ei];
            p.rho = rho;
            row.push_back(evolve(p, periods).back().pi[3]);
        }
        scan.classification[ei] = classify_monotonicity(row);
    }

    // The pattern of interest is decreasing at small E flipping once to
    // increasing at large E (scanning an ascending grid).
    std::vector<std::size_t> order(e_grid.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return e_grid[a] < e_grid[b]; });

    bool seen_increasing = false;
    bool clean = true;
    std::optional<double> crossover;
    for (std::size_t idx : order) {
        const Monotonicity m = scan.classification[idx];
        if (m == Monotonicity::Increasing) {
            if (!seen_increasing)
                crossover = e_grid[idx];
            seen_increasing = true;
        } else if (m == Monotonicity::Decreasing && seen_increasing) {
            clean = false; // decreasing above an increasing E: no single flip
        }
    }
    const bool any_decreasing =
        std::any_of(scan.classification.begin(), scan.classification.end(),
                    [](Monotonicity m) { return m == Monotonicity::Decreasing; });
    scan.single_crossover = clean && seen_increasing && any_decreasing;
    scan.crossover_e = scan.single_crossover ? crossover : std::nullopt;
    return scan;
}

} // namespace pdsim
