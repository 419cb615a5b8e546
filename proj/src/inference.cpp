#include "pdsim/inference.hpp"

#include "pdsim/common.hpp"
#include "pdsim/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pdsim {

void AggregateMarginals::validate() const {
    require(!assets.empty(), "marginals: empty");
    require(assets.size() == liabilities.size(), "marginals: asset/liability size mismatch");
    for (std::size_t i = 0; i < assets.size(); ++i) {
        require(std::isfinite(assets[i]) && assets[i] >= 0.0, "marginals: negative assets at node ",
                i);
        require(std::isfinite(liabilities[i]) && liabilities[i] >= 0.0,
                "marginals: negative liabilities at node ", i);
    }
}

void InferenceConfig::validate() const {
    require(alpha >= 0.0, "inference: alpha must be nonnegative, got ", alpha);
    require(min_loan_fraction > 0.0 && min_loan_fraction <= 1.0,
            "inference: min_loan_fraction must lie in (0,1], got ", min_loan_fraction);
    require(ensemble_size >= 1, "inference: ensemble_size must be >= 1");
}

namespace {

// Divert part of existing loans through `node` so its residual self-pair
// clears without touching any marginal: (j -> k) becomes (j -> node -> k).
void reroute_through(std::vector<double>& a, std::size_t n, std::size_t node, double needed,
                     double eps, SplitMix64& rng) {
    int attempts = 0;
    const int max_attempts = static_cast<int>(10 * n * n) + 100;
    while (needed > eps) {
        std::vector<std::pair<std::size_t, std::size_t>> loans;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == node)
                continue;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == node || k == j)
                    continue;
                if (a[j * n + k] > eps)
                    loans.emplace_back(j, k);
            }
        }
        require_numeric(!loans.empty(),
                        "network inference: infeasible marginals, no loan can be re-routed "
                        "around node ", node);
        const auto [j, k] = loans[rng.next_below(loans.size())];
        const double amount = std::min(needed, a[j * n + k]);
        a[j * n + k] -= amount;
        a[j * n + node] += amount;
        a[node * n + k] += amount;
        needed -= amount;
        require_numeric(++attempts < max_attempts,
                        "network inference: re-routing did not converge for node ", node);
    }
}

} // namespace

InferredNetwork infer_network(const AggregateMarginals& marginals, const InferenceConfig& config,
                              std::uint64_t seed) {
    marginals.validate();
    config.validate();
    const std::size_t n = marginals.assets.size();
    require(n >= 2, "network inference: need at least two nodes");

    const double total_assets = std::accumulate(marginals.assets.begin(), marginals.assets.end(), 0.0);
    const double total_liab =
        std::accumulate(marginals.liabilities.begin(), marginals.liabilities.end(), 0.0);

    InferredNetwork result{ExposureNetwork(n), 1.0, seed};
    if (total_assets == 0.0 && total_liab == 0.0)
        return result; // nothing to place

    require(total_assets > 0.0 && total_liab > 0.0,
            "network inference: one side of the marginals is identically zero");
    result.liability_scale = total_assets / total_liab;

    std::vector<double> residual_assets = marginals.assets;
    std::vector<double> liab(n);
    for (std::size_t i = 0; i < n; ++i)
        liab[i] = marginals.liabilities[i] * result.liability_scale;
    std::vector<double> residual_liab = liab;

    const double eps = 1e-12 * std::max(total_assets, 1.0);
    SplitMix64 rng(seed);

    // Smaller borrowers choose their lenders first; ties break by index.
    std::vector<std::size_t> borrowers(n);
    std::iota(borrowers.begin(), borrowers.end(), std::size_t{0});
    std::sort(borrowers.begin(), borrowers.end(), [&](std::size_t x, std::size_t y) {
        return liab[x] != liab[y] ? liab[x] < liab[y] : x < y;
    });

    std::vector<double> a(n * n, 0.0);
    std::vector<double> weights(n);

    for (std::size_t b : borrowers) {
        const double chunk_size = config.min_loan_fraction * liab[b];
        while (residual_liab[b] > eps) {
            double total_weight = 0.0;
            for (std::size_t l = 0; l < n; ++l) {
                weights[l] = 0.0;
                if (l != b && residual_assets[l] > eps)
                    weights[l] = config.alpha == 0.0 ? 1.0
                                                     : std::pow(residual_assets[l], config.alpha);
                total_weight += weights[l];
            }
            if (total_weight == 0.0) {
                // Only the borrower itself still holds assets: divert prior
                // loans through it instead of creating a self-exposure. Snapped
                // sub-eps residuals can leave up to n*eps of dust on either side.
                const double needed = residual_liab[b];
                require_numeric(residual_assets[b] >= needed - static_cast<double>(n) * eps,
                                "network inference: infeasible marginals at node ", b);
                reroute_through(a, n, b, needed, eps, rng);
                residual_assets[b] = std::max(0.0, residual_assets[b] - needed);
                residual_liab[b] = 0.0;
                break;
            }

            double pick = rng.next_double() * total_weight;
            std::size_t lender = n;
            for (std::size_t l = 0; l < n; ++l) {
                if (weights[l] <= 0.0)
                    continue;
                pick -= weights[l];
                lender = l;
                if (pick <= 0.0)
                    break;
            }

            const double amount =
                std::min({std::max(chunk_size, eps), residual_liab[b], residual_assets[lender]});
            a[lender * n + b] += amount;
            residual_assets[lender] -= amount;
            residual_liab[b] -= amount;
            if (residual_assets[lender] < eps)
                residual_assets[lender] = 0.0;
        }
        residual_liab[b] = 0.0;
    }

    result.network = ExposureNetwork(n, std::move(a));

    // Conservation must hold to 1e-9 relative on every marginal.
    for (std::size_t i = 0; i < n; ++i) {
        const double row = result.network.row_sum(i);
        const double col = result.network.column_sum(i);
        const double tol = 1e-9 * std::max(1.0, total_assets);
        require_numeric(std::abs(row - marginals.assets[i]) <= tol,
                        "network inference: row sum drift at node ", i);
        require_numeric(std::abs(col - liab[i]) <= tol,
                        "network inference: column sum drift at node ", i);
    }
    return result;
}

std::vector<InferredNetwork> generate_ensemble(const AggregateMarginals& marginals,
                                               const InferenceConfig& config) {
    config.validate();
    std::vector<InferredNetwork> ensemble;
    ensemble.reserve(config.ensemble_size);
    for (std::size_t k = 0; k < config.ensemble_size; ++k) {
        const std::uint64_t sub_seed = derive_seed(config.seed, k);
        try {
            ensemble.push_back(infer_network(marginals, config, sub_seed));
        } catch (const NumericalError& e) {
            detail::fail<NumericalError>("ensemble member ", k, " (seed ", sub_seed,
                                         ") failed: ", e.what());
        }
    }
    return ensemble;
}

} // namespace pdsim
