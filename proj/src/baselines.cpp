#include "pdsim/baselines.hpp"

#include "pdsim/common.hpp"

#include <algorithm>
#include <cmath>

namespace pdsim {

FurfineResult furfine_cascade(const std::vector<BankNode>& banks, const ExposureNetwork& net,
                              const std::vector<double>& shocks) {
    validate_banks(banks);
    const std::size_t n = banks.size();
    require(net.size() == n, "furfine_cascade: network size mismatch");
    require(shocks.size() == n, "furfine_cascade: shock vector size mismatch");
    for (double s : shocks)
        require(std::isfinite(s) && s >= 0.0, "furfine_cascade: shocks must be nonnegative");

    FurfineResult result;
    result.defaulted.assign(n, 0);
    std::vector<double> received = shocks;

    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::size_t> fresh;
        for (std::size_t i = 0; i < n; ++i) {
            if (!result.defaulted[i] && received[i] > banks[i].capital) {
                result.defaulted[i] = 1;
                fresh.push_back(i);
            }
        }
        if (fresh.empty())
            break;
        changed = true;
        ++result.rounds;
        for (std::size_t j : fresh) {
            result.total_loss += banks[j].total_asset * banks[j].lgd;
            for (std::size_t i = 0; i < n; ++i)
                if (!result.defaulted[i])
                    received[i] += net(i, j) * banks[j].lgd;
        }
    }
    return result;
}

DebtRankResult gen_debtrank(const std::vector<BankNode>& banks, const ExposureNetwork& net,
                            const std::vector<double>& initial_stress, double tol, int max_iter) {
    validate_banks(banks);
    const std::size_t n = banks.size();
    require(net.size() == n, "gen_debtrank: network size mismatch");
    require(initial_stress.size() == n, "gen_debtrank: stress vector size mismatch");
    require(tol > 0.0, "gen_debtrank: tolerance must be positive");
    require(max_iter >= 1, "gen_debtrank: max_iter must be >= 1");
    for (double s : initial_stress)
        require(std::isfinite(s) && s >= 0.0 && s <= 1.0,
                "gen_debtrank: initial stress must lie in [0,1]");

    // Interbank leverage a_hat_ij / E_i; its spectral radius controls whether
    // arbitrarily small shocks blow up.
    std::vector<double> leverage(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            leverage[i * n + j] = net(i, j) * banks[j].lgd / banks[i].capital;

    DebtRankResult result;
    {
        // Power iteration; adequate for a diagnostic.
        std::vector<double> v(n, 1.0), w(n);
        double radius = 0.0;
        for (int it = 0; it < 200; ++it) {
            double norm = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double acc = 0.0;
                for (std::size_t j = 0; j < n; ++j)
                    acc += leverage[i * n + j] * v[j];
                w[i] = acc;
                norm = std::max(norm, std::abs(acc));
            }
            if (norm == 0.0) {
                radius = 0.0;
                break;
            }
            for (auto& x : w)
                x /= norm;
            v.swap(w);
            radius = norm;
        }
        result.leverage_spectral_radius = radius;
    }

    std::vector<double> h_prev(n, 0.0);
    std::vector<double> h = initial_stress;
    std::vector<double> h_next(n);

    for (int it = 0; it < max_iter; ++it) {
        double max_delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double acc = h[i];
            if (h[i] < 1.0) {
                for (std::size_t j = 0; j < n; ++j)
                    acc += leverage[i * n + j] * (h[j] - h_prev[j]);
            }
            h_next[i] = std::min(1.0, acc);
            max_delta = std::max(max_delta, h_next[i] - h[i]);
        }
        h_prev = h;
        h = h_next;
        result.iterations = it + 1;
        if (max_delta < tol) {
            result.converged = true;
            break;
        }
    }

    result.h = h;
    result.loss = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        result.loss += h[i] * banks[i].capital;
    return result;
}

} // namespace pdsim
