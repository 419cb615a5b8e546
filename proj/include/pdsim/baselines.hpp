#pragma once

#include "pdsim/model.hpp"

#include <vector>

namespace pdsim {

// Domino cascade: a node defaults once its cumulative received impact
// (external shock plus LGD-weighted exposures to defaulted counterparties)
// exceeds its capital. Terminates in at most N rounds.
struct FurfineResult {
    std::vector<std::uint8_t> defaulted;
    double total_loss = 0.0; // sum of A_i * LGD_i over defaulted nodes
    int rounds = 0;
};

FurfineResult furfine_cascade(const std::vector<BankNode>& banks, const ExposureNetwork& net,
                              const std::vector<double>& shocks);

// Stress-propagation iteration on h_i = fraction of capital lost, h_i = 1
// meaning default. Exposures lose value in proportion to the borrower's
// capital loss; loss accounting is in capital terms.
struct DebtRankResult {
    std::vector<double> h;   // converged (or last) stress per node
    double loss = 0.0;       // sum of h_i * E_i
    int iterations = 0;
    bool converged = false;
    double leverage_spectral_radius = 0.0; // largest |eigenvalue| of a_hat_ij / E_i
};

DebtRankResult gen_debtrank(const std::vector<BankNode>& banks, const ExposureNetwork& net,
                            const std::vector<double>& initial_stress, double tol = 1e-10,
                            int max_iter = 100000);

} // namespace pdsim
