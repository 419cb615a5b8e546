#pragma once

#include "pdsim/model.hpp"

#include <cstdint>
#include <vector>

namespace pdsim {

// Aggregate interbank positions per node: row sums (lending) and column sums
// (borrowing) that the reconstructed bilateral matrix must reproduce.
struct AggregateMarginals {
    std::vector<double> assets;
    std::vector<double> liabilities;

    void validate() const;
};

struct InferenceConfig {
    double alpha = 1.0;            // attraction exponent for lender choice
    double min_loan_fraction = 0.05; // loan chunk as share of borrower's total liabilities
    std::size_t ensemble_size = 10;
    std::uint64_t seed = 0;

    void validate() const;
};

struct InferredNetwork {
    ExposureNetwork network;
    double liability_scale = 1.0; // factor applied to balance global sums
    std::uint64_t seed = 0;       // sub-seed that produced this member
};

// Sequential matching: borrowers in ascending liability order draw loans of
// min_loan_fraction x their total liabilities from lenders sampled with
// probability proportional to residual assets^alpha, with a final re-routing
// step that keeps the diagonal at zero. Row and column sums reproduce the
// marginals within 1e-9 relative.
InferredNetwork infer_network(const AggregateMarginals& marginals, const InferenceConfig& config,
                              std::uint64_t seed);

// ensemble_size independent members from sub-seeds derived off config.seed.
std::vector<InferredNetwork> generate_ensemble(const AggregateMarginals& marginals,
                                               const InferenceConfig& config);

} // namespace pdsim
