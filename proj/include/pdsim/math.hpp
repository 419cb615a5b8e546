#pragma once

#include <cstddef>
#include <vector>

namespace pdsim {

// Standard normal density.
double norm_pdf(double x);

// Standard normal CDF, absolute error below 1e-14.
double norm_cdf(double x);

// Inverse standard normal CDF on (0,1). Rational approximation polished with
// one Newton step on norm_cdf; round-trips within 1e-10 over [-6, 6].
double norm_inv(double p);

// Bivariate standard normal CDF P(X <= x, Y <= y) with correlation rho.
// Gauss-Legendre quadrature of the tetrachoric integral; |rho| = 1 and
// rho = 0 are handled analytically.
double bivariate_norm_cdf(double x, double y, double rho);

// Symmetric PSD matrix with unit diagonal. Construction validates the
// invariants; prefer the named factories.
class CorrelationMatrix {
  public:
    // Validates symmetry (1e-12), unit diagonal, entry range and positive
    // semi-definiteness (via Cholesky with pivot tolerance 1e-10).
    explicit CorrelationMatrix(std::size_t n, std::vector<double> entries);

    static CorrelationMatrix identity(std::size_t n);
    // Uniform off-diagonal rho; valid for rho in (-1/(n-1), 1].
    static CorrelationMatrix uniform(std::size_t n, double rho);

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

    // Principal submatrix on the kept indices (ascending).
    CorrelationMatrix submatrix(const std::vector<std::size_t>& keep) const;

  private:
    CorrelationMatrix() = default;
    std::size_t n_ = 0;
    std::vector<double> entries_;
};

// Lower-triangular L with L L^T = corr, row-major n x n. Throws
// NumericalError naming the failing pivot if the matrix is not PSD within
// tolerance 1e-10.
std::vector<double> cholesky_lower(const CorrelationMatrix& corr);

// Raw variant used where a full CorrelationMatrix would be re-validated per
// call; `a` is row-major symmetric n x n.
std::vector<double> cholesky_lower(std::size_t n, const std::vector<double>& a);

// P(both i and j default) under the Gaussian latent variable model.
double implied_double_default_pd(double pd_i, double pd_j, double rho);

// Correlation of the default indicators implied by the joint probability.
double default_correlation(double pd_i, double pd_j, double pd_ij);

struct MertonParams {
    double asset;      // A > 0
    double liability;  // B > 0, = A - E at t=0
    double drift = 0.0;
    double sigma;      // > 0
    double dt = 1.0;   // years
};

// P(A(t+dt) < B) for lognormal assets.
double merton_pd(const MertonParams& p);

// Asset volatility such that merton_pd(A, A-E, mu=0, sigma, dt=1) = pd0.
double merton_sigma(double asset, double capital, double pd0);

} // namespace pdsim
