#include "pdsim/math.hpp"

#include "pdsim/common.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pdsim {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;
constexpr double kTwoPi = 6.2831853071795864769;

// Acklam's rational approximation for the normal quantile (~1.15e-9 relative
// before polishing).
double norm_inv_approx(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - p_low) {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

} // namespace

double norm_pdf(double x) {
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double norm_cdf(double x) {
    require(std::isfinite(x), "norm_cdf: non-finite input");
    return 0.5 * std::erfc(-x / kSqrt2);
}

double norm_inv(double p) {
    require(std::isfinite(p) && p > 0.0 && p < 1.0, "norm_inv: p must lie in (0,1), got ", p);
    double x = norm_inv_approx(p);
    const double density = norm_pdf(x);
    if (density > 1e-280)
        x -= (norm_cdf(x) - p) / density;
    return x;
}

double bivariate_norm_cdf(double x, double y, double rho) {
    require(std::isfinite(x) && std::isfinite(y), "bivariate_norm_cdf: non-finite argument");
    require(std::abs(rho) <= 1.0, "bivariate_norm_cdf: |rho| must be <= 1, got ", rho);

    if (rho == 0.0)
        return norm_cdf(x) * norm_cdf(y);
    if (rho >= 1.0)
        return norm_cdf(std::min(x, y));
    if (rho <= -1.0) {
        // Countermonotone: P(X<=x, -X<=y) = max(0, Phi(x) + Phi(y) - 1).
        return std::max(0.0, norm_cdf(x) + norm_cdf(y) - 1.0);
    }

    // Tetrachoric expansion: Phi2 = Phi(x)Phi(y) + (1/2pi) * integral over
    // theta in [0, asin(rho)] of exp((x*y*sin(theta) - (x^2+y^2)/2)/cos^2(theta)).
    // The integrand is smooth on the whole range, including rho -> +-1.
    static const double nodes[] = { // 24-point Gauss-Legendre on [-1, 1]
        -0.9951872199970213, -0.9747285559713095, -0.9382745520027328,
        -0.8864155270044010, -0.8200019859739029, -0.7401241915785544,
        -0.6480936519369755, -0.5454214713888396, -0.4337935076260451,
        -0.3150426796961634, -0.1911188674736163, -0.0640568928626056,
        0.0640568928626056,  0.1911188674736163,  0.3150426796961634,
        0.4337935076260451,  0.5454214713888396,  0.6480936519369755,
        0.7401241915785544,  0.8200019859739029,  0.8864155270044010,
        0.9382745520027328,  0.9747285559713095,  0.9951872199970213};
    static const double weights[] = {
        0.0123412297999871, 0.0285313886289337, 0.0442774388174196,
        0.0592985849154367, 0.0733464814110804, 0.0861901615319533,
        0.0976186521041141, 0.1074442701159656, 0.1155056680537256,
        0.1216704729278034, 0.1258374563468283, 0.1279381953467522,
        0.1279381953467522, 0.1258374563468283, 0.1216704729278034,
        0.1155056680537256, 0.1074442701159656, 0.0976186521041141,
        0.0861901615319533, 0.0733464814110804, 0.0592985849154367,
        0.0442774388174196, 0.0285313886289337, 0.0123412297999871};

    const double theta_max = std::asin(rho);
    const double hs = 0.5 * (x * x + y * y);
    const double xy = x * y;

    // One panel suffices away from |rho| ~ 1; subdivide as the boundary layer
    // near theta = +-pi/2 sharpens.
    const int panels = std::abs(rho) < 0.925 ? 1 : 3;
    double integral = 0.0;
    for (int panel = 0; panel < panels; ++panel) {
        const double lo = theta_max * panel / panels;
        const double hi = theta_max * (panel + 1) / panels;
        const double mid = 0.5 * (lo + hi);
        const double half = 0.5 * (hi - lo);
        double sum = 0.0;
        for (int k = 0; k < 24; ++k) {
            const double theta = mid + half * nodes[k];
            const double s = std::sin(theta);
            const double c2 = 1.0 - s * s;
            sum += weights[k] * std::exp((xy * s - hs) / c2);
        }
        integral += half * sum;
    }

    const double result = norm_cdf(x) * norm_cdf(y) + integral / kTwoPi;
    return std::clamp(result, 0.0, 1.0);
}

CorrelationMatrix::CorrelationMatrix(std::size_t n, std::vector<double> entries) {
    require(n >= 1, "CorrelationMatrix: size must be positive");
    require(entries.size() == n * n, "CorrelationMatrix: expected ", n * n, " entries, got ",
            entries.size());
    for (std::size_t i = 0; i < n; ++i) {
        require(entries[i * n + i] == 1.0, "CorrelationMatrix: diagonal entry (", i, ",", i,
                ") must be exactly 1");
        for (std::size_t j = 0; j < i; ++j) {
            const double e = entries[i * n + j];
            require(std::abs(e) <= 1.0, "CorrelationMatrix: entry (", i, ",", j,
                    ") out of [-1,1]: ", e);
            require(std::abs(e - entries[j * n + i]) <= 1e-12,
                    "CorrelationMatrix: asymmetric at (", i, ",", j, ")");
        }
    }
    n_ = n;
    entries_ = std::move(entries);
    cholesky_lower(*this); // rejects non-PSD input
}

CorrelationMatrix CorrelationMatrix::identity(std::size_t n) {
    std::vector<double> e(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        e[i * n + i] = 1.0;
    CorrelationMatrix m;
    m.n_ = n;
    m.entries_ = std::move(e);
    return m;
}

CorrelationMatrix CorrelationMatrix::uniform(std::size_t n, double rho) {
    require(n >= 1, "CorrelationMatrix: size must be positive");
    require(std::abs(rho) <= 1.0, "uniform correlation out of [-1,1]: ", rho);
    if (n > 1)
        require(rho >= -1.0 / static_cast<double>(n - 1), "uniform rho ", rho,
                " is not PSD for n = ", n);
    std::vector<double> e(n * n, rho);
    for (std::size_t i = 0; i < n; ++i)
        e[i * n + i] = 1.0;
    CorrelationMatrix m;
    m.n_ = n;
    m.entries_ = std::move(e);
    return m;
}

CorrelationMatrix CorrelationMatrix::submatrix(const std::vector<std::size_t>& keep) const {
    const std::size_t k = keep.size();
    require(k >= 1, "submatrix: empty index set");
    std::vector<double> e(k * k);
    for (std::size_t i = 0; i < k; ++i) {
        require(keep[i] < n_, "submatrix: index out of range");
        for (std::size_t j = 0; j < k; ++j)
            e[i * k + j] = (*this)(keep[i], keep[j]);
    }
    CorrelationMatrix m;
    m.n_ = k;
    m.entries_ = std::move(e);
    return m;
}

std::vector<double> cholesky_lower(std::size_t n, const std::vector<double>& a) {
    constexpr double kPivotTol = 1e-10;
    std::vector<double> L(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double d = a[j * n + j];
        for (std::size_t k = 0; k < j; ++k)
            d -= L[j * n + k] * L[j * n + k];
        require_numeric(d >= -kPivotTol, "cholesky: matrix not PSD, pivot ", j, " = ", d);
        const double diag = std::sqrt(std::max(d, 0.0));
        L[j * n + j] = diag;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a[i * n + j];
            for (std::size_t k = 0; k < j; ++k)
                s -= L[i * n + k] * L[j * n + k];
            if (diag > 0.0) {
                L[i * n + j] = s / diag;
            } else {
                // Semidefinite column: the remainder must vanish.
                require_numeric(std::abs(s) <= kPivotTol,
                                "cholesky: matrix not PSD, zero pivot ", j,
                                " with nonzero column entry");
                L[i * n + j] = 0.0;
            }
        }
    }
    return L;
}

std::vector<double> cholesky_lower(const CorrelationMatrix& corr) {
    const std::size_t n = corr.size();
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a[i * n + j] = corr(i, j);
    return cholesky_lower(n, a);
}

double implied_double_default_pd(double pd_i, double pd_j, double rho) {
    require(pd_i > 0.0 && pd_i < 1.0, "implied_double_default_pd: pd_i out of (0,1): ", pd_i);
    require(pd_j > 0.0 && pd_j < 1.0, "implied_double_default_pd: pd_j out of (0,1): ", pd_j);
    return bivariate_norm_cdf(norm_inv(pd_i), norm_inv(pd_j), rho);
}

double default_correlation(double pd_i, double pd_j, double pd_ij) {
    require(pd_i > 0.0 && pd_i < 1.0 && pd_j > 0.0 && pd_j < 1.0,
            "default_correlation: degenerate marginal");
    require(pd_ij >= 0.0 && pd_ij <= std::min(pd_i, pd_j) + 1e-15,
            "default_correlation: pd_ij must not exceed min(pd_i, pd_j)");
    return (pd_ij - pd_i * pd_j) / std::sqrt(pd_i * (1.0 - pd_i) * pd_j * (1.0 - pd_j));
}

double merton_pd(const MertonParams& p) {
    require(p.asset > 0.0, "merton_pd: asset must be positive");
    require(p.liability > 0.0, "merton_pd: liability must be positive");
    require(p.sigma > 0.0, "merton_pd: sigma must be positive");
    require(p.dt > 0.0, "merton_pd: dt must be positive");
    const double num = std::log(p.asset) - std::log(p.liability) +
                       (p.drift - 0.5 * p.sigma * p.sigma) * p.dt;
    return 1.0 - norm_cdf(num / (p.sigma * std::sqrt(p.dt)));
}

double merton_sigma(double asset, double capital, double pd0) {
    require(asset > 0.0 && capital > 0.0 && capital < asset,
            "merton_sigma: need 0 < capital < asset (A=", asset, ", E=", capital, ")");
    require(pd0 > 0.0 && pd0 < 1.0, "merton_sigma: pd0 out of (0,1): ", pd0);
    const double z = norm_inv(1.0 - pd0);
    const double disc = z * z + 2.0 * std::log(asset / (asset - capital));
    require_numeric(disc >= 0.0, "merton_sigma: no real volatility for pd0 = ", pd0);
    const double sigma = -z + std::sqrt(disc);
    require_numeric(sigma > 0.0, "merton_sigma: no positive volatility for pd0 = ", pd0);
    return sigma;
}

} // namespace pdsim
