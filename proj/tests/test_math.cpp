#include "pdsim/math.hpp"

#include "pdsim/common.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace pdsim;

TEST_CASE("norm_cdf basics and symmetry") {
    CHECK(norm_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    for (double x : {0.1, 0.7, 1.3, 2.9, 4.5}) {
        CHECK(norm_cdf(x) + norm_cdf(-x) == doctest::Approx(1.0).epsilon(1e-14));
    }
    // 0.975 quantile, reference from high-precision series
    CHECK(std::abs(norm_cdf(1.959963985) - 0.97500000002688156) < 1e-9);
    CHECK(std::abs(norm_cdf(1.959963985) - oracle::norm_cdf_series(1.959963985)) < 1e-13);
    CHECK_THROWS_AS(norm_cdf(std::numeric_limits<double>::quiet_NaN()), ValidationError);
    CHECK_THROWS_AS(norm_cdf(std::numeric_limits<double>::infinity()), ValidationError);
}

TEST_CASE("norm_cdf matches series reference to 1e-12") {
    for (double x = -8.0; x <= 8.0; x += 0.0625) {
        CHECK(std::abs(norm_cdf(x) - oracle::norm_cdf_series(x)) < 1e-12);
    }
    // monotone on a fine grid
    double prev = norm_cdf(-8.0);
    for (double x = -8.0 + 1e-3; x <= 8.0; x += 1e-3) {
        const double cur = norm_cdf(x);
        CHECK(cur >= prev);
        prev = cur;
    }
}

TEST_CASE("norm_inv") {
    CHECK(norm_inv(0.5) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(norm_inv(norm_cdf(1.3)) == doctest::Approx(1.3).epsilon(1e-12));
    // reference: bisection on the series CDF
    const double ref = oracle::bisect([](double x) { return oracle::norm_cdf_series(x); },
                                      -10.0, 0.0, 0.001);
    CHECK(std::abs(norm_inv(0.001) - ref) < 1e-10);
    CHECK(norm_inv(0.001) == doctest::Approx(-3.0902323061678135).epsilon(1e-12));
    CHECK_THROWS_AS(norm_inv(0.0), ValidationError);
    CHECK_THROWS_AS(norm_inv(1.0), ValidationError);
    CHECK_THROWS_AS(norm_inv(-0.2), ValidationError);
}

TEST_CASE("norm_inv / norm_cdf round trips") {
    // p-space identity over the probabilities reached from [-6, 6]
    for (double x = -6.0; x <= 6.0; x += 0.01) {
        const double p = norm_cdf(x);
        CHECK(std::abs(norm_cdf(norm_inv(p)) - p) < 1e-10);
    }
    // x-space identity. Above x ~ 5.2 the probability is so close to 1 that
    // representing it as a double already moves the implied x by up to
    // ~2e-16 / phi(x), which passes 1e-10; assert the strict bound where it
    // is attainable and the representability envelope beyond.
    for (double x = -6.0; x <= 6.0; x += 0.01) {
        const double err = std::abs(norm_inv(norm_cdf(x)) - x);
        const double representable = 2.5e-16 / norm_pdf(x) + 1e-12;
        CHECK(err < std::max(1e-10, x > 0.0 ? representable : 0.0));
    }
    for (double x = -6.0; x <= 5.1; x += 0.01) {
        CHECK(std::abs(norm_inv(norm_cdf(x)) - x) < 1e-10);
    }
    // strictly increasing in p
    double prev = norm_inv(1e-9);
    for (double p = 1e-4; p < 1.0; p += 1e-4) {
        const double cur = norm_inv(p);
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("bivariate_norm_cdf special cases") {
    for (double x : {-1.5, 0.0, 0.8}) {
        for (double y : {-0.7, 0.3, 2.0}) {
            CHECK(bivariate_norm_cdf(x, y, 0.0) ==
                  doctest::Approx(norm_cdf(x) * norm_cdf(y)).epsilon(1e-14));
            CHECK(bivariate_norm_cdf(x, y, 1.0) ==
                  doctest::Approx(norm_cdf(std::min(x, y))).epsilon(1e-14));
            CHECK(bivariate_norm_cdf(x, y, -1.0) ==
                  doctest::Approx(std::max(0.0, norm_cdf(x) + norm_cdf(y) - 1.0)).epsilon(1e-14));
            CHECK(bivariate_norm_cdf(x, y, 0.6) ==
                  doctest::Approx(bivariate_norm_cdf(y, x, 0.6)).epsilon(1e-14));
        }
    }
    // closed form at the origin: 1/4 + asin(rho)/(2 pi)
    for (double rho = -0.9; rho <= 0.9001; rho += 0.1) {
        const double expected = 0.25 + std::asin(rho) / (2.0 * M_PI);
        CHECK(std::abs(bivariate_norm_cdf(0.0, 0.0, rho) - expected) < 1e-9);
    }
    CHECK(bivariate_norm_cdf(0.0, 0.0, 0.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK_THROWS_AS(bivariate_norm_cdf(0.0, 0.0, 1.5), ValidationError);
}

TEST_CASE("bivariate_norm_cdf against quadrature oracle") {
    const double cases[][3] = {
        {-1.0, 0.5, -0.3}, {0.3, -1.2, 0.85}, {-3.0902323061678135, -3.0902323061678135, 0.5},
        {2.0, 2.0, 0.95},  {0.0, -2.0, 0.99}, {-0.5, -0.5, -0.95},
    };
    for (const auto& c : cases) {
        const double got = bivariate_norm_cdf(c[0], c[1], c[2]);
        const double ref = oracle::bivariate_norm_cdf_quadrature(c[0], c[1], c[2]);
        CHECK(std::abs(got - ref) < 1e-9);
    }
    // reference values (independent high-precision computation)
    CHECK(std::abs(bivariate_norm_cdf(-1.0, 0.5, -0.3) - 0.082153783474017526) < 1e-12);
    CHECK(std::abs(bivariate_norm_cdf(0.3, -1.2, 0.85) - 0.11488042099614523) < 1e-12);
}

TEST_CASE("bivariate_norm_cdf Frechet bounds and monotonicity") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> ux(-3.0, 3.0);
    std::uniform_real_distribution<double> ur(-0.999, 0.999);
    for (int i = 0; i < 500; ++i) {
        const double x = ux(gen), y = ux(gen), rho = ur(gen);
        const double v = bivariate_norm_cdf(x, y, rho);
        const double lo = std::max(0.0, norm_cdf(x) + norm_cdf(y) - 1.0);
        const double hi = std::min(norm_cdf(x), norm_cdf(y));
        CHECK(v >= lo - 1e-12);
        CHECK(v <= hi + 1e-12);
        // nondecreasing in each argument and in rho
        CHECK(bivariate_norm_cdf(x + 0.1, y, rho) >= v - 1e-12);
        CHECK(bivariate_norm_cdf(x, y + 0.1, rho) >= v - 1e-12);
        if (rho < 0.99)
            CHECK(bivariate_norm_cdf(x, y, rho + 0.009) >= v - 1e-12);
    }
}

TEST_CASE("cholesky_lower") {
    const auto id = cholesky_lower(CorrelationMatrix::identity(3));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(id[i * 3 + j] == doctest::Approx(i == j ? 1.0 : 0.0));

    const double rho = 0.43;
    const auto two = cholesky_lower(CorrelationMatrix::uniform(2, rho));
    CHECK(two[0] == doctest::Approx(1.0));
    CHECK(two[1] == doctest::Approx(0.0));
    CHECK(two[2] == doctest::Approx(rho));
    CHECK(two[3] == doctest::Approx(std::sqrt(1.0 - rho * rho)));
}

TEST_CASE("cholesky_lower round trip on random valid matrices") {
    std::mt19937_64 gen(11);
    std::normal_distribution<double> nd;
    for (int rep = 0; rep < 20; ++rep) {
        // random factor -> normalized Gram matrix is a valid correlation matrix
        const std::size_t n = 5;
        std::vector<double> f(n * n);
        for (auto& v : f)
            v = nd(gen);
        std::vector<double> a(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    a[i * n + j] += f[i * n + k] * f[j * n + k];
        std::vector<double> scale(n);
        for (std::size_t i = 0; i < n; ++i)
            scale[i] = std::sqrt(a[i * n + i]);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                a[i * n + j] /= scale[i] * scale[j];
        for (std::size_t i = 0; i < n; ++i)
            a[i * n + i] = 1.0;
        // enforce exact symmetry after normalization noise
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j)
                a[j * n + i] = a[i * n + j];

        CorrelationMatrix corr(n, a);
        const auto L = cholesky_lower(corr);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                double s = 0.0;
                for (std::size_t k = 0; k < n; ++k)
                    s += L[i * n + k] * L[j * n + k];
                CHECK(std::abs(s - corr(i, j)) < 1e-10);
            }
        }
    }
}

TEST_CASE("cholesky rejects non-PSD") {
    // rho = -0.9 uniform on 3 nodes is not PSD (needs rho >= -0.5)
    std::vector<double> bad{1.0, -0.9, -0.9, -0.9, 1.0, -0.9, -0.9, -0.9, 1.0};
    CHECK_THROWS_AS(CorrelationMatrix(3, bad), NumericalError);
    CHECK_THROWS_AS(CorrelationMatrix::uniform(3, -0.9), ValidationError);
}

TEST_CASE("correlation matrix validation") {
    std::vector<double> asym{1.0, 0.2, 0.3, 1.0};
    CHECK_THROWS_AS(CorrelationMatrix(2, asym), ValidationError);
    std::vector<double> diag{0.9, 0.2, 0.2, 1.0};
    CHECK_THROWS_AS(CorrelationMatrix(2, diag), ValidationError);

    const auto u = CorrelationMatrix::uniform(4, 0.5);
    const auto sub = u.submatrix({0, 2, 3});
    CHECK(sub.size() == 3);
    CHECK(sub(0, 1) == 0.5);
    CHECK(sub(1, 1) == 1.0);
}

TEST_CASE("implied_double_default_pd") {
    CHECK(implied_double_default_pd(0.01, 0.03, 0.0) == doctest::Approx(0.0003).epsilon(1e-10));
    CHECK(implied_double_default_pd(0.001, 0.001, 1.0) == doctest::Approx(0.001).epsilon(1e-10));
    const double v = implied_double_default_pd(0.001, 0.001, 0.5);
    const double ref = oracle::bivariate_norm_cdf_quadrature(
        norm_inv(0.001), norm_inv(0.001), 0.5);
    CHECK(std::abs(v - ref) < 1e-9);
    CHECK(std::abs(v - 5.4259168194567104e-05) < 1e-12);
    CHECK(v <= 0.001);
}

TEST_CASE("default_correlation") {
    CHECK(default_correlation(0.02, 0.05, 0.001) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(default_correlation(0.01, 0.01, 0.01) == doctest::Approx(1.0).epsilon(1e-12));
    const double pdd = implied_double_default_pd(0.001, 0.001, 0.5);
    const double dc = default_correlation(0.001, 0.001, pdd);
    CHECK(dc > 0.0);
    CHECK(dc < 0.5);
    CHECK(dc == doctest::Approx(0.053312480675242346).epsilon(1e-9));
    CHECK_THROWS_AS(default_correlation(0.0, 0.5, 0.0), ValidationError);
    CHECK_THROWS_AS(default_correlation(1.0, 0.5, 0.5), ValidationError);
}

TEST_CASE("merton_pd") {
    // A = B with mu = 0.5 sigma^2 makes the argument zero
    CHECK(merton_pd({100.0, 100.0, 0.5 * 0.04, 0.2, 1.0}) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(merton_pd({1e9, 1.0, 0.0, 0.2, 1.0}) == doctest::Approx(0.0).epsilon(1e-12));
    // calibrated forward value
    CHECK(merton_pd({200.0, 150.0, 0.0, 0.091732472233544745, 1.0}) ==
          doctest::Approx(0.001).epsilon(1e-9));
    CHECK_THROWS_AS(merton_pd({-1.0, 1.0, 0.0, 0.2, 1.0}), ValidationError);
    CHECK_THROWS_AS(merton_pd({1.0, 1.0, 0.0, -0.2, 1.0}), ValidationError);
}

TEST_CASE("merton_sigma") {
    const double s = merton_sigma(200.0, 50.0, 0.001);
    CHECK(s == doctest::Approx(0.0917324722335447).epsilon(1e-10));
    CHECK(merton_pd({200.0, 150.0, 0.0, s, 1.0}) == doctest::Approx(0.001).epsilon(1e-10));
    // independent check: bisection on merton_pd over sigma
    const double ref = oracle::bisect(
        [](double sig) { return merton_pd({200.0, 150.0, 0.0, sig, 1.0}); }, 1e-8, 2.0, 0.001);
    CHECK(std::abs(s - ref) < 1e-10);
    // capital -> 0 sends sigma -> 0
    CHECK(merton_sigma(200.0, 1e-9, 0.001) < 1e-10);
    CHECK_THROWS_AS(merton_sigma(200.0, 250.0, 0.001), ValidationError);
}

TEST_CASE("merton_sigma / merton_pd identity over a parameter grid") {
    for (double pd0 : {1e-4, 1e-3, 1e-2, 0.05, 0.1, 0.2}) {
        for (double ea : {0.01, 0.03, 0.1, 0.25, 0.5}) {
            const double A = 100.0;
            const double E = A * ea;
            const double s = merton_sigma(A, E, pd0);
            CHECK(std::abs(merton_pd({A, A - E, 0.0, s, 1.0}) - pd0) < 1e-10);
        }
    }
}

TEST_CASE("cholesky-driven gaussian pairs reproduce the input correlation") {
    const double rho = 0.37;
    const auto L = cholesky_lower(CorrelationMatrix::uniform(2, rho));
    std::mt19937_64 gen(123);
    std::normal_distribution<double> nd;
    const int n = 1'000'000;
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        const double z0 = nd(gen), z1 = nd(gen);
        const double x = L[0] * z0;
        const double y = L[2] * z0 + L[3] * z1;
        sx += x;
        sy += y;
        sxx += x * x;
        syy += y * y;
        sxy += x * y;
    }
    const double mx = sx / n, my = sy / n;
    const double corr = (sxy / n - mx * my) /
                        std::sqrt((sxx / n - mx * mx) * (syy / n - my * my));
    CHECK(std::abs(corr - rho) < 0.01);
}
