#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include "lsgs/errors.hpp"
#include "lsgs/kernel.hpp"
#include "lsgs/sampler.hpp"

using namespace lsgs;

namespace {

// Spec fixture: eta, sigma=1, lambda=1e-3. Expected r frozen from an
// independent high-precision solve of (K + lambda I) a = eta, r = K a.
const std::vector<double> kGoldenEta = {0.00, 0.05, 0.10, 0.20, 0.40, 0.65, 0.90};
const std::vector<double> kGoldenR = {
    0.006778022171409006, 0.050695825415036175, 0.096483029622309174, 0.19293244192039228,
    0.39922127247966609,  0.66072088894075662,  0.89248371539719436,
};

// Test-side oracle: dense Gauss-Jordan solve with partial pivoting, then an
// explicit multiply. Shares no code with the library solver.
std::vector<double> gauss_jordan_reference(const std::vector<double>& eta, double sigma,
                                           double lambda) {
    const std::size_t n = eta.size();
    std::vector<std::vector<double>> aug(n, std::vector<double>(n + 1, 0.0));
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            const double d = eta[p] - eta[q];
            aug[p][q] = std::exp(-d * d / (2.0 * sigma * sigma));
        }
        aug[p][p] += lambda;
        aug[p][n] = eta[p];
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < n; ++row) {
            if (std::abs(aug[row][col]) > std::abs(aug[pivot][col])) pivot = row;
        }
        std::swap(aug[col], aug[pivot]);
        const double scale = aug[col][col];
        for (std::size_t j = col; j <= n; ++j) aug[col][j] /= scale;
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col) continue;
            const double factor = aug[row][col];
            for (std::size_t j = col; j <= n; ++j) aug[row][j] -= factor * aug[col][j];
        }
    }
    std::vector<double> r(n, 0.0);
    for (std::size_t p = 0; p < n; ++p) {
        double sum = 0.0;
        for (std::size_t q = 0; q < n; ++q) {
            const double d = eta[p] - eta[q];
            sum += std::exp(-d * d / (2.0 * sigma * sigma)) * aug[q][n];
        }
        r[p] = sum;
    }
    return r;
}

double max_abs_difference(std::span<const double> a, std::span<const double> b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

std::vector<double> random_eta(SplitMix64& rng, std::size_t n) {
    std::vector<double> eta(n);
    for (double& v : eta) v = rng.next_unit();
    return eta;
}

} // namespace

TEST_CASE("rbf_kernel basic values and symmetry") {
    CHECK(rbf_kernel(0.37, 0.37, 1.0) == 1.0);
    CHECK(rbf_kernel(0.0, 1.0, 1.0) == doctest::Approx(0.6065306597126334).epsilon(1e-15));
    SplitMix64 rng(4);
    for (int i = 0; i < 100; ++i) {
        const double a = rng.next_unit() * 4.0 - 2.0;
        const double b = rng.next_unit() * 4.0 - 2.0;
        const double s = rng.next_unit() * 3.0 + 0.1;
        CHECK(rbf_kernel(a, b, s) == rbf_kernel(b, a, s));
        CHECK(rbf_kernel(a, b, s) > 0.0);
        CHECK(rbf_kernel(a, b, s) <= 1.0);
    }
    CHECK_THROWS_AS(rbf_kernel(0.0, 1.0, 0.0), ConfigError);
    CHECK_THROWS_AS(rbf_kernel(0.0, 1.0, -1.0), ConfigError);
}

TEST_CASE("constant descriptors give the rank-one ones matrix") {
    const std::vector<double> eta(7, 0.4);
    const KernelSystem system = build_gram(eta, KernelConfig{});
    for (std::size_t p = 0; p < 7; ++p) {
        for (std::size_t q = 0; q < 7; ++q) {
            CHECK(system.gram(p, q) == 1.0);
        }
    }
    CHECK(system.eigenvalues[0] == doctest::Approx(7.0).epsilon(1e-12));
    for (std::size_t j = 1; j < 7; ++j) {
        CHECK(std::abs(system.eigenvalues[j]) <= 1e-10);
    }
}

TEST_CASE("single-descriptor system is the identity") {
    const std::vector<double> eta = {0.3};
    const KernelSystem system = build_gram(eta, KernelConfig{});
    CHECK(system.gram(0, 0) == 1.0);
    CHECK(system.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("two-descriptor eigenvalues match the closed form") {
    const std::vector<double> eta = {0.0, 1.0};
    const KernelSystem system = build_gram(eta, KernelConfig{});
    const double c = std::exp(-0.5);
    CHECK(system.gram(0, 1) == doctest::Approx(c).epsilon(1e-15));
    CHECK(system.eigenvalues[0] == doctest::Approx(1.0 + c).epsilon(1e-14));
    CHECK(system.eigenvalues[1] == doctest::Approx(1.0 - c).epsilon(1e-14));
}

TEST_CASE("eigendecomposition satisfies orthonormality and reconstruction bounds") {
    SplitMix64 rng(1234);
    for (int trial = 0; trial < 25; ++trial) {
        const std::vector<double> eta = random_eta(rng, 7);
        const KernelSystem system = build_gram(eta, KernelConfig{});
        const std::size_t n = 7;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                double dot = 0.0;
                double recon = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    dot += system.eigenvectors(k, i) * system.eigenvectors(k, j);
                    recon += system.eigenvectors(i, k) * system.eigenvalues[k] *
                             system.eigenvectors(j, k);
                }
                CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) <= 1e-10);
                CHECK(std::abs(recon - system.gram(i, j)) <= 1e-9);
            }
        }
        CHECK(system.eigenvalues.back() >= -1e-10);
        CHECK(std::is_sorted(system.eigenvalues.rbegin(), system.eigenvalues.rend()));
    }
}

TEST_CASE("gram is invariant under descriptor translation") {
    // dyadic descriptors and shift: the additions are exact, so the grams match bitwise
    const std::vector<double> eta = {0.0, 0.25, 0.5, 1.25, 2.0};
    std::vector<double> shifted = eta;
    for (double& v : shifted) v += 4.0;
    const KernelSystem base = build_gram(eta, KernelConfig{});
    const KernelSystem moved = build_gram(shifted, KernelConfig{});
    for (std::size_t p = 0; p < eta.size(); ++p) {
        for (std::size_t q = 0; q < eta.size(); ++q) {
            CHECK(base.gram(p, q) == moved.gram(p, q));
        }
    }
}

TEST_CASE("smooth_direct maps zero scores to zero") {
    const KernelSystem system = build_gram(kGoldenEta, KernelConfig{});
    const std::vector<double> zeros(7, 0.0);
    const ScoreVector result = smooth_direct(system, zeros, 1e-3);
    for (double v : result.r) CHECK(v == 0.0);
    for (double v : result.coefficients) CHECK(v == 0.0);
}

TEST_CASE("scalar smoothing matches v/(1+lambda)") {
    const std::vector<double> eta = {0.7};
    const KernelSystem system = build_gram(eta, KernelConfig{});
    const double lambda = 0.25;
    const ScoreVector result = smooth_direct(system, std::vector<double>{0.7}, lambda);
    CHECK(result.r[0] == doctest::Approx(0.7 / 1.25).epsilon(1e-15));
}

TEST_CASE("golden fixture: direct solve matches the frozen oracle vector") {
    const KernelSystem system = build_gram(kGoldenEta, KernelConfig{1.0, 1e-3});
    const ScoreVector direct = smooth_direct(system, kGoldenEta, 1e-3);
    CHECK(max_abs_difference(direct.r, kGoldenR) <= 1e-12);

    const std::vector<double> reference = gauss_jordan_reference(kGoldenEta, 1.0, 1e-3);
    CHECK(max_abs_difference(direct.r, reference) <= 1e-9);
    CHECK(max_abs_difference(reference, kGoldenR) <= 1e-12);

    // r = gram * coefficients by construction
    for (std::size_t i = 0; i < 7; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < 7; ++j) sum += system.gram(i, j) * direct.coefficients[j];
        CHECK(std::abs(sum - direct.r[i]) <= 1e-12);
    }
}

TEST_CASE("golden fixture: spectral filter agrees with the direct solve") {
    const KernelSystem system = build_gram(kGoldenEta, KernelConfig{1.0, 1e-3});
    const ScoreVector direct = smooth_direct(system, kGoldenEta, 1e-3);
    const ScoreVector spectral = smooth_spectral(system, kGoldenEta, 1e-3);
    CHECK(max_abs_difference(direct.r, spectral.r) <= 1e-9);
    CHECK(max_abs_difference(spectral.r, kGoldenR) <= 1e-9);
}

TEST_CASE("spectral filter factors lie in [0, 1)") {
    SplitMix64 rng(99);
    const std::vector<double> eta = random_eta(rng, 7);
    const KernelSystem system = build_gram(eta, KernelConfig{});
    for (double lambda : {1e-6, 1e-3, 1.0}) {
        for (double eigenvalue : system.eigenvalues) {
            const double clamped = std::max(eigenvalue, 0.0);
            const double factor = clamped / (clamped + lambda);
            CHECK(factor >= 0.0);
            CHECK(factor < 1.0);
        }
    }
}

TEST_CASE("score aligned with one eigenvector is scaled by its filter factor") {
    const KernelSystem system = build_gram(kGoldenEta, KernelConfig{});
    for (std::size_t j : {std::size_t{0}, std::size_t{3}}) {
        std::vector<double> aligned(7);
        for (std::size_t i = 0; i < 7; ++i) aligned[i] = system.eigenvectors(i, j);
        const double lambda = 1e-3;
        const ScoreVector result = smooth_spectral(system, aligned, lambda);
        const double factor = system.eigenvalues[j] / (system.eigenvalues[j] + lambda);
        for (std::size_t i = 0; i < 7; ++i) {
            CHECK(result.r[i] == doctest::Approx(factor * aligned[i]).epsilon(1e-10));
        }
    }
}

TEST_CASE("direct and spectral paths agree across random systems") {
    SplitMix64 rng(2024);
    const std::array<double, 3> sigmas = {0.25, 1.0, 4.0};
    const std::array<double, 3> lambdas = {1e-6, 1e-3, 1.0};
    for (int trial = 0; trial < 50; ++trial) {
        const std::vector<double> eta = random_eta(rng, 7);
        const double sigma = sigmas[trial % sigmas.size()];
        const double lambda = lambdas[(trial / 3) % lambdas.size()];
        const KernelSystem system = build_gram(eta, KernelConfig{sigma, lambda});
        const ScoreVector direct = smooth_direct(system, eta, lambda);
        const ScoreVector spectral = smooth_spectral(system, eta, lambda);
        CHECK(max_abs_difference(direct.r, spectral.r) <= 1e-8);
    }
}

TEST_CASE("smoothing shrinks the score norm") {
    SplitMix64 rng(555);
    for (int trial = 0; trial < 30; ++trial) {
        const std::vector<double> eta = random_eta(rng, 7);
        const KernelSystem system = build_gram(eta, KernelConfig{});
        const ScoreVector result = smooth_direct(system, eta, 1e-3);
        const double r_norm = std::sqrt(
            std::inner_product(result.r.begin(), result.r.end(), result.r.begin(), 0.0));
        const double nu_norm =
            std::sqrt(std::inner_product(eta.begin(), eta.end(), eta.begin(), 0.0));
        CHECK(r_norm <= nu_norm * (1.0 + 1e-12));
    }
}

TEST_CASE("permuting descriptors permutes the smoothed scores") {
    SplitMix64 rng(808);
    const std::vector<double> eta = random_eta(rng, 7);
    const std::array<std::size_t, 7> perm = {3, 0, 6, 1, 5, 2, 4};
    std::vector<double> permuted(7);
    for (std::size_t i = 0; i < 7; ++i) permuted[i] = eta[perm[i]];

    const ScoreVector base = smooth_direct(build_gram(eta, KernelConfig{}), eta, 1e-3);
    const ScoreVector moved =
        smooth_direct(build_gram(permuted, KernelConfig{}), permuted, 1e-3);
    for (std::size_t i = 0; i < 7; ++i) {
        CHECK(moved.r[i] == doctest::Approx(base.r[perm[i]]).epsilon(1e-11));
    }
}

TEST_CASE("lambda to zero recovers the raw scores on a well-separated system") {
    const std::vector<double> eta = {0.0, 0.3, 0.7, 1.2, 1.8, 2.5, 3.3};
    const KernelSystem system = build_gram(eta, KernelConfig{1.0, 1e-10});
    const ScoreVector result = smooth_direct(system, eta, 1e-10);
    CHECK(max_abs_difference(result.r, eta) <= 1e-6);
}

TEST_CASE("Cholesky reports a non-positive pivot when regularization vanishes") {
    const std::vector<double> eta = {0.5, 0.5}; // exactly singular ones matrix
    const KernelSystem system = build_gram(eta, KernelConfig{});
    CHECK_THROWS_AS(smooth_direct(system, eta, 1e-30), NumericError);
}

TEST_CASE("spectral path rejects eigenvalues below the PSD tolerance") {
    KernelSystem doctored;
    doctored.gram = SquareMatrix(2);
    doctored.gram(0, 0) = doctored.gram(1, 1) = 1.0;
    doctored.eigenvalues = {1.0, -1e-8};
    doctored.eigenvectors = SquareMatrix(2);
    doctored.eigenvectors(0, 0) = doctored.eigenvectors(1, 1) = 1.0;
    const std::vector<double> nu = {1.0, 1.0};
    CHECK_THROWS_AS(smooth_spectral(doctored, nu, 1e-3), NumericError);
}

TEST_CASE("configuration and dimension errors") {
    CHECK_THROWS_AS(build_gram(kGoldenEta, KernelConfig{0.0, 1e-3}), ConfigError);
    CHECK_THROWS_AS(build_gram(kGoldenEta, KernelConfig{1.0, 0.0}), ConfigError);
    const KernelSystem system = build_gram(kGoldenEta, KernelConfig{});
    CHECK_THROWS_AS(smooth_direct(system, std::vector<double>(3, 0.0), 1e-3), DimensionError);
    CHECK_THROWS_AS(smooth_direct(system, kGoldenEta, -1.0), ConfigError);
    CHECK_THROWS_AS(build_gram(std::vector<double>{}, KernelConfig{}), DimensionError);
}
