#include "lsgs/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numeric>
#include <utility>

#include "lsgs/errors.hpp"

namespace lsgs {

namespace {

constexpr double kEigenNegativeTolerance = 1e-10;
constexpr double kJacobiRelativeTolerance = 1e-12;
constexpr int kJacobiMaxSweeps = 100;

double off_diagonal_norm(const SquareMatrix& a) {
    const std::size_t n = a.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) sum += a(i, j) * a(i, j);
        }
    }
    return std::sqrt(sum);
}

double frobenius_norm(const SquareMatrix& a) {
    const std::size_t n = a.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            sum += a(i, j) * a(i, j);
        }
    }
    return std::sqrt(sum);
}

// Cyclic Jacobi for symmetric matrices. Rotations zero one off-diagonal pair
// at a time; V accumulates the eigenvector columns.
void jacobi_eigendecomposition(SquareMatrix a, std::vector<double>& eigenvalues,
                               SquareMatrix& eigenvectors) {
    const std::size_t n = a.size();
    eigenvectors = SquareMatrix(n);
    for (std::size_t i = 0; i < n; ++i) eigenvectors(i, i) = 1.0;

    const double threshold = kJacobiRelativeTolerance * frobenius_norm(a);
    int sweep = 0;
    while (off_diagonal_norm(a) > threshold) {
        if (++sweep > kJacobiMaxSweeps) {
            throw NumericError(fmt::format(
                "Jacobi eigendecomposition did not converge in {} sweeps", kJacobiMaxSweeps));
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = eigenvectors(k, p);
                    const double vkq = eigenvectors(k, q);
                    eigenvectors(k, p) = c * vkp - s * vkq;
                    eigenvectors(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    eigenvalues.resize(n);
    for (std::size_t i = 0; i < n; ++i) eigenvalues[i] = a(i, i);

    // Sort eigenvalues descending, permuting eigenvector columns to match.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return eigenvalues[x] > eigenvalues[y]; });
    std::vector<double> sorted_values(n);
    SquareMatrix sorted_vectors(n);
    for (std::size_t j = 0; j < n; ++j) {
        sorted_values[j] = eigenvalues[order[j]];
        for (std::size_t i = 0; i < n; ++i) {
            sorted_vectors(i, j) = eigenvectors(i, order[j]);
        }
    }
    eigenvalues = std::move(sorted_values);
    eigenvectors = std::move(sorted_vectors);
}

// Lower-triangular Cholesky of an SPD matrix, in place into `l`.
SquareMatrix cholesky_factor(const SquareMatrix& a) {
    const std::size_t n = a.size();
    SquareMatrix l(n);
    for (std::size_t j = 0; j < n; ++j) {
        double diag = a(j, j);
        for (std::size_t k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
        if (!(diag > 0.0)) {
            throw NumericError(fmt::format(
                "Cholesky pivot {} is not positive; regularization too small", j));
        }
        l(j, j) = std::sqrt(diag);
        for (std::size_t i = j + 1; i < n; ++i) {
            double sum = a(i, j);
            for (std::size_t k = 0; k < j; ++k) sum -= l(i, k) * l(j, k);
            l(i, j) = sum / l(j, j);
        }
    }
    return l;
}

std::vector<double> cholesky_solve(const SquareMatrix& l, std::span<const double> b) {
    const std::size_t n = l.size();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = b[i];
        for (std::size_t k = 0; k < i; ++k) sum -= l(i, k) * y[k];
        y[i] = sum / l(i, i);
    }
    std::vector<double> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double sum = y[ii];
        for (std::size_t k = ii + 1; k < n; ++k) sum -= l(k, ii) * x[k];
        x[ii] = sum / l(ii, ii);
    }
    return x;
}

std::vector<double> multiply(const SquareMatrix& a, std::span<const double> x) {
    const std::size_t n = a.size();
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) sum += a(i, j) * x[j];
        y[i] = sum;
    }
    return y;
}

void check_lambda(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw ConfigError(fmt::format("regularization must be positive and finite, got {}", lambda));
    }
}

void check_sizes(const KernelSystem& system, std::span<const double> raw_scores) {
    if (raw_scores.size() != system.gram.size()) {
        throw DimensionError(fmt::format("score vector has length {}, expected {}",
                                         raw_scores.size(), system.gram.size()));
    }
}

} // namespace

void KernelConfig::validate() const {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw ConfigError(fmt::format("kernel bandwidth must be positive and finite, got {}", sigma));
    }
    check_lambda(lambda);
}

double rbf_kernel(double eta_p, double eta_q, double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw ConfigError(fmt::format("kernel bandwidth must be positive and finite, got {}", sigma));
    }
    const double diff = eta_p - eta_q;
    return std::exp(-(diff * diff) / (2.0 * sigma * sigma));
}

KernelSystem build_gram(std::span<const double> descriptors, const KernelConfig& config) {
    config.validate();
    const std::size_t n = descriptors.size();
    if (n == 0) {
        throw DimensionError("descriptor vector is empty");
    }
    for (double d : descriptors) {
        if (!std::isfinite(d)) {
            throw ValidationError("descriptors must be finite");
        }
    }
    KernelSystem system;
    system.gram = SquareMatrix(n);
    for (std::size_t p = 0; p < n; ++p) {
        system.gram(p, p) = 1.0;
        for (std::size_t q = p + 1; q < n; ++q) {
            const double value = rbf_kernel(descriptors[p], descriptors[q], config.sigma);
            system.gram(p, q) = value;
            system.gram(q, p) = value;
        }
    }
    jacobi_eigendecomposition(system.gram, system.eigenvalues, system.eigenvectors);
    if (system.eigenvalues.back() < -kEigenNegativeTolerance) {
        throw NumericError(fmt::format(
            "Gram matrix has eigenvalue {} below the PSD tolerance", system.eigenvalues.back()));
    }
    return system;
}

ScoreVector smooth_direct(const KernelSystem& system, std::span<const double> raw_scores,
                          double lambda) {
    check_lambda(lambda);
    check_sizes(system, raw_scores);
    const std::size_t n = system.gram.size();
    SquareMatrix regularized = system.gram;
    for (std::size_t i = 0; i < n; ++i) regularized(i, i) += lambda;
    const SquareMatrix l = cholesky_factor(regularized);
    ScoreVector result;
    result.coefficients = cholesky_solve(l, raw_scores);
    result.r = multiply(system.gram, result.coefficients);
    return result;
}

ScoreVector smooth_spectral(const KernelSystem& system, std::span<const double> raw_scores,
                            double lambda) {
    check_lambda(lambda);
    check_sizes(system, raw_scores);
    const std::size_t n = system.gram.size();
    const SquareMatrix& u = system.eigenvectors;

    std::vector<double> projected(n, 0.0); // U^T raw_scores
    for (std::size_t j = 0; j < n; ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) sum += u(i, j) * raw_scores[i];
        projected[j] = sum;
    }

    ScoreVector result;
    result.r.assign(n, 0.0);
    result.coefficients.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double eigenvalue = system.eigenvalues[j];
        if (eigenvalue < -kEigenNegativeTolerance) {
            throw NumericError(fmt::format(
                "eigenvalue {} below the PSD tolerance", eigenvalue));
        }
        if (eigenvalue < 0.0) eigenvalue = 0.0;
        const double filtered = projected[j] * (eigenvalue / (eigenvalue + lambda));
        const double coefficient = projected[j] / (eigenvalue + lambda);
        for (std::size_t i = 0; i < n; ++i) {
            result.r[i] += u(i, j) * filtered;
            result.coefficients[i] += u(i, j) * coefficient;
        }
    }
    return result;
}

} // namespace lsgs
