#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lsgs {

struct KernelConfig {
    double sigma = 1.0;    // RBF bandwidth
    double lambda = 1e-3;  // smoothing regularization

    void validate() const;
};

class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

    std::size_t size() const { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    std::span<const double> row(std::size_t i) const {
        return std::span<const double>(data_).subspan(i * n_, n_);
    }

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

// RBF Gram matrix over scalar scenario descriptors together with its full
// eigendecomposition (eigenvalues descending, orthonormal eigenvector
// columns). PSD up to round-off by construction.
struct KernelSystem {
    SquareMatrix gram;
    std::vector<double> eigenvalues;
    SquareMatrix eigenvectors;
};

// Smoothed scores r alongside the expansion coefficients a with r = gram * a.
struct ScoreVector {
    std::vector<double> r;
    std::vector<double> coefficients;
};

double rbf_kernel(double eta_p, double eta_q, double sigma);

KernelSystem build_gram(std::span<const double> descriptors, const KernelConfig& config);

// Solves (gram + lambda I) a = raw_scores by Cholesky and returns r = gram * a.
ScoreVector smooth_direct(const KernelSystem& system, std::span<const double> raw_scores,
                          double lambda);

// Equivalent spectral route: r = U diag(s_i / (s_i + lambda)) U^T raw_scores.
ScoreVector smooth_spectral(const KernelSystem& system, std::span<const double> raw_scores,
                            double lambda);

} // namespace lsgs
