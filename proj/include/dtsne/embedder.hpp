#ifndef DTSNE_EMBEDDER_HPP
#define DTSNE_EMBEDDER_HPP

#include <functional>
#include <optional>
#include <vector>

#include "dtsne/core.hpp"

/**
 * @file embedder.hpp
 *
 * @brief Low-dimensional kernel, objective, gradient and the momentum descent loop.
 *
 * Both methods share one code path. The low-dimensional similarity of a pair is
 * (1 + gamma_ij |y_i - y_j|^2)^-1, normalized over all ordered pairs; plain
 * t-SNE is the case gamma == 1. Passing no gamma matrix selects that case
 * without the extra multiplications, and yields exactly the same numbers as a
 * matrix of ones.
 */

namespace dtsne::embedder {

struct QResult {
    Matrix Q;
    /// Sum of the unnormalized kernel over all ordered pairs.
    double z = 0;
};

QResult compute_q(const Matrix& Y, const std::optional<Matrix>& gammas = std::nullopt);

/// sum_{i != j} p_ij log(p_ij / q_ij), skipping p_ij == 0 and flooring q at 1e-12.
double kl_divergence(const Matrix& P, const Matrix& Q);

/**
 * @brief Gradient of the KL objective with respect to every embedding coordinate.
 *
 * Row l is -4 sum_k (p_kl - q_kl) (1 + gamma_kl |y_k - y_l|^2)^-1 gamma_kl (y_k - y_l).
 */
Matrix kl_gradient(const Matrix& P, const Matrix& Y, const std::optional<Matrix>& gammas = std::nullopt);

struct OptimizerState {
    Matrix Y;
    Matrix Y_prev;
    int iter = 0;
    /// Objective against the unexaggerated P, every 50 iterations and at the end.
    std::vector<double> kl_trace;
    /// 1-based iteration number of each kl_trace entry.
    std::vector<int> kl_iters;
};

/// Called after every update with the 1-based iteration number and the new iterate.
using IterationObserver = std::function<void(int, const Matrix&)>;

/**
 * PCA projection of `points` onto `out_dim` components, rescaled so that the
 * standard deviation over all entries is 1e-4.
 */
Matrix initial_embedding(const Matrix& points, int out_dim);

/**
 * @brief Runs `config.iterations` momentum steps from `Y0`.
 *
 * Y <- Y - lr * grad + momentum * (Y - Y_prev), with P multiplied by the
 * exaggeration factor during the first `exaggeration_iters` steps.
 * Throws NonFiniteIterate if any coordinate becomes NaN or infinite.
 */
OptimizerState optimize(const Matrix& P, const std::optional<Matrix>& gammas, Matrix Y0,
                        const EmbeddingConfig& config, const IterationObserver& observer = {});

struct EmbeddingRun {
    Embedding embedding;
    OptimizerState state;
    /// Rows whose bandwidth search did not meet the perplexity target.
    std::size_t unconverged_sigma_rows = 0;
};

/**
 * @brief Full pipeline: optional PCA reduction of the input to
 * `pca_input_dims`, affinities for the configured method, PCA initialization
 * and optimization. Deterministic for identical inputs.
 */
EmbeddingRun run_embedding(const Dataset& data, const EmbeddingConfig& config);

}  // namespace dtsne::embedder

#endif
