#ifndef DTSNE_LINALG_HPP
#define DTSNE_LINALG_HPP

#include <optional>
#include <span>

#include "dtsne/core.hpp"

namespace dtsne::linalg {

/**
 * @brief Squared Euclidean distances between all pairs of rows.
 *
 * Each entry is summed coordinate by coordinate in a fixed order, so the
 * result is symmetric bit for bit and the diagonal is exactly zero.
 */
Matrix pairwise_sq_dists(const Matrix& points);

struct PcaResult {
    /// n x k projections of the centered data.
    Matrix scores;
    /// k x d principal directions, one per row, by decreasing variance.
    Matrix components;
    /// Variance captured by each component (covariance eigenvalue, n - 1 denominator).
    Vector variances;
    /// Column means that were subtracted.
    Vector mean;
};

/**
 * @brief Projects the column-centered data onto its top `out_dims` principal
 * directions.
 *
 * Uses the d x d covariance when d <= n and the n x n Gram matrix otherwise.
 * Each direction is flipped so that its largest-magnitude entry is
 * non-negative (first such entry on ties), which makes the output fully
 * deterministic.
 *
 * Throws DimensionTooLarge when out_dims exceeds min(n, d).
 */
PcaResult pca(const Matrix& points, Eigen::Index out_dims);

/// Sample Pearson correlation; empty when either input has zero variance.
std::optional<double> pearson(std::span<const double> a, std::span<const double> b);

/// Pearson correlation of average ranks.
std::optional<double> spearman(std::span<const double> a, std::span<const double> b);

/// Average ranks (1-based, ties share the mean rank).
std::vector<double> ranks(std::span<const double> values);

}  // namespace dtsne::linalg

#endif
