#ifndef DTSNE_METRICS_HPP
#define DTSNE_METRICS_HPP

#include <optional>
#include <vector>

#include "dtsne/core.hpp"

/**
 * @file metrics.hpp
 *
 * @brief Embedding quality scores.
 *
 * - rho_global: correlation of all pairwise distances.
 * - rho_knn: correlation of the distances from each point to its k nearest
 *   neighbours, neighbours taken in the high-dimensional space.
 * - rho_r: correlation of all ordered ratios r_i / r_j, where r_i is the
 *   distance from i to its k-th nearest neighbour.
 *
 * High-dimensional inputs are always the original data. Pearson is the
 * primary correlation; the Spearman variants are reported alongside.
 */

namespace dtsne::metrics {

enum class Correlation { Pearson, Spearman };

std::optional<double> rho_global(const Matrix& high, const Matrix& low, Correlation kind = Correlation::Pearson);

/// Distance to the k-th nearest other point; ties broken by smaller index. Throws KTooLarge.
std::vector<double> knn_radii(const Matrix& points, int k);

/// Indices of the k nearest other points of every row, nearest first, ties by index.
std::vector<std::vector<Eigen::Index>> knn_indices(const Matrix& points, int k);

std::optional<double> rho_knn(const Matrix& high, const Matrix& low, int k, Correlation kind = Correlation::Pearson);

/// Throws ZeroRadius if any point has its k-th neighbour at distance zero in either space.
std::optional<double> rho_r(const Matrix& high, const Matrix& low, int k, Correlation kind = Correlation::Pearson);

/**
 * Computes all scores. `k` defaults to min(100, n - 1); larger values are
 * clamped to n - 1 and flagged in the report. A zero radius leaves rho_r
 * undefined rather than failing the whole report.
 */
QualityReport evaluate(const Matrix& high, const Matrix& low, std::optional<int> k = std::nullopt);

}  // namespace dtsne::metrics

#endif
