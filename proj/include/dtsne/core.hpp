#ifndef DTSNE_CORE_HPP
#define DTSNE_CORE_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dtsne/error.hpp"

/**
 * @file core.hpp
 *
 * @brief Domain types shared by every module.
 *
 * All matrices are dense, row-major and double precision. Points are rows.
 */

namespace dtsne {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

/**
 * @brief A set of n samples in m dimensions, optionally labelled by cluster.
 */
struct Dataset {
    Matrix points;
    std::optional<std::vector<int>> labels;
    std::string name;

    Eigen::Index n() const { return points.rows(); }
    Eigen::Index m() const { return points.cols(); }
};

enum class Method { TSNE, DTSNE };

std::string_view to_string(Method method);
Method parse_method(std::string_view text);

/**
 * @brief Optimizer hyperparameters for one embedding run.
 *
 * Defaults follow the experimental protocol: perplexity 100, 750 iterations,
 * momentum 0.5 for the first 20 iterations and 0.8 afterwards, learning rate
 * n/12, input reduced to 50 principal components. Early exaggeration (12 for
 * 100 iterations) follows common t-SNE practice.
 */
struct EmbeddingConfig {
    Method method = Method::DTSNE;
    double perplexity = 100.0;
    int iterations = 750;
    /// Unset means n/12, resolved against the dataset at run time.
    std::optional<double> learning_rate;
    double momentum_early = 0.5;
    double momentum_late = 0.8;
    int momentum_switch_iter = 20;
    double exaggeration_factor = 12.0;
    int exaggeration_iters = 100;
    int pca_input_dims = 50;
    std::uint64_t seed = 0;
    int out_dim = 2;

    /// Checks the dataset-independent invariants; throws InvalidConfig.
    void validate() const;

    /// Also checks perplexity < n.
    void validate_for(const Dataset& data) const;

    double resolved_learning_rate(Eigen::Index n) const;
};

/**
 * @brief High-dimensional joint affinities.
 *
 * `P` is symmetric with zero diagonal and unit total mass. `gammas` is
 * present only for the density-preserving method.
 */
struct AffinityModel {
    Matrix P;
    Vector sigmas;
    std::optional<Matrix> gammas;
    /// Rows whose bandwidth search ended at a bound without meeting the target.
    std::vector<Eigen::Index> unconverged_rows;
};

struct Embedding {
    Matrix coords;
    int dim = 2;
    std::string config_fingerprint;
};

/**
 * @brief Correlation scores of one embedding. An empty value marks a
 * correlation that is undefined (constant input or zero radii).
 */
struct QualityReport {
    std::optional<double> rho_global;
    std::optional<double> rho_knn;
    std::optional<double> rho_r;
    std::optional<double> spearman_global;
    std::optional<double> spearman_knn;
    std::optional<double> spearman_r;
    int k_neighbors = 0;
    bool k_clamped = false;
};

/// Returns `data` unchanged if n >= 2, m >= 1, all entries finite and labels sized n.
const Dataset& validate_dataset(const Dataset& data);

/// Hex digest over every config field and the dataset's values.
std::string config_fingerprint(const EmbeddingConfig& config, const Dataset& data);

}  // namespace dtsne

#endif
