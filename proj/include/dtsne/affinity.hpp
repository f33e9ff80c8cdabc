#ifndef DTSNE_AFFINITY_HPP
#define DTSNE_AFFINITY_HPP

#include <span>
#include <vector>

#include "dtsne/core.hpp"

namespace dtsne::affinity {

/// 2^H of a probability vector, with H in bits. Throws NotNormalized.
double perplexity_of(std::span<const double> p_row);

struct SigmaFit {
    double sigma = 1.0;
    /// Conditional probabilities at the returned bandwidth, same order as the input distances.
    std::vector<double> row;
    double perplexity = 0.0;
    bool converged = false;
};

/**
 * @brief Gaussian conditional probabilities exp(-d_j / (2 sigma^2)) / Z.
 *
 * Exponents are shifted by the smallest distance before exponentiation;
 * values under 1e-300 are flushed to zero.
 */
std::vector<double> gaussian_row(std::span<const double> sq_dists, double sigma);

/**
 * @brief Bisection over log(sigma) in [-40, 40] for the bandwidth whose row
 * has the target perplexity.
 *
 * Stops once |log2 perplexity - log2 target| < 1e-5 or after 64 halvings.
 * When the target cannot be met (e.g. all distances equal) the last
 * bracketing value is returned with `converged == false`.
 *
 * Throws DegenerateRow if every distance is zero.
 */
SigmaFit fit_sigma(std::span<const double> sq_dists, double target_perplexity);

/// Standard t-SNE joint affinities, p_ij = (p_{j|i} + p_{i|j}) / 2n.
AffinityModel build_affinities_tsne(const Matrix& points, double perplexity);

/**
 * @brief Density-preserving affinities.
 *
 * Bandwidths are first fitted per point as for t-SNE. The conditionals are
 * then re-evaluated with the pairwise bandwidth (sigma_i + sigma_j) / 2 in
 * both numerator and normalizer, symmetrized, and paired with the
 * low-dimensional scale factors from compute_gammas.
 */
AffinityModel build_affinities_dtsne(const Matrix& points, double perplexity);

AffinityModel build_affinities(const Matrix& points, double perplexity, Method method);

/// gamma_ij = (s / (sigma_i + sigma_j))^2 where s is the smallest off-diagonal sigma sum.
Matrix compute_gammas(const Vector& sigmas);

}  // namespace dtsne::affinity

#endif
