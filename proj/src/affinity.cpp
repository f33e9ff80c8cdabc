#include "dtsne/affinity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dtsne/linalg.hpp"

namespace dtsne::affinity {

namespace {

constexpr double kFlushBelow = 1e-300;
constexpr double kLogSigmaMin = -40.0;
constexpr double kLogSigmaMax = 40.0;
constexpr int kMaxBisections = 64;
constexpr double kLog2Tolerance = 1e-5;

double entropy_bits(std::span<const double> p) {
    double h = 0;
    for (double v : p) {
        if (v > 0) {
            h -= v * std::log(v);
        }
    }
    return h / std::numbers::ln2;
}

void normalize_in_place(std::vector<double>& v) {
    double z = 0;
    for (double& x : v) {
        if (x < kFlushBelow) {
            x = 0;
        }
        z += x;
    }
    for (double& x : v) {
        x /= z;
    }
}

// Conditional rows laid out densely in an n x n matrix with a zero diagonal.
AffinityModel symmetrize(const Matrix& conditional, Vector sigmas) {
    const Eigen::Index n = conditional.rows();
    const double denom = 2.0 * static_cast<double>(n);
    AffinityModel model;
    model.P = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double p = (conditional(i, j) + conditional(j, i)) / denom;
            model.P(i, j) = p;
            model.P(j, i) = p;
        }
    }
    model.sigmas = std::move(sigmas);
    return model;
}

std::vector<double> row_without_self(const Matrix& sq_dists, Eigen::Index i) {
    std::vector<double> row;
    row.reserve(static_cast<std::size_t>(sq_dists.cols() - 1));
    for (Eigen::Index j = 0; j < sq_dists.cols(); ++j) {
        if (j != i) {
            row.push_back(sq_dists(i, j));
        }
    }
    return row;
}

struct FittedRows {
    Matrix conditional;
    Vector sigmas;
    std::vector<Eigen::Index> unconverged;
};

FittedRows fit_all_rows(const Matrix& sq_dists, double perplexity) {
    const Eigen::Index n = sq_dists.rows();
    FittedRows out{Matrix::Zero(n, n), Vector(n), {}};
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto dists = row_without_self(sq_dists, i);
        SigmaFit fit;
        try {
            fit = fit_sigma(dists, perplexity);
        } catch (const Error& e) {
            throw Error(e.code(), "row " + std::to_string(i + 1) + ": " + e.what());
        }
        out.sigmas(i) = fit.sigma;
        if (!fit.converged) {
            out.unconverged.push_back(i);
        }
        std::size_t k = 0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j != i) {
                out.conditional(i, j) = fit.row[k++];
            }
        }
    }
    return out;
}

}  // namespace

double perplexity_of(std::span<const double> p_row) {
    double total = 0;
    for (double v : p_row) {
        if (v < 0 || !std::isfinite(v)) {
            throw Error(ErrorCode::NotNormalized, "probability entries must be finite and non-negative");
        }
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-10) {
        throw Error(ErrorCode::NotNormalized, "probabilities sum to " + std::to_string(total));
    }
    return std::exp2(entropy_bits(p_row));
}

std::vector<double> gaussian_row(std::span<const double> sq_dists, double sigma) {
    const double d_min = *std::min_element(sq_dists.begin(), sq_dists.end());
    const double scale = 1.0 / (2.0 * sigma * sigma);
    std::vector<double> row(sq_dists.size());
    for (std::size_t j = 0; j < sq_dists.size(); ++j) {
        row[j] = std::exp(-(sq_dists[j] - d_min) * scale);
    }
    normalize_in_place(row);
    return row;
}

SigmaFit fit_sigma(std::span<const double> sq_dists, double target_perplexity) {
    if (sq_dists.empty() || std::all_of(sq_dists.begin(), sq_dists.end(), [](double d) { return d == 0.0; })) {
        throw Error(ErrorCode::DegenerateRow, "all distances are zero; bandwidth is undefined");
    }
    const double target_bits = std::log2(target_perplexity);

    double lo = kLogSigmaMin;
    double hi = kLogSigmaMax;
    SigmaFit fit;
    for (int step = 0; step < kMaxBisections; ++step) {
        const double mid = 0.5 * (lo + hi);
        fit.sigma = std::exp(mid);
        fit.row = gaussian_row(sq_dists, fit.sigma);
        const double bits = entropy_bits(fit.row);
        fit.perplexity = std::exp2(bits);
        if (std::abs(bits - target_bits) < kLog2Tolerance) {
            fit.converged = true;
            return fit;
        }
        if (bits > target_bits) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return fit;
}

AffinityModel build_affinities_tsne(const Matrix& points, double perplexity) {
    const Matrix sq_dists = linalg::pairwise_sq_dists(points);
    auto fitted = fit_all_rows(sq_dists, perplexity);
    auto model = symmetrize(fitted.conditional, std::move(fitted.sigmas));
    model.unconverged_rows = std::move(fitted.unconverged);
    return model;
}

AffinityModel build_affinities_dtsne(const Matrix& points, double perplexity) {
    const Matrix sq_dists = linalg::pairwise_sq_dists(points);
    auto fitted = fit_all_rows(sq_dists, perplexity);
    const Vector& sigmas = fitted.sigmas;
    const Eigen::Index n = sq_dists.rows();

    Matrix conditional = Matrix::Zero(n, n);
    std::vector<double> exponents(static_cast<std::size_t>(n));
    std::vector<double> row(static_cast<std::size_t>(n - 1));
    for (Eigen::Index i = 0; i < n; ++i) {
        double e_min = std::numeric_limits<double>::infinity();
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j == i) {
                continue;
            }
            const double s = 0.5 * (sigmas(i) + sigmas(j));
            const double e = sq_dists(i, j) / (2.0 * s * s);
            exponents[static_cast<std::size_t>(j)] = e;
            e_min = std::min(e_min, e);
        }
        std::size_t k = 0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j != i) {
                row[k++] = std::exp(-(exponents[static_cast<std::size_t>(j)] - e_min));
            }
        }
        normalize_in_place(row);
        k = 0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j != i) {
                conditional(i, j) = row[k++];
            }
        }
    }

    auto model = symmetrize(conditional, sigmas);
    model.gammas = compute_gammas(model.sigmas);
    model.unconverged_rows = std::move(fitted.unconverged);
    return model;
}

AffinityModel build_affinities(const Matrix& points, double perplexity, Method method) {
    return method == Method::TSNE ? build_affinities_tsne(points, perplexity)
                                  : build_affinities_dtsne(points, perplexity);
}

Matrix compute_gammas(const Vector& sigmas) {
    const Eigen::Index n = sigmas.size();
    if (n < 2) {
        throw Error(ErrorCode::TooFewSamples, "compute_gammas needs at least two bandwidths");
    }
    std::vector<double> sorted(sigmas.begin(), sigmas.end());
    std::partial_sort(sorted.begin(), sorted.begin() + 2, sorted.end());
    const double smallest_sum = sorted[0] + sorted[1];

    Matrix gammas(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            const double ratio = smallest_sum / (sigmas(i) + sigmas(j));
            gammas(i, j) = ratio * ratio;
            gammas(j, i) = gammas(i, j);
        }
    }
    return gammas;
}

}  // namespace dtsne::affinity
