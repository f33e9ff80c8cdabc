#include "dtsne/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dtsne/linalg.hpp"

namespace dtsne::metrics {

namespace {

std::optional<double> correlate(std::span<const double> a, std::span<const double> b, Correlation kind) {
    return kind == Correlation::Pearson ? linalg::pearson(a, b) : linalg::spearman(a, b);
}

void check_rows(const Matrix& high, const Matrix& low) {
    if (high.rows() != low.rows()) {
        throw Error(ErrorCode::LengthMismatch, "high- and low-dimensional row counts differ (" +
                                                   std::to_string(high.rows()) + " vs " +
                                                   std::to_string(low.rows()) + ")");
    }
}

void check_k(Eigen::Index n, int k) {
    if (k < 1 || k > n - 1) {
        throw Error(ErrorCode::KTooLarge,
                    "k = " + std::to_string(k) + " must lie in [1, " + std::to_string(n - 1) + "]");
    }
}

double distance(const Matrix& points, Eigen::Index i, Eigen::Index j) {
    double s = 0;
    for (Eigen::Index c = 0; c < points.cols(); ++c) {
        const double d = points(i, c) - points(j, c);
        s += d * d;
    }
    return std::sqrt(s);
}

struct Neighbor {
    double dist;
    Eigen::Index index;
    bool operator<(const Neighbor& o) const { return dist < o.dist || (dist == o.dist && index < o.index); }
};

// The k nearest of row i, sorted; `scratch` is reused between rows.
void nearest(const Matrix& points, Eigen::Index i, int k, std::vector<Neighbor>& scratch) {
    scratch.clear();
    for (Eigen::Index j = 0; j < points.rows(); ++j) {
        if (j != i) {
            scratch.push_back({distance(points, i, j), j});
        }
    }
    std::partial_sort(scratch.begin(), scratch.begin() + k, scratch.end());
    scratch.resize(static_cast<std::size_t>(k));
}

}  // namespace

std::optional<double> rho_global(const Matrix& high, const Matrix& low, Correlation kind) {
    check_rows(high, low);
    const Eigen::Index n = high.rows();
    std::vector<double> a, b;
    a.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
    b.reserve(a.capacity());
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            a.push_back(distance(high, i, j));
            b.push_back(distance(low, i, j));
        }
    }
    return correlate(a, b, kind);
}

std::vector<std::vector<Eigen::Index>> knn_indices(const Matrix& points, int k) {
    check_k(points.rows(), k);
    std::vector<std::vector<Eigen::Index>> out(static_cast<std::size_t>(points.rows()));
    std::vector<Neighbor> scratch;
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        nearest(points, i, k, scratch);
        auto& row = out[static_cast<std::size_t>(i)];
        row.reserve(scratch.size());
        for (const auto& nb : scratch) {
            row.push_back(nb.index);
        }
    }
    return out;
}

std::vector<double> knn_radii(const Matrix& points, int k) {
    check_k(points.rows(), k);
    std::vector<double> radii(static_cast<std::size_t>(points.rows()));
    std::vector<Neighbor> scratch;
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        scratch.clear();
        for (Eigen::Index j = 0; j < points.rows(); ++j) {
            if (j != i) {
                scratch.push_back({distance(points, i, j), j});
            }
        }
        std::nth_element(scratch.begin(), scratch.begin() + (k - 1), scratch.end());
        radii[static_cast<std::size_t>(i)] = scratch[static_cast<std::size_t>(k - 1)].dist;
    }
    return radii;
}

std::optional<double> rho_knn(const Matrix& high, const Matrix& low, int k, Correlation kind) {
    check_rows(high, low);
    const auto neighbors = knn_indices(high, k);
    std::vector<double> a, b;
    a.reserve(static_cast<std::size_t>(high.rows()) * static_cast<std::size_t>(k));
    b.reserve(a.capacity());
    for (Eigen::Index i = 0; i < high.rows(); ++i) {
        for (Eigen::Index j : neighbors[static_cast<std::size_t>(i)]) {
            a.push_back(distance(high, i, j));
            b.push_back(distance(low, i, j));
        }
    }
    return correlate(a, b, kind);
}

std::optional<double> rho_r(const Matrix& high, const Matrix& low, int k, Correlation kind) {
    check_rows(high, low);
    const auto rh = knn_radii(high, k);
    const auto rl = knn_radii(low, k);
    for (std::size_t i = 0; i < rh.size(); ++i) {
        if (rh[i] == 0 || rl[i] == 0) {
            throw Error(ErrorCode::ZeroRadius, "point " + std::to_string(i + 1) + " has its " + std::to_string(k) +
                                                   "-th neighbour at distance zero");
        }
    }
    const std::size_t n = rh.size();
    std::vector<double> a, b;
    a.reserve(n * (n - 1));
    b.reserve(n * (n - 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) {
                a.push_back(rh[i] / rh[j]);
                b.push_back(rl[i] / rl[j]);
            }
        }
    }
    return correlate(a, b, kind);
}

QualityReport evaluate(const Matrix& high, const Matrix& low, std::optional<int> k) {
    check_rows(high, low);
    const Eigen::Index n = high.rows();
    if (n < 2) {
        throw Error(ErrorCode::TooFewSamples, "need at least two points to evaluate");
    }
    const int max_k = static_cast<int>(n - 1);
    QualityReport report;
    int kk = k.value_or(std::min(100, max_k));
    if (kk < 1) {
        throw Error(ErrorCode::KTooLarge, "k must be positive");
    }
    if (kk > max_k) {
        kk = max_k;
        report.k_clamped = true;
    }
    report.k_neighbors = kk;

    report.rho_global = rho_global(high, low, Correlation::Pearson);
    report.spearman_global = rho_global(high, low, Correlation::Spearman);
    report.rho_knn = rho_knn(high, low, kk, Correlation::Pearson);
    report.spearman_knn = rho_knn(high, low, kk, Correlation::Spearman);
    try {
        report.rho_r = rho_r(high, low, kk, Correlation::Pearson);
        report.spearman_r = rho_r(high, low, kk, Correlation::Spearman);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::ZeroRadius) {
            throw;
        }
    }
    return report;
}

}  // namespace dtsne::metrics
