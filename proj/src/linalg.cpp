#include "dtsne/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dtsne::linalg {

Matrix pairwise_sq_dists(const Matrix& points) {
    const Eigen::Index n = points.rows();
    const Eigen::Index d = points.cols();
    Matrix out = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double* xi = points.row(i).data();
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double* xj = points.row(j).data();
            double s = 0;
            for (Eigen::Index c = 0; c < d; ++c) {
                const double diff = xi[c] - xj[c];
                s += diff * diff;
            }
            out(i, j) = s;
            out(j, i) = s;
        }
    }
    return out;
}

namespace {

void fix_sign(Eigen::Ref<Vector> direction) {
    Eigen::Index best = 0;
    double best_abs = -1;
    for (Eigen::Index i = 0; i < direction.size(); ++i) {
        const double a = std::abs(direction(i));
        if (a > best_abs) {
            best_abs = a;
            best = i;
        }
    }
    if (direction(best) < 0) {
        direction = -direction;
    }
}

}  // namespace

PcaResult pca(const Matrix& points, Eigen::Index out_dims) {
    const Eigen::Index n = points.rows();
    const Eigen::Index d = points.cols();
    if (out_dims < 1 || out_dims > std::min(n, d)) {
        throw Error(ErrorCode::DimensionTooLarge, "cannot extract " + std::to_string(out_dims) +
                                                      " components from " + std::to_string(n) + "x" +
                                                      std::to_string(d) + " data");
    }

    PcaResult result;
    result.mean = points.colwise().mean().transpose();
    Matrix centered = points.rowwise() - result.mean.transpose();
    const double denom = static_cast<double>(std::max<Eigen::Index>(n - 1, 1));

    result.components.resize(out_dims, d);
    result.variances.resize(out_dims);

    if (d <= n) {
        Eigen::MatrixXd cov = (centered.transpose() * centered) / denom;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
        for (Eigen::Index k = 0; k < out_dims; ++k) {
            const Eigen::Index src = d - 1 - k;
            Vector dir = eig.eigenvectors().col(src);
            fix_sign(dir);
            result.components.row(k) = dir.transpose();
            result.variances(k) = std::max(eig.eigenvalues()(src), 0.0);
        }
    } else {
        Eigen::MatrixXd gram = centered * centered.transpose();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
        for (Eigen::Index k = 0; k < out_dims; ++k) {
            const Eigen::Index src = n - 1 - k;
            const double lambda = std::max(eig.eigenvalues()(src), 0.0);
            Vector dir = centered.transpose() * eig.eigenvectors().col(src);
            const double norm = dir.norm();
            if (norm > 0) {
                dir /= norm;
                fix_sign(dir);
            } else {
                dir.setZero();
            }
            result.components.row(k) = dir.transpose();
            result.variances(k) = lambda / denom;
        }
    }

    result.scores = centered * result.components.transpose();
    return result;
}

std::optional<double> pearson(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw Error(ErrorCode::LengthMismatch, "pearson: lengths " + std::to_string(a.size()) + " and " +
                                                   std::to_string(b.size()) + " differ");
    }
    if (a.size() < 2) {
        throw Error(ErrorCode::LengthMismatch, "pearson: need at least 2 values");
    }
    const double len = static_cast<double>(a.size());
    const double mean_a = std::accumulate(a.begin(), a.end(), 0.0) / len;
    const double mean_b = std::accumulate(b.begin(), b.end(), 0.0) / len;
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - mean_a;
        const double db = b[i] - mean_b;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa <= 0 || sbb <= 0) {
        return std::nullopt;
    }
    return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

std::vector<double> ranks(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });
    std::vector<double> out(values.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i + 1;
        while (j < order.size() && values[order[j]] == values[order[i]]) {
            ++j;
        }
        const double avg = 0.5 * static_cast<double>(i + 1 + j);
        for (std::size_t k = i; k < j; ++k) {
            out[order[k]] = avg;
        }
        i = j;
    }
    return out;
}

std::optional<double> spearman(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw Error(ErrorCode::LengthMismatch, "spearman: lengths differ");
    }
    const auto ra = ranks(a);
    const auto rb = ranks(b);
    return pearson(ra, rb);
}

}  // namespace dtsne::linalg
