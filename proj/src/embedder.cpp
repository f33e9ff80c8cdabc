#include "dtsne/embedder.hpp"

#include <algorithm>
#include <cmath>

#include "dtsne/affinity.hpp"
#include "dtsne/linalg.hpp"

namespace dtsne::embedder {

namespace {

constexpr double kQFloor = 1e-12;
constexpr double kInitStd = 1e-4;
constexpr int kTraceEvery = 50;

template <int Dim, bool WithGamma>
double fill_kernel(const Matrix& Y, const Matrix* gammas, Matrix& w) {
    const Eigen::Index n = Y.rows();
    const double* y = Y.data();
    double half_z = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double* yi = y + i * Dim;
        w(i, i) = 0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double* yj = y + j * Dim;
            double d2 = 0;
            for (int c = 0; c < Dim; ++c) {
                const double diff = yi[c] - yj[c];
                d2 += diff * diff;
            }
            if constexpr (WithGamma) {
                d2 *= (*gammas)(i, j);
            }
            const double v = 1.0 / (1.0 + d2);
            w(i, j) = v;
            w(j, i) = v;
            half_z += v;
        }
    }
    return 2.0 * half_z;
}

double fill_kernel(const Matrix& Y, const std::optional<Matrix>& gammas, Matrix& w) {
    const Matrix* g = gammas ? &*gammas : nullptr;
    switch (Y.cols()) {
    case 2: return g ? fill_kernel<2, true>(Y, g, w) : fill_kernel<2, false>(Y, g, w);
    case 3: return g ? fill_kernel<3, true>(Y, g, w) : fill_kernel<3, false>(Y, g, w);
    default: break;
    }
    // Generic width, used only by tests on unusual shapes.
    const Eigen::Index n = Y.rows();
    double half_z = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        w(i, i) = 0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            double d2 = (Y.row(i) - Y.row(j)).squaredNorm();
            if (g) {
                d2 *= (*g)(i, j);
            }
            const double v = 1.0 / (1.0 + d2);
            w(i, j) = v;
            w(j, i) = v;
            half_z += v;
        }
    }
    return 2.0 * half_z;
}

// grad_i = 4 sum_j (scale * p_ij - w_ij / z) w_ij gamma_ij (y_i - y_j)
template <int Dim, bool WithGamma>
void accumulate_gradient(const Matrix& P, double p_scale, const Matrix& Y, const Matrix* gammas, const Matrix& w,
                         double z, Matrix& grad) {
    const Eigen::Index n = Y.rows();
    const double* y = Y.data();
    double* g = grad.data();
    const double inv_z = 1.0 / z;
    grad.setZero();
    for (Eigen::Index i = 0; i < n; ++i) {
        const double* yi = y + i * Dim;
        double* gi = g + i * Dim;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double wij = w(i, j);
            double coeff = (p_scale * P(i, j) - wij * inv_z) * wij;
            if constexpr (WithGamma) {
                coeff *= (*gammas)(i, j);
            }
            coeff *= 4.0;
            const double* yj = y + j * Dim;
            double* gj = g + j * Dim;
            for (int c = 0; c < Dim; ++c) {
                const double f = coeff * (yi[c] - yj[c]);
                gi[c] += f;
                gj[c] -= f;
            }
        }
    }
}

void accumulate_gradient(const Matrix& P, double p_scale, const Matrix& Y, const std::optional<Matrix>& gammas,
                         const Matrix& w, double z, Matrix& grad) {
    const Matrix* g = gammas ? &*gammas : nullptr;
    switch (Y.cols()) {
    case 2:
        return g ? accumulate_gradient<2, true>(P, p_scale, Y, g, w, z, grad)
                 : accumulate_gradient<2, false>(P, p_scale, Y, g, w, z, grad);
    case 3:
        return g ? accumulate_gradient<3, true>(P, p_scale, Y, g, w, z, grad)
                 : accumulate_gradient<3, false>(P, p_scale, Y, g, w, z, grad);
    default: break;
    }
    const Eigen::Index n = Y.rows();
    grad.setZero();
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            double coeff = (p_scale * P(i, j) - w(i, j) / z) * w(i, j);
            if (g) {
                coeff *= (*g)(i, j);
            }
            coeff *= 4.0;
            const auto f = (coeff * (Y.row(i) - Y.row(j))).eval();
            grad.row(i) += f;
            grad.row(j) -= f;
        }
    }
}

void check_shapes(const Matrix& P, const Matrix& Y, const std::optional<Matrix>& gammas) {
    if (P.rows() != Y.rows() || P.cols() != Y.rows()) {
        throw Error(ErrorCode::LengthMismatch, "P must be n x n for an n-row embedding");
    }
    if (gammas && (gammas->rows() != Y.rows() || gammas->cols() != Y.rows())) {
        throw Error(ErrorCode::LengthMismatch, "gamma matrix must be n x n");
    }
}

}  // namespace

QResult compute_q(const Matrix& Y, const std::optional<Matrix>& gammas) {
    const Eigen::Index n = Y.rows();
    if (gammas && (gammas->rows() != n || gammas->cols() != n)) {
        throw Error(ErrorCode::LengthMismatch, "gamma matrix must be n x n");
    }
    QResult out{Matrix(n, n), 0.0};
    out.z = fill_kernel(Y, gammas, out.Q);
    out.Q /= out.z;
    return out;
}

double kl_divergence(const Matrix& P, const Matrix& Q) {
    if (P.rows() != Q.rows() || P.cols() != Q.cols()) {
        throw Error(ErrorCode::LengthMismatch, "P and Q shapes differ");
    }
    double kl = 0;
    for (Eigen::Index i = 0; i < P.rows(); ++i) {
        for (Eigen::Index j = 0; j < P.cols(); ++j) {
            const double p = P(i, j);
            if (i == j || p == 0) {
                continue;
            }
            kl += p * std::log(p / std::max(Q(i, j), kQFloor));
        }
    }
    return kl;
}

Matrix kl_gradient(const Matrix& P, const Matrix& Y, const std::optional<Matrix>& gammas) {
    check_shapes(P, Y, gammas);
    Matrix w(Y.rows(), Y.rows());
    const double z = fill_kernel(Y, gammas, w);
    Matrix grad(Y.rows(), Y.cols());
    accumulate_gradient(P, 1.0, Y, gammas, w, z, grad);
    return grad;
}

Matrix initial_embedding(const Matrix& points, int out_dim) {
    Matrix Y = linalg::pca(points, out_dim).scores;
    const double mean = Y.mean();
    const double var = (Y.array() - mean).square().mean();
    if (var > 0) {
        Y *= kInitStd / std::sqrt(var);
    }
    return Y;
}

OptimizerState optimize(const Matrix& P, const std::optional<Matrix>& gammas, Matrix Y0,
                        const EmbeddingConfig& config, const IterationObserver& observer) {
    config.validate();
    check_shapes(P, Y0, gammas);
    const Eigen::Index n = Y0.rows();
    const double lr = config.resolved_learning_rate(n);

    OptimizerState state;
    state.Y = std::move(Y0);
    state.Y_prev = state.Y;

    Matrix w(n, n);
    Matrix grad(n, state.Y.cols());
    Matrix next(n, state.Y.cols());

    for (int t = 0; t < config.iterations; ++t) {
        const double p_scale = t < config.exaggeration_iters ? config.exaggeration_factor : 1.0;
        const double momentum = t < config.momentum_switch_iter ? config.momentum_early : config.momentum_late;

        const double z = fill_kernel(state.Y, gammas, w);
        accumulate_gradient(P, p_scale, state.Y, gammas, w, z, grad);

        next = state.Y - lr * grad + momentum * (state.Y - state.Y_prev);
        if (!next.allFinite()) {
            throw Error(ErrorCode::NonFiniteIterate,
                        "embedding became non-finite at iteration " + std::to_string(t + 1));
        }
        state.Y_prev.swap(state.Y);
        state.Y.swap(next);
        state.iter = t + 1;

        if (state.iter % kTraceEvery == 0 || state.iter == config.iterations) {
            state.kl_trace.push_back(kl_divergence(P, compute_q(state.Y, gammas).Q));
            state.kl_iters.push_back(state.iter);
        }
        if (observer) {
            observer(state.iter, state.Y);
        }
    }
    return state;
}

EmbeddingRun run_embedding(const Dataset& data, const EmbeddingConfig& config) {
    validate_dataset(data);
    config.validate_for(data);

    Matrix reduced;
    if (data.m() > config.pca_input_dims) {
        const Eigen::Index dims = std::min<Eigen::Index>(config.pca_input_dims, data.n());
        reduced = linalg::pca(data.points, dims).scores;
    } else {
        reduced = data.points;
    }

    auto affinities = affinity::build_affinities(reduced, config.perplexity, config.method);
    Matrix Y0 = initial_embedding(reduced, config.out_dim);

    EmbeddingRun run;
    run.unconverged_sigma_rows = affinities.unconverged_rows.size();
    run.state = optimize(affinities.P, affinities.gammas, std::move(Y0), config);
    run.embedding.coords = run.state.Y;
    run.embedding.dim = config.out_dim;
    run.embedding.config_fingerprint = config_fingerprint(config, data);
    return run;
}

}  // namespace dtsne::embedder
