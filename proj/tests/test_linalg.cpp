#include <gtest/gtest.h>

#include <random>

#include "dtsne/linalg.hpp"
#include "oracles.hpp"

using dtsne::Matrix;
namespace la = dtsne::linalg;

TEST(PairwiseSqDists, ThreeFourFive) {
    Matrix x(2, 2);
    x << 0, 0, 3, 4;
    const Matrix d = la::pairwise_sq_dists(x);
    EXPECT_EQ(d(0, 1), 25);
    EXPECT_EQ(d(1, 0), 25);
    EXPECT_EQ(d(0, 0), 0);
}

TEST(PairwiseSqDists, SinglePoint) {
    const Matrix d = la::pairwise_sq_dists(Matrix::Constant(1, 3, 2.0));
    ASSERT_EQ(d.rows(), 1);
    EXPECT_EQ(d(0, 0), 0);
}

TEST(PairwiseSqDists, MatchesScalarLoop) {
    std::mt19937_64 rng(5);
    const Matrix x = oracle::random_matrix(rng, 5, 3);
    const Matrix d = la::pairwise_sq_dists(x);
    const auto g = oracle::to_grid(x);
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            EXPECT_NEAR(d(i, j), oracle::sq_dist(g[i], g[j]), 1e-12);
        }
    }
    EXPECT_EQ(d, d.transpose());
}

TEST(PairwiseSqDists, TriangleInequalityOnRoots) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix d = la::pairwise_sq_dists(oracle::random_matrix(rng, 12, 4, -5, 5)).cwiseSqrt();
        for (int i = 0; i < 12; ++i) {
            for (int j = 0; j < 12; ++j) {
                for (int k = 0; k < 12; ++k) {
                    EXPECT_LE(d(i, k), d(i, j) + d(j, k) + 1e-12);
                }
            }
        }
    }
}

TEST(Pca, AxisAlignedPoints) {
    Matrix x(2, 2);
    x << -1, 0, 1, 0;
    const auto r = la::pca(x, 1);
    EXPECT_NEAR(r.scores(0, 0), -1, 1e-12);
    EXPECT_NEAR(r.scores(1, 0), 1, 1e-12);
}

TEST(Pca, FullRankReconstruction) {
    std::mt19937_64 rng(7);
    const Matrix x = oracle::random_matrix(rng, 20, 4, -3, 3);
    const auto r = la::pca(x, 4);
    const Matrix centered = x.rowwise() - r.mean.transpose();
    EXPECT_LT((centered - r.scores * r.components).norm(), 1e-8);
}

TEST(Pca, VariancesMatchJacobiEigenvalues) {
    std::mt19937_64 rng(8);
    Matrix x = oracle::random_matrix(rng, 50, 5);
    x.col(1) *= 3;
    x.col(3) *= 2;
    const auto r = la::pca(x, 2);
    const auto ev = oracle::jacobi_eigenvalues(oracle::covariance(oracle::to_grid(x)));
    for (int k = 0; k < 2; ++k) {
        const Eigen::VectorXd col = r.scores.col(k);
        const double projected_var = col.squaredNorm() / (50 - 1);
        EXPECT_NEAR(projected_var, ev[static_cast<std::size_t>(k)], 1e-8);
        EXPECT_NEAR(r.variances(k), ev[static_cast<std::size_t>(k)], 1e-8);
    }
}

TEST(Pca, GramRouteForWideData) {
    std::mt19937_64 rng(9);
    Matrix x = oracle::random_matrix(rng, 6, 10);
    const auto r = la::pca(x, 3);
    const auto ev = oracle::jacobi_eigenvalues(oracle::covariance(oracle::to_grid(x)));
    for (int k = 0; k < 3; ++k) {
        EXPECT_NEAR(r.scores.col(k).squaredNorm() / 5.0, ev[static_cast<std::size_t>(k)], 1e-8);
        EXPECT_NEAR(r.components.row(k).norm(), 1.0, 1e-10);
    }
}

TEST(Pca, SignConventionMakesLargestEntryNonNegative) {
    std::mt19937_64 rng(10);
    const auto r = la::pca(oracle::random_matrix(rng, 30, 6), 3);
    for (int k = 0; k < 3; ++k) {
        Eigen::Index arg;
        r.components.row(k).cwiseAbs().maxCoeff(&arg);
        EXPECT_GE(r.components(k, arg), 0);
    }
}

TEST(Pca, InvariantToTranslation) {
    std::mt19937_64 rng(11);
    const Matrix x = oracle::random_matrix(rng, 40, 5);
    Eigen::RowVectorXd shift(5);
    shift << 10, -3, 7, 100, 0.5;
    const Matrix shifted = x.rowwise() + shift;
    EXPECT_LT((la::pca(x, 3).scores - la::pca(shifted, 3).scores).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Pca, RejectsTooManyComponents) {
    try {
        la::pca(Matrix::Zero(3, 2), 3);
        FAIL();
    } catch (const dtsne::Error& e) {
        EXPECT_EQ(e.code(), dtsne::ErrorCode::DimensionTooLarge);
    }
}

TEST(Pca, DeterministicAcrossCalls) {
    std::mt19937_64 rng(12);
    const Matrix x = oracle::random_matrix(rng, 25, 8);
    EXPECT_EQ(la::pca(x, 2).scores, la::pca(x, 2).scores);
}

TEST(Pearson, PerfectCorrelation) {
    const std::vector<double> a{1, 2, 3};
    EXPECT_DOUBLE_EQ(*la::pearson(a, a), 1.0);
}

TEST(Pearson, PerfectAnticorrelation) {
    const std::vector<double> a{1, 2, 3}, b{3, 2, 1};
    EXPECT_DOUBLE_EQ(*la::pearson(a, b), -1.0);
}

TEST(Pearson, ZeroVarianceIsUndefined) {
    const std::vector<double> a{1, 1, 1}, b{1, 2, 3};
    EXPECT_FALSE(la::pearson(a, b).has_value());
}

TEST(Pearson, LengthMismatch) {
    const std::vector<double> a{1, 2, 3}, b{1, 2};
    EXPECT_THROW(la::pearson(a, b), dtsne::Error);
}

TEST(Pearson, SymmetricAndAffineInvariant) {
    std::mt19937_64 rng(13);
    std::normal_distribution<double> z;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> a(30), b(30), c(30);
        for (int i = 0; i < 30; ++i) {
            a[i] = z(rng);
            b[i] = z(rng) + 0.3 * a[i];
            c[i] = 2 * a[i] + 3;
        }
        EXPECT_EQ(*la::pearson(a, b), *la::pearson(b, a));
        EXPECT_NEAR(*la::pearson(a, c), 1.0, 1e-12);
        EXPECT_NEAR(*la::pearson(a, b), *oracle::pearson(a, b), 1e-12);
    }
}

TEST(Spearman, MonotoneTransformGivesOne) {
    const std::vector<double> a{0.1, 3, 2, 8, 5}, b{std::exp(0.1), std::exp(3.0), std::exp(2.0), std::exp(8.0), std::exp(5.0)};
    EXPECT_NEAR(*la::spearman(a, b), 1.0, 1e-12);
}

TEST(Ranks, TiesShareAverageRank) {
    const std::vector<double> v{10, 20, 10, 30};
    EXPECT_EQ(la::ranks(v), (std::vector<double>{1.5, 3, 1.5, 4}));
}
