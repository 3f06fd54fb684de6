#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "persistnet/correlation.hpp"
#include "persistnet/errors.hpp"

using namespace persistnet;

namespace {

WeightVector raw(std::vector<double> w) { return WeightVector{std::move(w), 0.0}; }

double kendall(const std::vector<double>& x, const std::vector<double>& y, const WeightVector& w) {
    return weighted_kendall(x, y, w);
}

ReturnWindow window_of(const Eigen::MatrixXd& m) {
    ReturnWindow w;
    w.end_index = static_cast<std::size_t>(m.rows()) - 1;
    w.length = static_cast<std::size_t>(m.rows());
    w.values = m;
    for (Eigen::Index i = 0; i < m.cols(); ++i) w.assets.push_back("S" + std::to_string(i));
    return w;
}

}  // namespace

TEST(Weights, UniformLimit) {
    const auto w = exponential_weights(2, 1e9);
    EXPECT_NEAR(w.weights[0], 0.5, 1e-9);
    EXPECT_NEAR(w.weights[1], 0.5, 1e-9);
}

TEST(Weights, ThreeDaySoftmax) {
    // softmax over (-2, -1, 0)
    const double z = std::exp(-2.0) + std::exp(-1.0) + 1.0;
    const auto w = exponential_weights(3, 1.0);
    EXPECT_NEAR(w.weights[0], std::exp(-2.0) / z, 1e-15);
    EXPECT_NEAR(w.weights[1], std::exp(-1.0) / z, 1e-15);
    EXPECT_NEAR(w.weights[2], 1.0 / z, 1e-15);
    EXPECT_NEAR(w.weights[0], 0.09003, 1e-5);
    EXPECT_NEAR(w.weights[1], 0.24473, 1e-5);
    EXPECT_NEAR(w.weights[2], 0.66524, 1e-5);
}

TEST(Weights, DefaultWindowRatio) {
    const auto w = exponential_weights(126, 46.0);
    EXPECT_NEAR(w.weights[125] / w.weights[0], std::exp(125.0 / 46.0), 1e-11);
    EXPECT_NEAR(w.weights[125] / w.weights[0], 15.1408, 5e-4);
    double sum = 0.0;
    for (double v : w.weights) sum += v;
    EXPECT_NEAR(sum, 1.0, 1e-12);
    for (std::size_t t = 1; t < w.size(); ++t) {
        EXPECT_GT(w.weights[t], w.weights[t - 1]);
        EXPECT_NEAR(w.weights[t] / w.weights[t - 1], std::exp(1.0 / 46.0), 1e-12);
    }
}

TEST(Weights, BadArguments) {
    EXPECT_THROW(exponential_weights(10, 0.0), ParameterError);
    EXPECT_THROW(exponential_weights(10, -3.0), ParameterError);
}

TEST(Kendall, PerfectConcordanceAndDiscordance) {
    const std::vector<double> x{0.3, -1.0, 2.0, 0.7, 5.0};
    std::vector<double> neg;
    for (double v : x) neg.push_back(-v);
    const auto w = exponential_weights(5, 2.0);
    EXPECT_EQ(kendall(x, x, w), 1.0);
    EXPECT_EQ(kendall(x, neg, w), -1.0);
}

TEST(Kendall, HandEnumeratedCases) {
    const std::vector<double> x{1, 2, 3}, y{1, 3, 2};
    EXPECT_NEAR(kendall(x, y, uniform_weights(3)), 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(kendall(x, y, raw({0.5, 0.25, 0.25})), 0.6, 1e-15);
}

TEST(Kendall, Errors) {
    EXPECT_THROW(kendall({1, 2}, {1, 2, 3}, uniform_weights(3)), DimensionError);
    EXPECT_THROW(kendall({1}, {1}, raw({1.0})), InsufficientDataError);
}

TEST(Kendall, MatchesBruteForceBitwise) {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> len(2, 50);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> pos(0.01, 1.0);
    std::uniform_int_distribution<int> ticks(-3, 3);
    for (int rep = 0; rep < 300; ++rep) {
        const int n = len(rng);
        std::vector<double> x(n), y(n), w(n);
        for (int i = 0; i < n; ++i) {
            // every third case uses a coarse grid so ties occur
            x[i] = rep % 3 == 0 ? ticks(rng) : normal(rng);
            y[i] = rep % 3 == 0 ? ticks(rng) : normal(rng);
            w[i] = pos(rng);
        }
        EXPECT_EQ(kendall(x, y, raw(w)), oracle::weighted_kendall(x, y, w)) << "case " << rep;
    }
}

TEST(Kendall, UniformWeightsEqualTauA) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> ticks(-4, 4);
    for (int n : {2, 3, 7, 16, 33, 50}) {
        std::vector<double> x(n), y(n);
        for (int i = 0; i < n; ++i) {
            x[i] = ticks(rng);
            y[i] = ticks(rng);
        }
        EXPECT_EQ(kendall(x, y, raw(std::vector<double>(n, 1.0))), oracle::tau_a(x, y)) << n;
        EXPECT_NEAR(kendall(x, y, uniform_weights(n)), oracle::tau_a(x, y), 1e-15) << n;
    }
}

TEST(Kendall, MonotoneTransformInvariance) {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> normal;
    std::vector<double> x(40), y(40), ex(40), cube(40);
    for (int i = 0; i < 40; ++i) {
        x[i] = normal(rng);
        y[i] = normal(rng);
        ex[i] = std::exp(x[i]);
        cube[i] = y[i] * y[i] * y[i] + 2.0;
    }
    const auto w = exponential_weights(40, 10.0);
    EXPECT_EQ(kendall(x, y, w), kendall(ex, cube, w));
}

TEST(Kendall, JointPermutationInvariance) {
    std::mt19937_64 rng(10);
    std::normal_distribution<double> normal;
    const int n = 30;
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
        x[i] = normal(rng);
        y[i] = 0.5 * x[i] + normal(rng);
    }
    const auto w = exponential_weights(n, 7.0).weights;
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<double> px(n), py(n), pw(n);
    for (int i = 0; i < n; ++i) {
        px[i] = x[perm[i]];
        py[i] = y[perm[i]];
        pw[i] = w[perm[i]];
    }
    EXPECT_NEAR(kendall(x, y, raw(w)), kendall(px, py, raw(pw)), 1e-14);
}

TEST(CorrelationMatrix, EntriesEqualPairwiseKendall) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> normal;
    Eigen::MatrixXd m(60, 6);
    for (Eigen::Index t = 0; t < m.rows(); ++t)
        for (Eigen::Index a = 0; a < m.cols(); ++a) m(t, a) = normal(rng);
    const auto w = exponential_weights(60, 46.0);
    const auto c = correlation_matrix(window_of(m), w);
    for (Eigen::Index i = 0; i < 6; ++i) {
        EXPECT_EQ(c.values(i, i), 1.0);
        for (Eigen::Index j = 0; j < 6; ++j) {
            if (i == j) continue;
            std::vector<double> x(m.col(i).data(), m.col(i).data() + 60);
            std::vector<double> y(m.col(j).data(), m.col(j).data() + 60);
            EXPECT_EQ(c.values(i, j), oracle::weighted_kendall(x, y, w.weights));
        }
    }
}

TEST(CorrelationMatrix, IdenticalColumns) {
    Eigen::MatrixXd m(20, 2);
    for (int t = 0; t < 20; ++t) m(t, 0) = m(t, 1) = std::sin(t * 1.3);
    const auto c = correlation_matrix(window_of(m), uniform_weights(20));
    EXPECT_EQ(c.values(0, 1), 1.0);
}

TEST(CorrelationMatrix, IndependentCoinFlipsNearZero) {
    std::mt19937_64 rng(77);
    std::bernoulli_distribution coin;
    Eigen::MatrixXd m(500, 3);
    for (Eigen::Index t = 0; t < 500; ++t)
        for (Eigen::Index a = 0; a < 3; ++a) m(t, a) = coin(rng) ? 1.0 : -1.0;
    const auto c = correlation_matrix(window_of(m), uniform_weights(500));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            EXPECT_LT(std::abs(c.values(i, j)), 0.15);
        }
}

TEST(CorrelationMatrix, HundredAssetInvariants) {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> normal;
    Eigen::MatrixXd m(126, 100);
    for (Eigen::Index t = 0; t < 126; ++t)
        for (Eigen::Index a = 0; a < 100; ++a) m(t, a) = normal(rng);
    const auto c = correlation_matrix(window_of(m), exponential_weights(126, 46.0));
    ASSERT_EQ(c.values.rows(), 100);
    EXPECT_EQ((c.values - c.values.transpose()).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(c.values.diagonal(), Eigen::VectorXd::Ones(100));
    EXPECT_LE(c.values.maxCoeff(), 1.0);
    EXPECT_GE(c.values.minCoeff(), -1.0);
}

TEST(CorrelationMatrix, GaussianCopulaMatchesArcsine) {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> normal;
    for (double rho : {0.3, 0.6, 0.9}) {
        Eigen::MatrixXd m(5000, 2);
        for (Eigen::Index t = 0; t < 5000; ++t) {
            const double z1 = normal(rng), z2 = normal(rng);
            m(t, 0) = z1;
            m(t, 1) = rho * z1 + std::sqrt(1.0 - rho * rho) * z2;
        }
        const auto c = correlation_matrix(window_of(m), uniform_weights(5000));
        EXPECT_NEAR(c.values(0, 1), 2.0 / std::numbers::pi * std::asin(rho), 0.02) << rho;
    }
}

TEST(CorrelationMatrix, ConstantColumnRejected) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Random(10, 2);
    m.col(1).setConstant(0.5);
    EXPECT_THROW(require_non_degenerate(window_of(m)), ValidationError);
}

TEST(CorrelationMatrix, CsvDump) {
    Eigen::MatrixXd m(4, 2);
    m << 1, 2, 2, 1, 3, 4, 4, 3;
    const auto c = correlation_matrix(window_of(m), uniform_weights(4));
    std::ostringstream out;
    write_matrix_csv(out, c);
    EXPECT_EQ(out.str(), "asset,S0,S1\nS0,1,0.333333333333\nS1,0.333333333333,1\n");
}
