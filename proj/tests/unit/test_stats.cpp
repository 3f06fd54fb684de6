#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "persistnet/stats.hpp"

using namespace persistnet;

TEST(Stats, MeanAndSampleStd) {
    const std::vector<double> x{2, 4, 4, 4, 5, 5, 7, 9};
    EXPECT_DOUBLE_EQ(mean(x), 5.0);
    EXPECT_NEAR(sample_std(x), std::sqrt(32.0 / 7.0), 1e-15);
}

TEST(Stats, Pearson) {
    const std::vector<double> x{1, 2, 3, 4, 5};
    const std::vector<double> y{2, 4, 6, 8, 10};
    const std::vector<double> z{5, 4, 3, 2, 1};
    const std::vector<double> c{3, 3, 3, 3, 3};
    EXPECT_NEAR(pearson(x, y), 1.0, 1e-15);
    EXPECT_NEAR(pearson(x, z), -1.0, 1e-15);
    EXPECT_EQ(pearson(x, c), 0.0);
}

// Reference values from scipy.stats.ttest_ind(a, b, equal_var=False).
TEST(Stats, WelchMatchesReference) {
    const std::vector<double> a{1, 2, 3, 4, 5};
    const std::vector<double> b{2, 4, 6, 8, 10};
    const auto r = welch_t_test(a, b);
    EXPECT_NEAR(r.t, -1.8973665961010275, 1e-12);
    EXPECT_NEAR(r.dof, 5.882352941176471, 1e-12);
    EXPECT_NEAR(r.p_value, 0.10753119493062718, 1e-10);

    const std::vector<double> c{0.3, 0.1, 0.4, 0.15, 0.9, 0.26};
    const std::vector<double> d{0.5, 0.35, 0.8, 0.97, 0.93, 0.23, 0.84};
    const auto s = welch_t_test(c, d);
    EXPECT_NEAR(s.t, -1.8941475215504548, 1e-12);
    EXPECT_NEAR(s.dof, 10.778469249703548, 1e-10);
    EXPECT_NEAR(s.p_value, 0.08533586204844634, 1e-10);
}

TEST(Stats, WelchSymmetricAndDegenerate) {
    const std::vector<double> a{1, 2, 3, 4, 5};
    const std::vector<double> b{2, 4, 6, 8, 10};
    EXPECT_NEAR(welch_t_test(b, a).t, -welch_t_test(a, b).t, 1e-15);
    EXPECT_NEAR(welch_t_test(b, a).p_value, welch_t_test(a, b).p_value, 1e-15);
    const std::vector<double> k{1, 1, 1};
    EXPECT_EQ(welch_t_test(k, k).p_value, 1.0);
}
