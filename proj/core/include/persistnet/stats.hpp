#pragma once

#include <span>

namespace persistnet {

double mean(std::span<const double> x);

// Sample standard deviation (divisor n - 1).
double sample_std(std::span<const double> x);

// Returns 0 when either series is constant.
double pearson(std::span<const double> x, std::span<const double> y);

struct TTestResult {
    double t = 0.0;
    double dof = 0.0;
    double p_value = 1.0;  // two-sided
};

// Welch's unequal-variance two-sample t-test.
TTestResult welch_t_test(std::span<const double> a, std::span<const double> b);

}  // namespace persistnet
