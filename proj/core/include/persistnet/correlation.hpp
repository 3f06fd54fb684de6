#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "persistnet/ingest.hpp"

namespace persistnet {

/// Observation weights for a correlation window, oldest first. Weights sum
/// to one and grow by a constant factor exp(1/theta) per day toward the most
/// recent observation.
struct WeightVector {
    std::vector<double> weights;
    double theta = 0.0;

    std::size_t size() const { return weights.size(); }
};

WeightVector exponential_weights(std::size_t length, double theta);

// theta recorded as +inf.
WeightVector uniform_weights(std::size_t length);

/// Weighted Kendall tau (tau-a form):
///   sum_{i<j} w_i w_j sgn(x_i - x_j) sgn(y_i - y_j) / sum_{i<j} w_i w_j
/// Ties contribute zero to the numerator but stay in the normalizer.
/// Both sums are accumulated with Neumaier compensation in (i, j) order,
/// and the quotient is clamped to [-1, 1].
double weighted_kendall(std::span<const double> x, std::span<const double> y, const WeightVector& w);

struct CorrelationMatrix {
    std::vector<std::string> assets;
    Eigen::MatrixXd values;

    std::size_t size() const { return assets.size(); }
};

// Entry (i, j) equals weighted_kendall(column i, column j, w) bitwise.
CorrelationMatrix correlation_matrix(const ReturnWindow& window, const WeightVector& w);

// Rejects assets whose window column is constant (every pair tied).
void require_non_degenerate(const ReturnWindow& window);

void write_matrix_csv(std::ostream& out, const CorrelationMatrix& m);

}  // namespace persistnet
