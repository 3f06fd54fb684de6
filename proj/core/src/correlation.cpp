#include "persistnet/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <ostream>

#include "persistnet/errors.hpp"

namespace persistnet {

namespace {

constexpr const char* kModule = "correlation";

// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            carry_ += (sum_ - t) + x;
        } else {
            carry_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

int sign(double v) { return (v > 0.0) - (v < 0.0); }

// Pairwise weight products in (i < j) row-major order, shared by every
// asset pair of a window.
struct PairTable {
    std::vector<double> products;
    double normalizer = 0.0;

    explicit PairTable(const std::vector<double>& w) {
        const std::size_t n = w.size();
        products.reserve(n * (n - 1) / 2);
        CompensatedSum norm;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double p = w[i] * w[j];
                norm.add(p);
                products.push_back(p);
            }
        }
        normalizer = norm.value();
    }
};

std::vector<std::int8_t> pair_signs(const double* x, std::size_t n) {
    std::vector<std::int8_t> s;
    s.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            s.push_back(static_cast<std::int8_t>(sign(x[i] - x[j])));
        }
    }
    return s;
}

double finish(double numerator, double normalizer) {
    return std::clamp(numerator / normalizer, -1.0, 1.0);
}

}  // namespace

WeightVector exponential_weights(std::size_t length, double theta) {
    if (length < 2) {
        throw InsufficientDataError(kModule, "weight vector needs length >= 2");
    }
    if (!(theta > 0.0) || !std::isfinite(theta)) {
        throw ParameterError(kModule, "theta must be a positive finite number");
    }
    WeightVector w;
    w.theta = theta;
    w.weights.resize(length);
    // w[t] proportional to exp((t - length) / theta), t = 1..length
    CompensatedSum total;
    for (std::size_t t = 1; t <= length; ++t) {
        const double v = std::exp((static_cast<double>(t) - static_cast<double>(length)) / theta);
        w.weights[t - 1] = v;
        total.add(v);
    }
    const double norm = total.value();
    for (auto& v : w.weights) v /= norm;
    return w;
}

WeightVector uniform_weights(std::size_t length) {
    if (length < 2) {
        throw InsufficientDataError(kModule, "weight vector needs length >= 2");
    }
    WeightVector w;
    w.theta = std::numeric_limits<double>::infinity();
    w.weights.assign(length, 1.0 / static_cast<double>(length));
    return w;
}

double weighted_kendall(std::span<const double> x, std::span<const double> y, const WeightVector& w) {
    if (x.size() != y.size() || x.size() != w.size()) {
        throw DimensionError(kModule, "series lengths (" + std::to_string(x.size()) + ", " +
                                          std::to_string(y.size()) + ") do not match weight length " +
                                          std::to_string(w.size()));
    }
    const std::size_t n = x.size();
    if (n < 2) {
        throw InsufficientDataError(kModule, "weighted Kendall needs at least 2 observations");
    }
    CompensatedSum num;
    CompensatedSum den;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double p = w.weights[i] * w.weights[j];
            num.add(p * static_cast<double>(sign(x[i] - x[j]) * sign(y[i] - y[j])));
            den.add(p);
        }
    }
    return finish(num.value(), den.value());
}

void require_non_degenerate(const ReturnWindow& window) {
    for (Eigen::Index i = 0; i < window.values.cols(); ++i) {
        const auto col = window.values.col(i);
        if ((col.array() == col(0)).all()) {
            throw ValidationError(kModule, "asset " + window.assets[static_cast<std::size_t>(i)] +
                                               " has constant returns in window ending at " +
                                               std::to_string(window.end_index));
        }
    }
}

CorrelationMatrix correlation_matrix(const ReturnWindow& window, const WeightVector& w) {
    const auto n = static_cast<std::size_t>(window.values.rows());
    if (n != w.size()) {
        throw DimensionError(kModule, "window length " + std::to_string(n) + " does not match weight length " +
                                          std::to_string(w.size()));
    }
    if (n < 2) {
        throw InsufficientDataError(kModule, "weighted Kendall needs at least 2 observations");
    }
    const auto n_assets = static_cast<std::size_t>(window.values.cols());
    for (Eigen::Index i = 0; i < window.values.cols(); ++i) {
        if (!window.values.col(i).allFinite()) {
            throw ValidationError(kModule, "non-finite return for asset " + window.assets[static_cast<std::size_t>(i)]);
        }
    }

    const PairTable table(w.weights);
    std::vector<std::vector<std::int8_t>> signs(n_assets);
    for (std::size_t a = 0; a < n_assets; ++a) {
        signs[a] = pair_signs(window.values.col(static_cast<Eigen::Index>(a)).data(), n);
    }

    CorrelationMatrix out;
    out.assets = window.assets;
    out.values = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n_assets), static_cast<Eigen::Index>(n_assets));
    const std::size_t n_pairs = table.products.size();
    for (std::size_t a = 0; a < n_assets; ++a) {
        const auto* sa = signs[a].data();
        for (std::size_t b = a + 1; b < n_assets; ++b) {
            const auto* sb = signs[b].data();
            CompensatedSum num;
            for (std::size_t k = 0; k < n_pairs; ++k) {
                num.add(table.products[k] * static_cast<double>(sa[k] * sb[k]));
            }
            const double tau = finish(num.value(), table.normalizer);
            out.values(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = tau;
            out.values(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = tau;
        }
    }
    return out;
}

void write_matrix_csv(std::ostream& out, const CorrelationMatrix& m) {
    out << "asset";
    for (const auto& a : m.assets) out << ',' << a;
    out << '\n' << std::setprecision(12);
    for (std::size_t i = 0; i < m.size(); ++i) {
        out << m.assets[i];
        for (std::size_t j = 0; j < m.size(); ++j) {
            out << ',' << m.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
        out << '\n';
    }
}

}  // namespace persistnet
