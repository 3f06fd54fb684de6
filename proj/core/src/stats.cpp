#include "persistnet/stats.hpp"

#include <cmath>

#include <boost/math/distributions/students_t.hpp>

#include "persistnet/errors.hpp"

namespace persistnet {

namespace {
constexpr const char* kModule = "stats";
}

double mean(std::span<const double> x) {
    if (x.empty()) throw InsufficientDataError(kModule, "mean of empty series");
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

double sample_std(std::span<const double> x) {
    if (x.size() < 2) throw InsufficientDataError(kModule, "sample standard deviation needs 2 observations");
    const double m = mean(x);
    double ss = 0.0;
    for (double v : x) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DimensionError(kModule, "pearson: length mismatch");
    if (x.size() < 2) throw InsufficientDataError(kModule, "pearson needs 2 observations");
    const double mx = mean(x);
    const double my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

TTestResult welch_t_test(std::span<const double> a, std::span<const double> b) {
    const double va = std::pow(sample_std(a), 2) / static_cast<double>(a.size());
    const double vb = std::pow(sample_std(b), 2) / static_cast<double>(b.size());
    TTestResult r;
    const double se2 = va + vb;
    if (se2 == 0.0) {
        r.t = 0.0;
        r.dof = static_cast<double>(a.size() + b.size() - 2);
        r.p_value = mean(a) == mean(b) ? 1.0 : 0.0;
        return r;
    }
    r.t = (mean(a) - mean(b)) / std::sqrt(se2);
    r.dof = se2 * se2 /
            (va * va / static_cast<double>(a.size() - 1) + vb * vb / static_cast<double>(b.size() - 1));
    boost::math::students_t dist(r.dof);
    r.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(r.t)));
    return r;
}

}  // namespace persistnet
