#include "persistnet/regime_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "persistnet/errors.hpp"

namespace persistnet {

namespace {

constexpr const char* kModule = "regimefit";

// Relative slack under which two combined MSEs count as a tie.
constexpr double kTieTolerance = 1e-12;

struct LogPoint {
    double tau;
    double x;
    double y;
};

PowerLawFit ols(std::span<const LogPoint> pts) {
    const double n = static_cast<double>(pts.size());
    double mx = 0.0, my = 0.0;
    for (const auto& p : pts) {
        mx += p.x;
        my += p.y;
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& p : pts) {
        sxx += (p.x - mx) * (p.x - mx);
        sxy += (p.x - mx) * (p.y - my);
    }
    PowerLawFit fit;
    fit.exponent = sxx > 0.0 ? sxy / sxx : 0.0;
    fit.log_intercept = my - fit.exponent * mx;
    double sse = 0.0;
    for (const auto& p : pts) {
        const double r = p.y - (fit.log_intercept + fit.exponent * p.x);
        sse += r * r;
    }
    fit.mse = sse / n;
    fit.n_points = pts.size();
    fit.tau_lo = pts.front().tau;
    fit.tau_hi = pts.back().tau;
    return fit;
}

std::vector<LogPoint> to_log(std::span<const CurvePoint> points, double tau_lo, double tau_hi,
                             const FitOptions& options, std::vector<std::string>* warnings) {
    std::vector<LogPoint> out;
    std::size_t dropped = 0;
    for (const auto& p : points) {
        if (p.tau < tau_lo || p.tau > tau_hi) continue;
        if (!(p.tau >= 1.0)) continue;
        if (!(p.value > 0.0)) {
            if (!options.drop_nonpositive) {
                std::ostringstream msg;
                msg << "non-positive value " << p.value << " at tau " << p.tau;
                throw DomainError(kModule, msg.str());
            }
            ++dropped;
            continue;
        }
        out.push_back({p.tau, std::log(p.tau), std::log(p.value)});
    }
    if (dropped > 0 && warnings) {
        warnings->push_back("dropped " + std::to_string(dropped) + " non-positive point(s) from log-log fit");
    }
    std::sort(out.begin(), out.end(), [](const LogPoint& a, const LogPoint& b) { return a.tau < b.tau; });
    return out;
}

}  // namespace

PowerLawFit fit_power_law(std::span<const CurvePoint> points, double tau_lo, double tau_hi,
                          const FitOptions& options, std::vector<std::string>* warnings) {
    const auto pts = to_log(points, tau_lo, tau_hi, options, warnings);
    if (pts.size() < 2) {
        throw InsufficientDataError(kModule, "power-law fit needs at least 2 usable points in [" +
                                                 std::to_string(tau_lo) + ", " + std::to_string(tau_hi) + "]");
    }
    return ols(pts);
}

std::vector<CurvePoint> curve_points(const PersistenceCurve& curve) {
    std::vector<CurvePoint> pts;
    pts.reserve(curve.taus.size());
    for (std::size_t i = 0; i < curve.taus.size(); ++i) {
        pts.push_back({static_cast<double>(curve.taus[i]), curve.values[i]});
    }
    return pts;
}

TwoRegimeFit fit_two_regimes(const PersistenceCurve& curve, std::size_t min_segment, const FitOptions& options) {
    return fit_two_regimes(curve_points(curve), min_segment, options);
}

TwoRegimeFit fit_two_regimes(std::span<const CurvePoint> points, std::size_t min_segment,
                             const FitOptions& options) {
    if (min_segment < 2) throw ParameterError(kModule, "min_segment must be at least 2");
    TwoRegimeFit result;
    const auto pts = to_log(points, 1.0, std::numeric_limits<double>::infinity(), options, &result.warnings);
    const std::size_t m = pts.size();
    // k is the index of the shared breakpoint: [0, k] and [k, m-1].
    if (m + 1 < 2 * min_segment || m < min_segment) {
        throw InsufficientDataError(kModule, "two-regime fit needs at least " + std::to_string(2 * min_segment - 1) +
                                                 " usable points, got " + std::to_string(m));
    }
    const std::size_t k_lo = min_segment - 1;
    const std::size_t k_hi = m - min_segment;
    if (k_lo > k_hi) {
        throw InsufficientDataError(kModule, "not enough points for two segments of " +
                                                 std::to_string(min_segment));
    }

    std::vector<double> combined(k_hi - k_lo + 1);
    std::vector<PowerLawFit> first(combined.size()), second(combined.size());
    for (std::size_t k = k_lo; k <= k_hi; ++k) {
        const std::span<const LogPoint> all(pts);
        first[k - k_lo] = ols(all.subspan(0, k + 1));
        second[k - k_lo] = ols(all.subspan(k));
        combined[k - k_lo] = 0.5 * (first[k - k_lo].mse + second[k - k_lo].mse);
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < combined.size(); ++i) {
        const double slack = kTieTolerance * std::max(1.0, std::abs(combined[best]));
        if (combined[i] < combined[best] - slack) best = i;
    }

    result.decay = first[best];
    result.plateau = second[best];
    result.tau_plat = static_cast<std::size_t>(pts[best + k_lo].tau);
    result.combined_mse = combined[best];
    if (std::abs(result.plateau.exponent) > std::abs(result.decay.exponent)) {
        std::ostringstream msg;
        msg << "plateau exponent " << result.plateau.exponent << " steeper than decay exponent "
            << result.decay.exponent;
        result.warnings.push_back(msg.str());
    }
    return result;
}

double combined_mse_at(std::span<const CurvePoint> points, std::size_t tau_break, const FitOptions& options) {
    const double b = static_cast<double>(tau_break);
    const auto lo = fit_power_law(points, 1.0, b, options);
    const auto hi = fit_power_law(points, b, std::numeric_limits<double>::infinity(), options);
    return 0.5 * (lo.mse + hi.mse);
}

double adjusted_triangle_exponent(double triangle_exponent) { return triangle_exponent / 3.0; }

}  // namespace persistnet
