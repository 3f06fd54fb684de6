#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "persistnet/persistence.hpp"

namespace persistnet {

struct CurvePoint {
    double tau;
    double value;
};

/// OLS line through (ln tau, ln value). `mse` is the mean squared residual
/// in log-log space over the points actually used.
struct PowerLawFit {
    double exponent = 0.0;
    double log_intercept = 0.0;
    double mse = 0.0;
    double tau_lo = 0.0;
    double tau_hi = 0.0;
    std::size_t n_points = 0;
};

struct FitOptions {
    // Drop non-positive values with a warning instead of failing.
    bool drop_nonpositive = true;
};

// Fits points with tau in [tau_lo, tau_hi]. Warnings are appended when given.
PowerLawFit fit_power_law(std::span<const CurvePoint> points, double tau_lo, double tau_hi,
                          const FitOptions& options = {}, std::vector<std::string>* warnings = nullptr);

struct TwoRegimeFit {
    PowerLawFit decay;
    PowerLawFit plateau;
    std::size_t tau_plat = 0;
    double combined_mse = 0.0;  // (decay.mse + plateau.mse) / 2
    std::vector<std::string> warnings;
};

std::vector<CurvePoint> curve_points(const PersistenceCurve& curve);

/// Exhaustive breakpoint search. Segment one covers tau in [1, k], segment
/// two tau in [k, max]; the breakpoint belongs to both and each segment keeps
/// at least `min_segment` points. Minimises the unweighted mean of the two
/// MSEs; near-equal candidates resolve to the smallest k.
TwoRegimeFit fit_two_regimes(std::span<const CurvePoint> points, std::size_t min_segment = 10,
                             const FitOptions& options = {});
TwoRegimeFit fit_two_regimes(const PersistenceCurve& curve, std::size_t min_segment = 10,
                             const FitOptions& options = {});

// Combined MSE for a given breakpoint tau (both segments fit from scratch).
double combined_mse_at(std::span<const CurvePoint> points, std::size_t tau_break, const FitOptions& options = {});

// Triangle exponent rescaled by the three simultaneous edges of the motif.
double adjusted_triangle_exponent(double triangle_exponent);

}  // namespace persistnet
