#pragma once

#include "clrspline/spline.hpp"
#include "clrspline/types.hpp"

namespace clrspline {

/// Closed support interval of a density, with eta = b - a.
struct Interval {
    double a = 0.0;
    double b = 1.0;

    double length() const { return b - a; }
    void validate() const;
};

/// One distribution-valued observation: class midpoints with strictly
/// positive proportions. Zero counts must be imputed upstream before
/// ingestion; this module refuses them.
struct HistogramSample {
    Vector midpoints;
    Vector proportions;
};

/// Discrete clr vector; sums to zero when produced by clr_discrete.
struct ClrVector {
    Vector z;
};

/// Density samples on a grid in [a, b]; positive with unit integral.
struct DensityCurve {
    Vector grid;
    Vector values;
};

/// z_i = ln y_i - mean(ln y). Throws std::domain_error, naming the class,
/// for non-positive proportions. Scale-invariant in the input.
ClrVector clr_discrete(const HistogramSample& sample);

/// Exponentiates (guarded by max subtraction) and normalizes to unit sum;
/// inverse of clr_discrete on zero-sum vectors.
Vector clr_discrete_inverse(const ClrVector& clr);

/// Functional clr of positive values sampled on a uniform grid spanning the
/// interval: ln f minus its interval mean, with the mean integral taken by
/// composite trapezoid on the grid.
Vector clr_functional(const Vector& values, const Interval& interval);

/// Back-transformation of a fitted clr spline to a density curve on m
/// equally spaced points: exp(s) normalized by its integral over the
/// interval (per-span Gauss-Legendre, 16 nodes, after max subtraction).
/// The interval must coincide with the spline's domain; m >= 50.
DensityCurve inverse_clr_spline(const Spline& spline, int m,
                                const Interval& interval);

}  // namespace clrspline
