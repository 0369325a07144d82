#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "clrspline/dataset.hpp"
#include "clrspline/smoothing.hpp"
#include "clrspline/spline.hpp"
#include "clrspline/types.hpp"

namespace clrspline {

enum class FitMode { zero_integral_clr, unconstrained_raw };

FitMode parse_fit_mode(const std::string& name);
const char* to_string(FitMode mode);

/// Pipeline configuration. Defaults reproduce the SHIW income case study:
/// cubic splines with knots 0 < 30000 < 70000 < 110709, second-derivative
/// penalty, alpha = 1, unit weights, zero-integral clr mode, 500-point grid.
struct FitConfig {
    KnotConfig knots{0.0, 110709.0, {30000.0, 70000.0}, 3};
    int order = 2;
    double alpha = 1.0;
    std::vector<double> weights;  // empty = unit, one value = scalar, else per-point
    FitMode mode = FitMode::zero_integral_clr;
    int grid_size = 500;
    double rcond = kDefaultRcond;
};

/// Loads a flat JSON config ({"knots": [a,...,b], "degree": k, "order": l,
/// "alpha": v, "weights": v|[...], "mode": "...", "grid_size": m,
/// "rcond": v}); keys are optional and fall back to the defaults above.
FitConfig load_fit_config(const std::string& path);

/// Spline knot layout for a dataset under the given mode: the configured
/// knots in clr mode; in raw comparison mode the interior knots are the data
/// midpoints that lie strictly inside (a, b).
KnotConfig knots_for_mode(const FitConfig& config, const Dataset& dataset);

/// One fitted row with its diagnostics; `ok` requires a consistent solve and,
/// for constrained fits, the zero-integral invariant
/// |integral| <= 1e-8 (b-a) max(1, max|b*|).
struct RowFit {
    std::string label;
    std::string group;
    Spline spline;
    Vector ordinates;  // clr values (clr mode) or raw proportions (raw mode)
    double objective = 0.0;
    double penalty = 0.0;
    double weighted_residual = 0.0;
    double integral = 0.0;
    double weighted_identity = 0.0;  // sum_i b_i (lambda_{i+k+1} - lambda_i)
    SolveReport report;
    bool ok = false;
};

struct FitResult {
    std::vector<RowFit> rows;
    bool all_ok = false;
};

/// Fits every dataset row under the configured mode, in input order.
FitResult fit_dataset(const Dataset& dataset, const FitConfig& config);

/// clr table in the input layout, 6-decimal values.
void write_clr_csv(const Dataset& dataset, std::ostream& out);

/// Coefficient table: label,group,b_-k,...,b_g,objective,integral,rank,consistent.
void write_coefficients_csv(const FitResult& result, const FitConfig& config,
                            std::ostream& out);

/// Long-format curve samples: label,group,x,clr_value,density_value on
/// grid_size equally spaced points of the spline domain. In raw mode both
/// value columns carry the fitted spline value (no back-transformation
/// applies).
void write_curves_csv(const FitResult& result, const FitConfig& config,
                      std::ostream& out);

/// Human-readable per-row summary plus the weighted-identity residuals.
void write_report(const FitResult& result, const FitConfig& config,
                  std::ostream& out);

/// Input-layout CSV of a dataset (round-trip counterpart of
/// parse_histogram_csv).
void write_dataset_csv(const Dataset& dataset, std::ostream& out);

}  // namespace clrspline
