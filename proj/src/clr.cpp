#include "clrspline/clr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "clrspline/quadrature.hpp"

namespace clrspline {

void Interval::validate() const {
    if (!(a < b)) throw std::invalid_argument("Interval: requires a < b");
}

ClrVector clr_discrete(const HistogramSample& sample) {
    const Eigen::Index n = sample.proportions.size();
    if (n == 0) throw std::invalid_argument("clr of an empty sample");
    Vector logs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double y = sample.proportions[i];
        if (!(y > 0.0)) {
            throw std::domain_error(
                "non-positive proportion in class " + std::to_string(i + 1) +
                " (zero counts must be imputed before the clr transform)");
        }
        logs[i] = std::log(y);
    }
    return ClrVector{logs.array() - logs.mean()};
}

Vector clr_discrete_inverse(const ClrVector& clr) {
    if (!clr.z.allFinite()) {
        throw std::invalid_argument("clr vector has non-finite entries");
    }
    const Vector shifted = clr.z.array() - clr.z.maxCoeff();
    const Vector expd = shifted.array().exp();
    return expd / expd.sum();
}

Vector clr_functional(const Vector& values, const Interval& interval) {
    interval.validate();
    const Eigen::Index m = values.size();
    if (m < 2) throw std::invalid_argument("need at least two grid values");
    Vector logs(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        if (!(values[i] > 0.0)) {
            throw std::domain_error("non-positive density value on the grid");
        }
        logs[i] = std::log(values[i]);
    }
    // composite trapezoid of ln f over the uniform grid, divided by eta
    const double h = interval.length() / static_cast<double>(m - 1);
    double integral = 0.5 * (logs[0] + logs[m - 1]);
    for (Eigen::Index i = 1; i + 1 < m; ++i) integral += logs[i];
    integral *= h;
    return logs.array() - integral / interval.length();
}

DensityCurve inverse_clr_spline(const Spline& spline, int m,
                                const Interval& interval) {
    interval.validate();
    if (m < 50) throw std::invalid_argument("grid size must be at least 50");
    if (interval.a != spline.space.a() || interval.b != spline.space.b()) {
        throw std::invalid_argument(
            "interval must coincide with the spline domain");
    }
    DensityCurve curve;
    curve.grid.resize(m);
    curve.values.resize(m);
    const double h = interval.length() / static_cast<double>(m - 1);
    double max_value = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
        const double x = (i + 1 == m) ? interval.b : interval.a + i * h;
        curve.grid[i] = x;
        curve.values[i] = evaluate(spline, x);
        max_value = std::max(max_value, curve.values[i]);
    }
    // normalizing integral of exp(s - max); the shift cancels in the ratio
    double denom = 0.0;
    const int g = spline.space.num_interior();
    for (int span = 0; span <= g; ++span) {
        denom += gauss_integrate(
            [&](double x) { return std::exp(evaluate(spline, x) - max_value); },
            spline.space.knot(span), spline.space.knot(span + 1), 16);
    }
    curve.values = (curve.values.array() - max_value).exp() / denom;
    return curve;
}

}  // namespace clrspline
