#include "clrspline/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "clrspline/clr.hpp"

namespace clrspline {

namespace {

std::string fmt(const char* format, double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, value);
    return buf;
}

std::string fixed6(double v) { return fmt("%.6f", v); }
std::string sci(double v) { return fmt("%.6e", v); }
std::string general(double v) { return fmt("%.10g", v); }

Vector resolve_weights(const FitConfig& config, Eigen::Index n) {
    if (config.weights.empty()) return Vector::Ones(n);
    if (config.weights.size() == 1) {
        return Vector::Constant(n, config.weights.front());
    }
    if (static_cast<Eigen::Index>(config.weights.size()) != n) {
        throw std::invalid_argument(
            "weights must be empty, a single value, or one per data point");
    }
    return Eigen::Map<const Vector>(config.weights.data(), n);
}

}  // namespace

FitMode parse_fit_mode(const std::string& name) {
    if (name == "zero_integral_clr") return FitMode::zero_integral_clr;
    if (name == "unconstrained_raw") return FitMode::unconstrained_raw;
    throw std::invalid_argument("unknown mode '" + name +
                                "' (expected zero_integral_clr or "
                                "unconstrained_raw)");
}

const char* to_string(FitMode mode) {
    return mode == FitMode::zero_integral_clr ? "zero_integral_clr"
                                              : "unconstrained_raw";
}

FitConfig load_fit_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(path + ": invalid JSON: " + e.what());
    }
    FitConfig config;
    if (j.contains("knots")) {
        const auto knots = j.at("knots").get<std::vector<double>>();
        if (knots.size() < 2) {
            throw std::runtime_error(path + ": 'knots' needs at least a and b");
        }
        config.knots.a = knots.front();
        config.knots.b = knots.back();
        config.knots.interior.assign(knots.begin() + 1, knots.end() - 1);
    }
    if (j.contains("degree")) config.knots.degree = j.at("degree").get<int>();
    if (j.contains("order")) config.order = j.at("order").get<int>();
    if (j.contains("alpha")) config.alpha = j.at("alpha").get<double>();
    if (j.contains("weights")) {
        const auto& w = j.at("weights");
        if (w.is_number()) {
            config.weights = {w.get<double>()};
        } else {
            config.weights = w.get<std::vector<double>>();
        }
    }
    if (j.contains("mode")) {
        config.mode = parse_fit_mode(j.at("mode").get<std::string>());
    }
    if (j.contains("grid_size")) config.grid_size = j.at("grid_size").get<int>();
    if (j.contains("rcond")) config.rcond = j.at("rcond").get<double>();
    return config;
}

KnotConfig knots_for_mode(const FitConfig& config, const Dataset& dataset) {
    if (config.mode == FitMode::zero_integral_clr) return config.knots;
    KnotConfig raw = config.knots;
    raw.interior.clear();
    for (Eigen::Index i = 0; i < dataset.midpoints.size(); ++i) {
        const double x = dataset.midpoints[i];
        if (x > raw.a && x < raw.b) raw.interior.push_back(x);
    }
    return raw;
}

FitResult fit_dataset(const Dataset& dataset, const FitConfig& config) {
    const KnotConfig knots = knots_for_mode(config, dataset);
    const SplineSpace space = build_space(knots);
    const Vector weights = resolve_weights(config, dataset.midpoints.size());

    FitResult result;
    result.all_ok = true;
    for (int r = 0; r < dataset.rows(); ++r) {
        const Vector proportions = dataset.proportions.row(r).transpose();
        Vector ordinates;
        if (config.mode == FitMode::zero_integral_clr) {
            ordinates =
                clr_discrete(HistogramSample{dataset.midpoints, proportions}).z;
        } else {
            ordinates = proportions;
        }
        SmoothingProblem problem(dataset.midpoints, ordinates, weights,
                                 config.alpha, config.order, space);
        SmoothingSolution solution =
            config.mode == FitMode::zero_integral_clr
                ? fit_zero_integral(problem, config.rcond)
                : fit_unconstrained(problem, config.rcond);

        RowFit fit{dataset.labels[r],
                   dataset.groups[r],
                   solution.spline,
                   std::move(ordinates),
                   solution.objective,
                   0.0,
                   0.0,
                   integrate(solution.spline),
                   0.0,
                   solution.report,
                   false};
        const ObjectiveTerms terms = objective_terms(problem, fit.spline.coeffs);
        fit.penalty = terms.penalty;
        fit.weighted_residual = terms.weighted_residual;
        fit.weighted_identity = fit.integral * (space.degree() + 1);

        fit.ok = fit.report.consistent;
        if (config.mode == FitMode::zero_integral_clr) {
            const double scale = (space.b() - space.a()) *
                                 std::max(1.0, fit.spline.coeffs.cwiseAbs().maxCoeff());
            fit.ok = fit.ok && std::abs(fit.integral) <= 1e-8 * scale;
        }
        result.all_ok = result.all_ok && fit.ok;
        result.rows.push_back(std::move(fit));
    }
    return result;
}

void write_clr_csv(const Dataset& dataset, std::ostream& out) {
    out << "label,group";
    for (int j = 0; j < dataset.classes(); ++j) {
        out << ',' << general(dataset.midpoints[j]);
    }
    out << '\n';
    for (int r = 0; r < dataset.rows(); ++r) {
        const Vector z = clr_discrete(HistogramSample{
                                          dataset.midpoints,
                                          dataset.proportions.row(r).transpose()})
                             .z;
        out << dataset.labels[r] << ',' << dataset.groups[r];
        for (Eigen::Index j = 0; j < z.size(); ++j) out << ',' << fixed6(z[j]);
        out << '\n';
    }
}

void write_coefficients_csv(const FitResult& result, const FitConfig& config,
                            std::ostream& out) {
    const int k = config.knots.degree;
    out << "label,group";
    if (!result.rows.empty()) {
        for (int i = -k; i <= result.rows.front().spline.space.num_interior();
             ++i) {
            out << ",b_" << i;
        }
    }
    out << ",objective,integral,rank,consistent\n";
    for (const RowFit& row : result.rows) {
        out << row.label << ',' << row.group;
        for (Eigen::Index i = 0; i < row.spline.coeffs.size(); ++i) {
            out << ',' << fixed6(row.spline.coeffs[i]);
        }
        out << ',' << sci(row.objective) << ',' << sci(row.integral) << ','
            << row.report.rank << ',' << (row.report.consistent ? 1 : 0)
            << '\n';
    }
}

void write_curves_csv(const FitResult& result, const FitConfig& config,
                      std::ostream& out) {
    if (config.grid_size < 2) {
        throw std::invalid_argument("curve grid needs at least two points");
    }
    out << "label,group,x,clr_value,density_value\n";
    for (const RowFit& row : result.rows) {
        const SplineSpace& space = row.spline.space;
        const int m = config.grid_size;
        if (config.mode == FitMode::zero_integral_clr) {
            const DensityCurve curve = inverse_clr_spline(
                row.spline, m, Interval{space.a(), space.b()});
            for (int i = 0; i < m; ++i) {
                out << row.label << ',' << row.group << ','
                    << general(curve.grid[i]) << ','
                    << general(evaluate(row.spline, curve.grid[i])) << ','
                    << general(curve.values[i]) << '\n';
            }
        } else {
            const double h = (space.b() - space.a()) / (m - 1);
            for (int i = 0; i < m; ++i) {
                const double x = (i + 1 == m) ? space.b() : space.a() + i * h;
                const double value = evaluate(row.spline, x);
                // no clr back-transformation in the raw comparison mode: the
                // fitted spline itself plays the density role
                out << row.label << ',' << row.group << ',' << general(x) << ','
                    << general(value) << ',' << general(value) << '\n';
            }
        }
    }
}

void write_report(const FitResult& result, const FitConfig& config,
                  std::ostream& out) {
    out << "mode: " << to_string(config.mode) << "  rows: " << result.rows.size()
        << "  status: " << (result.all_ok ? "ok" : "FAILED") << "\n";
    for (const RowFit& row : result.rows) {
        out << row.label << " [" << row.group << "]\n"
            << "  objective:          " << sci(row.objective) << '\n'
            << "  weighted residual:  " << sci(row.weighted_residual) << '\n'
            << "  penalty term:       " << sci(row.penalty) << '\n'
            << "  integral:           " << sci(row.integral) << '\n'
            << "  weighted identity:  " << sci(row.weighted_identity) << '\n'
            << "  rank: " << row.report.rank
            << "  consistent: " << (row.report.consistent ? "yes" : "no")
            << "  inverse: " << to_string(row.report.inverse_kind) << '\n';
    }
}

void write_dataset_csv(const Dataset& dataset, std::ostream& out) {
    out << "label,group";
    for (int j = 0; j < dataset.classes(); ++j) {
        out << ',' << general(dataset.midpoints[j]);
    }
    out << '\n';
    for (int r = 0; r < dataset.rows(); ++r) {
        out << dataset.labels[r] << ',' << dataset.groups[r];
        for (int j = 0; j < dataset.classes(); ++j) {
            out << ',' << general(dataset.proportions(r, j));
        }
        out << '\n';
    }
}

}  // namespace clrspline
