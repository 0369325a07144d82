// Acceptance suite for the SHIW case-study reproduction. Each criterion
// prints one PASS/FAIL line; the exit code is the number of failures.
//
// Three checks document known discrepancies and fail by design of the checked
// bound rather than by implementation defect; see the FAIL detail lines and
// README ("Known reference-data caveats").

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "clrspline/clr.hpp"
#include "clrspline/dataset.hpp"
#include "clrspline/pipeline.hpp"
#include "clrspline/smoothing.hpp"
#include "oracles.hpp"
#include "shiw_data.hpp"

using namespace clrspline;

namespace {

const std::string kFixture = std::string(CLRSPLINE_DATA_DIR) + "/shiw_income.csv";
const KnotConfig kShiwKnots{0.0, 110709.0, {30000.0, 70000.0}, 3};

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("criterion %d: %s — %s\n", criterion, pass ? "PASS" : "FAIL",
                detail.c_str());
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
}

Vector published_clr_row(int r) {
    Vector z(shiw::kClasses);
    for (int j = 0; j < shiw::kClasses; ++j) z[j] = shiw::kPublishedClr[r][j];
    return z;
}

// --- criterion 1: clr table reproduction ---------------------------------
void criterion1(const Dataset& ds) {
    const auto start = std::chrono::steady_clock::now();
    int within = 0;
    double worst = 0.0;
    int worst_row = 0, worst_col = 0;
    double worst_sum = 0.0;
    for (int r = 0; r < ds.rows(); ++r) {
        const Vector z =
            clr_discrete(HistogramSample{ds.midpoints,
                                         ds.proportions.row(r).transpose()})
                .z;
        worst_sum = std::max(worst_sum, std::abs(z.sum()));
        for (int j = 0; j < shiw::kClasses; ++j) {
            const double dev = std::abs(z[j] - shiw::kPublishedClr[r][j]);
            if (dev <= 6e-2) ++within;
            if (dev > worst) {
                worst = dev;
                worst_row = r;
                worst_col = j;
            }
        }
    }
    const double elapsed = seconds_since(start);
    const bool values_ok = within == 180;
    const bool sums_ok = worst_sum <= 1e-12;
    const bool time_ok = elapsed < 0.1;
    char detail[256];
    std::snprintf(detail, sizeof(detail),
                  "%d/180 clr values within 6e-2 (worst |dev| %.3f at %s class "
                  "%d; 3-decimal rounding of the published proportions), row "
                  "sums <= %.1e, %.3fs",
                  within, worst, shiw::kNames[worst_row], worst_col + 1,
                  worst_sum, elapsed);
    report(1, values_ok && sums_ok && time_ok, detail);
}

// --- criterion 2: coefficient table reproduction --------------------------
void criterion2() {
    const SplineSpace space = build_space(kShiwKnots);
    Vector mids(shiw::kClasses);
    for (int j = 0; j < shiw::kClasses; ++j) mids[j] = shiw::kMidpoints[j];

    // premise: 18 published rows satisfy the weighted zero-integral identity,
    // Piemonte and Abruzzo break it by exactly a first-coefficient sign flip
    const double gaps[6] = {30000, 70000, 110709, 110709, 80709, 40709};
    bool premise_ok = true;
    for (int r = 0; r < shiw::kRegions; ++r) {
        double residual = 0.0, scale = 0.0;
        for (int i = 0; i < 6; ++i) {
            residual += shiw::kPublishedCoeffs[r][i] * gaps[i];
            scale += std::abs(shiw::kPublishedCoeffs[r][i]) * gaps[i];
        }
        const bool flagged =
            r == shiw::kSignErrorRows[0] || r == shiw::kSignErrorRows[1];
        premise_ok &= flagged ? std::abs(residual) / scale > 1e-2
                              : std::abs(residual) / scale <= 2e-3;
    }

    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    int worst_row = 0;
    auto track = [&](const Vector& coeffs, int r) {
        for (int i = 0; i < 6; ++i) {
            double expected = shiw::kPublishedCoeffs[r][i];
            if (i == 0 &&
                (r == shiw::kSignErrorRows[0] || r == shiw::kSignErrorRows[1])) {
                expected = -expected;  // documented sign error in the table
            }
            const double dev = std::abs(coeffs[i] - expected);
            if (dev > worst) {
                worst = dev;
                worst_row = r;
            }
        }
    };
    for (int r = 0; r < shiw::kRegions; ++r) {
        SmoothingProblem problem(mids, published_clr_row(r),
                                 Vector::Ones(shiw::kClasses), 1.0, 2, space);
        track(fit_zero_integral(problem).spline.coeffs, r);
    }

    // the same through the fit command path: proportions whose clr transform
    // reproduces the published ordinates up to their own rounding residue
    Dataset derived;
    derived.midpoints = mids;
    derived.proportions.resize(shiw::kRegions, shiw::kClasses);
    for (int r = 0; r < shiw::kRegions; ++r) {
        derived.labels.push_back(shiw::kNames[r]);
        derived.groups.push_back(shiw::kGroups[r]);
        derived.proportions.row(r) =
            clr_discrete_inverse({published_clr_row(r)}).transpose();
    }
    const FitResult through_cli = fit_dataset(derived, FitConfig{});
    bool cli_ok = through_cli.all_ok;
    for (int r = 0; r < shiw::kRegions; ++r) {
        track(through_cli.rows[r].spline.coeffs, r);
    }

    const double elapsed = seconds_since(start);
    char detail[256];
    std::snprintf(detail, sizeof(detail),
                  "worst coefficient deviation %.2e (%s) vs 2e-2 over both the "
                  "direct and the fit-command path, sign-flip premise %s, "
                  "fits in %.3fs",
                  worst, shiw::kNames[worst_row], premise_ok ? "holds" : "BROKEN",
                  elapsed);
    report(2, worst <= 2e-2 && premise_ok && cli_ok && elapsed < 1.0, detail);
}

// --- criterion 3: zero-integral invariant ---------------------------------
void criterion3(const Dataset& ds) {
    const FitConfig config;
    const FitResult result = fit_dataset(ds, config);
    double worst_closed = 0.0, worst_quad = 0.0;
    bool ok = true;
    for (const RowFit& row : result.rows) {
        const double bound =
            1e-8 * 110709.0 *
            std::max(1.0, row.spline.coeffs.cwiseAbs().maxCoeff());
        const double closed = std::abs(integrate(row.spline));
        const double quad = std::abs(oracle::integrate_spans(
            row.spline.space, 32,
            [&](double x) { return evaluate(row.spline, x); }));
        worst_closed = std::max(worst_closed, closed);
        worst_quad = std::max(worst_quad, quad);
        ok = ok && closed <= bound && quad <= bound;
    }
    char detail[256];
    std::snprintf(detail, sizeof(detail),
                  "worst |integral| %.2e closed-form, %.2e by 32-node "
                  "quadrature (bound ~%.1e)",
                  worst_closed, worst_quad, 1e-8 * 110709.0 * 4.0);
    report(3, ok, detail);
}

// --- criterion 4: oracle equivalence on random instances ------------------
void criterion4() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    int coefficient_cases = 0, objective_cases = 0;
    double worst = 0.0;
    bool ok = true;
    for (int trial = 0; trial < 100; ++trial) {
        KnotConfig config;
        config.a = 0.0;
        config.b = 1.0;
        config.degree = 2 + trial % 3;
        const int max_g = 12 - config.degree - 1;
        const int min_g = std::max(0, 4 - config.degree - 1);
        std::uniform_int_distribution<int> gdist(min_g, max_g);
        const int g = gdist(rng);
        config.interior.resize(g);
        std::uniform_real_distribution<double> jitter(-0.3, 0.3);
        for (int i = 0; i < g; ++i) {
            config.interior[i] = (i + 1 + jitter(rng)) / (g + 1);
        }
        SplineSpace space = build_space(config);
        const int dim = space.dim();
        std::uniform_int_distribution<int> ndist(dim, dim + 10);
        const int n = ndist(rng);
        Vector xs(n), ys(n), ws(n);
        for (int i = 0; i < n; ++i) {
            xs[i] = unif(rng);
            ys[i] = std::normal_distribution<double>()(rng);
            ws[i] = 0.2 + 1.8 * unif(rng);
        }
        std::sort(xs.data(), xs.data() + n);
        const double alpha = std::pow(10.0, -2.0 + 4.0 * unif(rng));
        std::uniform_int_distribution<int> ldist(1, config.degree - 1);
        SmoothingProblem problem(xs, ys, ws, alpha, ldist(rng), space);
        const Matrix penalty = penalty_matrix(space, problem.order);
        const Matrix collocation = collocation_matrix(space, config.degree, xs);

        const SmoothingSolution unc = fit_unconstrained(problem, 1e-13);
        const auto unc_oracle =
            oracle::minimize_stacked(penalty, collocation, ws, ys, alpha);
        if (unc_oracle.well_conditioned) {
            ++coefficient_cases;
            const double dev =
                (unc.spline.coeffs - unc_oracle.b).cwiseAbs().maxCoeff() /
                std::max(1.0, unc_oracle.b.norm());
            worst = std::max(worst, dev);
            ok = ok && dev <= 1e-8;
        } else {
            ++objective_cases;
            const double ref = objective(problem, unc_oracle.b);
            const double dev =
                std::abs(unc.objective - ref) / std::max(1.0, std::abs(ref));
            worst = std::max(worst, dev);
            ok = ok && dev <= 1e-8;
        }

        const SmoothingSolution con = fit_zero_integral(problem, 1e-13);
        const auto con_oracle = oracle::minimize_constrained(
            penalty, collocation, ws, ys, alpha, oracle::gap_vector(space));
        if (con_oracle.well_conditioned) {
            ++coefficient_cases;
            const double dev =
                (con.spline.coeffs - con_oracle.b).cwiseAbs().maxCoeff() /
                std::max(1.0, con_oracle.b.norm());
            worst = std::max(worst, dev);
            ok = ok && dev <= 1e-8;
        } else {
            ++objective_cases;
            const double ref = objective(problem, con_oracle.b);
            const double dev =
                std::abs(con.objective - ref) / std::max(1.0, std::abs(ref));
            worst = std::max(worst, dev);
            ok = ok && dev <= 1e-8;
        }
    }
    const double elapsed = seconds_since(start);
    char detail[256];
    std::snprintf(detail, sizeof(detail),
                  "100 instances, %d coefficient + %d objective comparisons, "
                  "worst deviation %.2e vs 1e-8, %.2fs",
                  coefficient_cases, objective_cases, worst, elapsed);
    report(4, ok && elapsed < 10.0, detail);
}

// --- criterion 5: spline-core numerics ------------------------------------
void criterion5() {
    std::mt19937 rng(55);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    bool ok = true;
    double worst_pu = 0.0;

    // partition of unity at 1000 random points across random configs
    for (int rep = 0; rep < 1000; ++rep) {
        const SplineSpace space = build_space(oracle::random_config(rng));
        const double x = space.a() + unif(rng) * (space.b() - space.a());
        double sum = 0.0;
        for (int i = -space.degree(); i <= space.num_interior(); ++i) {
            sum += space.basis_value(space.degree(), i, x);
        }
        worst_pu = std::max(worst_pu, std::abs(sum - 1.0));
    }
    ok = ok && worst_pu <= 1e-12;

    // derivatives vs central finite differences
    double worst_fd = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const SplineSpace space = build_space(oracle::random_config(rng));
        const Spline s(space, oracle::random_vector(rng, space.dim()));
        for (int l = 1; l < space.degree(); ++l) {
            const Spline ds = differentiate(s, l);
            const Spline dprev = l == 1 ? s : differentiate(s, l - 1);
            // h small enough that the h^2 truncation term stays ~1e-8 even
            // for the steep degree-4 instances, large enough that the
            // cancellation noise stays ~1e-7
            const double h = 1e-6;
            for (int rep = 0; rep < 25; ++rep) {
                const double x = oracle::random_span_point(space, rng);
                const double fd =
                    (evaluate(dprev, x + h) - evaluate(dprev, x - h)) / (2 * h);
                worst_fd = std::max(worst_fd, std::abs(evaluate(ds, x) - fd));
            }
        }
    }
    ok = ok && worst_fd <= 1e-6;

    // Gram matrices vs over-resolved quadrature; penalty quadratic form vs
    // direct squared-derivative quadrature
    double worst_gram = 0.0, worst_penalty = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const SplineSpace space = build_space(oracle::random_config(rng));
        const int k = space.degree();
        const int g = space.num_interior();
        for (int l = 0; l < k; ++l) {
            const GramMatrix m = gram_matrix(space, l);
            const int d = k - l;
            const double scale = m.entries.norm();
            for (int i = -d; i <= g; ++i) {
                for (int j = i; j <= g; ++j) {
                    const double ref = oracle::integrate_spans(
                        space, d + 6, [&](double x) {
                            return space.basis_value(d, i, x) *
                                   space.basis_value(d, j, x);
                        });
                    worst_gram =
                        std::max(worst_gram,
                                 std::abs(m.entries(i + d, j + d) - ref) / scale);
                }
            }
        }
        for (int l = 1; l < k; ++l) {
            const Matrix n = penalty_matrix(space, l);
            for (int rep = 0; rep < 4; ++rep) {
                const Spline s(space, oracle::random_vector(rng, space.dim()));
                const double form = s.coeffs.dot(n * s.coeffs);
                const Spline ds = differentiate(s, l);
                const double ref = oracle::integrate_spans(
                    space, k - l + 4, [&](double x) {
                        const double v = evaluate(ds, x);
                        return v * v;
                    });
                worst_penalty = std::max(
                    worst_penalty, std::abs(form - ref) / std::max(1.0, ref));
            }
        }
    }
    ok = ok && worst_gram <= 1e-13 && worst_penalty <= 1e-10;

    char detail[256];
    std::snprintf(detail, sizeof(detail),
                  "partition of unity %.1e (<=1e-12), derivative-FD %.1e "
                  "(<=1e-6), Gram %.1e (<=1e-13 rel), penalty form %.1e "
                  "(<=1e-10 rel)",
                  worst_pu, worst_fd, worst_gram, worst_penalty);
    report(5, ok, detail);
}

// --- criterion 6: limit behavior in alpha ---------------------------------
void criterion6(const Dataset& ds) {
    FitConfig config;
    const Matrix n = penalty_matrix(build_space(kShiwKnots), 2);

    auto energies = [&](double alpha) {
        FitConfig c = config;
        c.alpha = alpha;
        const FitResult result = fit_dataset(ds, c);
        std::vector<double> e;
        for (const RowFit& row : result.rows) {
            e.push_back(row.spline.coeffs.dot(n * row.spline.coeffs));
        }
        return e;
    };
    const auto e1 = energies(1.0);
    const auto e8 = energies(1e-8);
    double worst_ratio = 0.0;
    for (int r = 0; r < 20; ++r) {
        worst_ratio = std::max(worst_ratio, e8[r] / e1[r]);
    }
    const bool limit_ok = worst_ratio <= 1e-6;

    bool monotone = true;
    std::vector<std::vector<double>> residuals;
    for (double alpha : {0.01, 0.1, 1.0, 10.0, 100.0}) {
        FitConfig c = config;
        c.alpha = alpha;
        const FitResult result = fit_dataset(ds, c);
        std::vector<double> r;
        for (const RowFit& row : result.rows) r.push_back(row.weighted_residual);
        residuals.push_back(std::move(r));
    }
    for (std::size_t step = 1; step < residuals.size(); ++step) {
        for (int r = 0; r < 20; ++r) {
            monotone = monotone &&
                       residuals[step][r] <=
                           residuals[step - 1][r] * (1.0 + 1e-12) + 1e-15;
        }
    }

    char detail[512];
    std::snprintf(
        detail, sizeof(detail),
        "energy(alpha=1e-8)/energy(alpha=1) worst ratio %.3f vs 1e-6 "
        "(the euro-scale penalty matrix has norm ~1e-11, so alpha=1e-8 never "
        "reaches the degenerate-line regime on this fixture; ratios hit 1e-6 "
        "only near alpha~1e-16), residual monotonicity %s",
        worst_ratio, monotone ? "holds" : "BROKEN");
    report(6, limit_ok && monotone, detail);
}

// --- criterion 7: raw-mode contrast ---------------------------------------
void criterion7(const Dataset& ds) {
    FitConfig raw;
    raw.mode = FitMode::unconstrained_raw;
    const FitResult raw_result = fit_dataset(ds, raw);
    int negative_regions = 0;
    for (const RowFit& row : raw_result.rows) {
        const SplineSpace& space = row.spline.space;
        bool negative = false;
        for (int i = 0; i < 2000; ++i) {
            const double x = space.a() + (19591.0 - space.a()) * i / 1999.0;
            if (evaluate(row.spline, x) < 0.0) {
                negative = true;
                break;
            }
        }
        negative_regions += negative;
    }
    const bool raw_ok = negative_regions == 20;

    const FitConfig clr_config;
    const FitResult clr_result = fit_dataset(ds, clr_config);
    bool positive_ok = true;
    double worst_mass = 0.0;
    for (const RowFit& row : clr_result.rows) {
        const DensityCurve curve = inverse_clr_spline(
            row.spline, 500, Interval{0.0, 110709.0});
        positive_ok = positive_ok && curve.values.minCoeff() > 0.0;
        const double smax =
            row.spline.coeffs.maxCoeff();  // clamped basis: bounds the spline
        const double mass =
            oracle::integrate_spans(row.spline.space, 32, [&](double x) {
                return std::exp(evaluate(row.spline, x) - smax);
            });
        const double denom =
            std::exp(evaluate(row.spline, curve.grid[0]) - smax) /
            curve.values[0];
        worst_mass = std::max(worst_mass, std::abs(mass / denom - 1.0));
    }
    const bool mass_ok = worst_mass <= 1e-6;

    char detail[512];
    std::snprintf(
        detail, sizeof(detail),
        "raw-mode negative left tails in %d/20 regions vs required 20 (the "
        "southern monotone-decreasing profiles stay positive for any alpha; "
        "the hump-shaped northern/middle regions do undershoot), clr-mode "
        "densities strictly positive: %s, unit integral worst dev %.1e vs 1e-6",
        negative_regions, positive_ok ? "yes" : "NO", worst_mass);
    report(7, raw_ok && positive_ok && mass_ok, detail);
}

}  // namespace

int main() {
    const Dataset ds = parse_histogram_csv(kFixture);
    criterion1(ds);
    criterion2();
    criterion3(ds);
    criterion4();
    criterion5();
    criterion6(ds);
    criterion7(ds);
    std::printf("%d of 7 criteria failed\n", g_failures);
    return g_failures;
}
