#include "clrspline/spline.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "clrspline/quadrature.hpp"

namespace clrspline {

void KnotConfig::validate() const {
    if (degree < 1) {
        throw std::invalid_argument("KnotConfig: degree must be >= 1, got " +
                                    std::to_string(degree));
    }
    if (!(a < b)) {
        throw std::invalid_argument("KnotConfig: requires a < b");
    }
    double prev = a;
    for (double lam : interior) {
        if (!(prev < lam)) {
            throw std::invalid_argument(
                "KnotConfig: knots must be strictly increasing inside (a, b)");
        }
        prev = lam;
    }
    if (!(prev < b)) {
        throw std::invalid_argument(
            "KnotConfig: interior knots must be strictly less than b");
    }
}

SplineSpace::SplineSpace(KnotConfig config) : cfg_(std::move(config)) {
    if (cfg_.degree < 0) {
        throw std::invalid_argument("SplineSpace: degree must be >= 0");
    }
    if (!(cfg_.a < cfg_.b)) {
        throw std::invalid_argument("SplineSpace: requires a < b");
    }
    double prev = cfg_.a;
    for (double lam : cfg_.interior) {
        if (!(prev < lam)) {
            throw std::invalid_argument(
                "SplineSpace: knots must be strictly increasing inside (a, b)");
        }
        prev = lam;
    }
    if (!(prev < cfg_.b)) {
        throw std::invalid_argument(
            "SplineSpace: interior knots must be strictly less than b");
    }
    const int k = cfg_.degree;
    const int g = cfg_.num_interior();
    extended_.reserve(g + 2 * k + 2);
    extended_.assign(k + 1, cfg_.a);
    extended_.insert(extended_.end(), cfg_.interior.begin(), cfg_.interior.end());
    extended_.insert(extended_.end(), k + 1, cfg_.b);
}

SplineSpace build_space(const KnotConfig& config) {
    config.validate();
    return SplineSpace(config);
}

int SplineSpace::span_of(double x) const {
    if (!(x >= cfg_.a && x <= cfg_.b)) {
        throw std::domain_error("spline evaluation outside [" +
                                std::to_string(cfg_.a) + ", " +
                                std::to_string(cfg_.b) + "]: x = " +
                                std::to_string(x));
    }
    if (x >= cfg_.b) return cfg_.num_interior();
    const auto& in = cfg_.interior;
    return static_cast<int>(std::upper_bound(in.begin(), in.end(), x) -
                            in.begin());
}

std::vector<double> SplineSpace::nonzero_basis(int d, double x) const {
    if (d < 0 || d > cfg_.degree) {
        throw std::invalid_argument("basis degree out of range");
    }
    const int j = span_of(x);
    // Triangular recurrence over the span; values[r] = B_{j-d+r}^{d+1}(x).
    // Denominators contain the non-empty span [lambda_j, lambda_{j+1}], so no
    // division by zero can occur.
    std::vector<double> values(d + 1, 0.0);
    std::vector<double> left(d + 1), right(d + 1);
    values[0] = 1.0;
    for (int p = 1; p <= d; ++p) {
        left[p] = x - knot(j + 1 - p);
        right[p] = knot(j + p) - x;
        double saved = 0.0;
        for (int r = 0; r < p; ++r) {
            const double temp = values[r] / (right[r + 1] + left[p - r]);
            values[r] = saved + right[r + 1] * temp;
            saved = left[p - r] * temp;
        }
        values[p] = saved;
    }
    return values;
}

double SplineSpace::basis_value(int d, int i, double x) const {
    if (d < 0 || d > cfg_.degree) {
        throw std::invalid_argument("basis degree out of range");
    }
    if (i < -d || i > cfg_.num_interior()) {
        throw std::invalid_argument("basis index out of range");
    }
    const int j = span_of(x);
    if (i < j - d || i > j) return 0.0;  // outside local support
    return nonzero_basis(d, x)[i - (j - d)];
}

Matrix collocation_matrix(const SplineSpace& space, int d, const Vector& xs) {
    if (d < 0 || d > space.degree()) {
        throw std::invalid_argument("collocation degree out of range");
    }
    const int cols = space.num_interior() + d + 1;
    Matrix c = Matrix::Zero(xs.size(), cols);
    for (Eigen::Index r = 0; r < xs.size(); ++r) {
        const int j = space.span_of(xs[r]);
        const auto values = space.nonzero_basis(d, xs[r]);
        for (int t = 0; t <= d; ++t) {
            c(r, j - d + t + d) = values[t];  // column = basis index i plus d
        }
    }
    return c;
}

Spline::Spline(SplineSpace s, Vector b) : space(std::move(s)), coeffs(std::move(b)) {
    if (coeffs.size() != space.dim()) {
        throw std::invalid_argument(
            "Spline: coefficient count " + std::to_string(coeffs.size()) +
            " does not match space dimension " + std::to_string(space.dim()));
    }
}

double evaluate(const Spline& spline, double x) {
    const int d = spline.space.degree();
    const int j = spline.space.span_of(x);
    const auto values = spline.space.nonzero_basis(d, x);
    double sum = 0.0;
    for (int t = 0; t <= d; ++t) {
        sum += values[t] * spline.coeffs[j - d + t + d];
    }
    return sum;
}

Matrix derivative_operator(const SplineSpace& space, int l) {
    const int k = space.degree();
    const int g = space.num_interior();
    if (l < 1 || l > k) {
        throw std::invalid_argument("derivative order must satisfy 1 <= l <= k");
    }
    Matrix s = Matrix::Identity(g + k + 1, g + k + 1);
    for (int j = 1; j <= l; ++j) {
        const int rows = g + k + 1 - j;
        // L_j b gives first differences; D_j scales by (k+1-j)/knot gap.
        Matrix next = Matrix::Zero(rows, s.cols());
        for (int r = 0; r < rows; ++r) {
            const int i = -k + j + r;  // basis index of this row
            const double gap = space.knot(i + k + 1 - j) - space.knot(i);
            const double scale = (k + 1 - j) / gap;
            next.row(r) = scale * (s.row(r + 1) - s.row(r));
        }
        s = std::move(next);
    }
    return s;
}

Spline differentiate(const Spline& spline, int l) {
    const Matrix s_l = derivative_operator(spline.space, l);
    KnotConfig reduced = spline.space.config();
    reduced.degree -= l;
    return Spline(SplineSpace(std::move(reduced)), s_l * spline.coeffs);
}

GramMatrix gram_matrix(const SplineSpace& space, int l) {
    const int k = space.degree();
    const int g = space.num_interior();
    if (l < 0 || l > k) {
        throw std::invalid_argument("gram order must satisfy 0 <= l <= k");
    }
    const int d = k - l;
    const int dim = g + d + 1;
    Matrix m = Matrix::Zero(dim, dim);
    const GaussRule& rule = gauss_legendre(d + 1);
    for (int span = 0; span <= g; ++span) {
        const double lo = space.knot(span);
        const double hi = space.knot(span + 1);
        const double mid = 0.5 * (hi + lo);
        const double halfwidth = 0.5 * (hi - lo);
        for (size_t q = 0; q < rule.nodes.size(); ++q) {
            const double x = mid + halfwidth * rule.nodes[q];
            const double w = halfwidth * rule.weights[q];
            const int j = space.span_of(x);
            const auto values = space.nonzero_basis(d, x);
            for (int r = 0; r <= d; ++r) {
                for (int c = r; c <= d; ++c) {
                    const double term = w * values[r] * values[c];
                    m(j + r, j + c) += term;
                    if (c != r) m(j + c, j + r) += term;
                }
            }
        }
    }
    return GramMatrix{std::move(m), d};
}

Matrix penalty_matrix(const SplineSpace& space, int l) {
    const Matrix s_l = derivative_operator(space, l);
    const GramMatrix m = gram_matrix(space, l);
    return s_l.transpose() * m.entries * s_l;
}

double integrate(const Spline& spline) {
    const SplineSpace& space = spline.space;
    const int d = space.degree();
    double sum = 0.0;
    for (int i = -d; i <= space.num_interior(); ++i) {
        sum += spline.coeffs[i + d] * (space.knot(i + d + 1) - space.knot(i));
    }
    return sum / (d + 1);
}

}  // namespace clrspline
