#include "clrspline/smoothing.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace clrspline {

SmoothingProblem::SmoothingProblem(Vector x, Vector y, Vector w, double a,
                                   int l, SplineSpace s)
    : xs(std::move(x)),
      ys(std::move(y)),
      weights(std::move(w)),
      alpha(a),
      order(l),
      space(std::move(s)) {}

void SmoothingProblem::validate() const {
    const Eigen::Index n = xs.size();
    if (ys.size() != n || weights.size() != n) {
        throw std::invalid_argument("smoothing data vectors differ in length");
    }
    if (n < space.num_interior() + 1) {
        throw std::invalid_argument(
            "need at least g+1 data points, got " + std::to_string(n) +
            " for g = " + std::to_string(space.num_interior()));
    }
    if (!(alpha > 0.0)) {
        throw std::invalid_argument("alpha must be positive");
    }
    if (order < 1 || order > space.degree() - 1) {
        throw std::invalid_argument("derivative order must lie in {1,...,k-1}");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(weights[i] >= 0.0)) {
            throw std::invalid_argument("weights must be non-negative");
        }
        if (!(xs[i] >= space.a() && xs[i] <= space.b())) {
            throw std::invalid_argument("abscissa outside [a, b]: x = " +
                                        std::to_string(xs[i]));
        }
    }
}

namespace {

struct Assembled {
    Matrix penalty;      // N_kl
    Matrix collocation;  // C_{k+1}(x)
};

Assembled assemble(const SmoothingProblem& p) {
    p.validate();
    return {penalty_matrix(p.space, p.order),
            collocation_matrix(p.space, p.space.degree(), p.xs)};
}

// Stacked factor F and target g with F^T F = alpha [alpha^{-1} N + C^T W C]
// and F^T g = alpha C^T W y: the normal system of the smoothing functional,
// uniformly scaled by alpha (which changes neither its solution set nor the
// relative rank rule). Solving through the factor keeps the data-fit block
// numerically alive when the penalty block dominates the spectrum.
void stack_normal_factor(const SmoothingProblem& p, const Matrix& collocation,
                         const Matrix& reparam, Matrix& f, Vector& g) {
    const GramMatrix gram = gram_matrix(p.space, p.order);
    const Matrix root =
        Matrix(gram.entries.llt().matrixL()).transpose() *
        derivative_operator(p.space, p.order) * reparam;
    const Matrix data = collocation * reparam;
    const Vector wsqrt = p.weights.cwiseSqrt() * std::sqrt(p.alpha);
    f.resize(root.rows() + data.rows(), root.cols());
    f.topRows(root.rows()) = root;
    f.bottomRows(data.rows()) = wsqrt.asDiagonal() * data;
    g = Vector::Zero(f.rows());
    g.tail(data.rows()) = wsqrt.asDiagonal() * p.ys;
}

}  // namespace

double objective(const SmoothingProblem& problem, const Vector& b) {
    const ObjectiveTerms terms = objective_terms(problem, b);
    return terms.penalty + problem.alpha * terms.weighted_residual;
}

ObjectiveTerms objective_terms(const SmoothingProblem& problem,
                               const Vector& b) {
    if (b.size() != problem.space.dim()) {
        throw std::invalid_argument("coefficient vector has wrong length");
    }
    const Assembled sys = assemble(problem);
    const Vector resid = problem.ys - sys.collocation * b;
    ObjectiveTerms terms;
    terms.penalty = b.dot(sys.penalty * b);
    terms.weighted_residual = resid.dot(problem.weights.asDiagonal() * resid);
    return terms;
}

SmoothingSolution fit_unconstrained(const SmoothingProblem& problem,
                                    double rcond) {
    problem.validate();
    const Matrix collocation =
        collocation_matrix(problem.space, problem.space.degree(), problem.xs);
    Matrix f;
    Vector g;
    stack_normal_factor(problem, collocation,
                        Matrix::Identity(problem.space.dim(),
                                         problem.space.dim()),
                        f, g);
    auto [b, report] = solve_min_norm_factored(f, g, rcond);
    Spline spline(problem.space, std::move(b));
    const double j = objective(problem, spline.coeffs);
    return SmoothingSolution{std::move(spline), j, report, false, Vector{}};
}

ConstraintOperators build_constraint_operators(const SplineSpace& space) {
    const int k = space.degree();
    const int g = space.num_interior();
    const int dim = g + k + 1;
    Matrix d = Matrix::Zero(dim, dim);
    for (int i = -k; i <= g; ++i) {
        d(i + k, i + k) = (k + 1) / (space.knot(i + k + 1) - space.knot(i));
    }
    Matrix kmat = Matrix::Identity(dim, dim);
    for (int r = 1; r < dim; ++r) kmat(r, r - 1) = -1.0;
    kmat(0, dim - 1) = -1.0;
    return ConstraintOperators{std::move(d), std::move(kmat)};
}

SmoothingSolution fit_zero_integral(const SmoothingProblem& problem,
                                    double rcond) {
    problem.validate();
    const Matrix collocation =
        collocation_matrix(problem.space, problem.space.degree(), problem.xs);
    const ConstraintOperators ops = build_constraint_operators(problem.space);
    const Matrix dk = ops.d * ops.k;
    Matrix f;
    Vector g;
    stack_normal_factor(problem, collocation, dk, f, g);
    auto [cbar, report] = solve_min_norm_factored(f, g, rcond);
    Spline spline(problem.space, dk * cbar);
    const double j = objective(problem, spline.coeffs);
    return SmoothingSolution{std::move(spline), j, report, true, std::move(cbar)};
}

Vector antiderivative_coeffs(const Spline& spline) {
    const SplineSpace& space = spline.space;
    const int k = space.degree();
    const int g = space.num_interior();
    Vector c(g + k + 2);
    c[0] = 0.0;  // c_{-k-1}
    for (int i = -k; i <= g; ++i) {
        const double gap = space.knot(i + k + 1) - space.knot(i);
        c[i + k + 1] = c[i + k] + spline.coeffs[i + k] * gap / (k + 1);
    }
    return c;
}

}  // namespace clrspline
