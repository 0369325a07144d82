#pragma once

#include "clrspline/linalg.hpp"
#include "clrspline/spline.hpp"
#include "clrspline/types.hpp"

namespace clrspline {

/// Data and parameters of the smoothing functional
///   J_l(s) = int_a^b [s^(l)]^2 + alpha * sum_i w_i (y_i - s(x_i))^2.
struct SmoothingProblem {
    Vector xs;
    Vector ys;
    Vector weights;
    double alpha = 1.0;
    int order = 2;  // l in {1, ..., k-1}
    SplineSpace space;

    SmoothingProblem(Vector x, Vector y, Vector w, double a, int l,
                     SplineSpace s);

    /// Throws std::invalid_argument on any violated invariant
    /// (n >= g+1, weights >= 0, alpha > 0, xs within [a,b], order range).
    void validate() const;
};

/// Reparametrization operators for the zero-integral constraint: b = D K cbar
/// with D = (k+1) diag(1/(lambda_{i+k+1}-lambda_i)) and K unit lower
/// bidiagonal with -1 in the top-right corner. K annihilates constant
/// vectors, which mirrors the antiderivative's free constant.
struct ConstraintOperators {
    Matrix d;
    Matrix k;
};

ConstraintOperators build_constraint_operators(const SplineSpace& space);

/// A fitted smoothing spline plus diagnostics. cbar is only populated by the
/// zero-integral fit.
struct SmoothingSolution {
    Spline spline;
    double objective = 0.0;
    SolveReport report;
    bool constrained = false;
    Vector cbar;
};

/// J_l at the given coefficient vector: b^T N_kl b + alpha (y-Cb)^T W (y-Cb).
double objective(const SmoothingProblem& problem, const Vector& b);

/// Penalty and weighted-residual terms of J_l separately.
struct ObjectiveTerms {
    double penalty = 0.0;
    double weighted_residual = 0.0;
};
ObjectiveTerms objective_terms(const SmoothingProblem& problem, const Vector& b);

/// Minimizes J_l. The normal system [alpha^{-1} N_kl + C^T W C] b = C^T W y is
/// solved with the minimum-norm generalized inverse, which reduces to the
/// regular inverse when the matrix has full numerical rank.
SmoothingSolution fit_unconstrained(const SmoothingProblem& problem,
                                    double rcond = kDefaultRcond);

/// Minimizes J_l subject to int_a^b s = 0, through the reparametrization
/// b = D K cbar. The reduced system is always rank-deficient (constants lie
/// in the kernel of K), so the minimum-norm solution in cbar is taken and
/// mapped back; the returned spline has exactly zero integral up to rounding.
SmoothingSolution fit_zero_integral(const SmoothingProblem& problem,
                                    double rcond = kDefaultRcond);

/// Antiderivative coefficients c_{-k-1}, ..., c_g anchored at c_{-k-1} = 0:
/// c_i = c_{i-1} + b_i (lambda_{i+k+1} - lambda_i)/(k+1). The last minus the
/// first entry equals the integral of the spline.
Vector antiderivative_coeffs(const Spline& spline);

}  // namespace clrspline
