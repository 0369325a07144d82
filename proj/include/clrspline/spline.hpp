#pragma once

#include <vector>

#include "clrspline/types.hpp"

namespace clrspline {

/// Knot layout for a spline space on [a, b]: boundary knots plus g strictly
/// increasing interior knots, and the polynomial degree k.
struct KnotConfig {
    double a = 0.0;
    double b = 1.0;
    std::vector<double> interior;
    int degree = 3;

    int num_interior() const { return static_cast<int>(interior.size()); }

    /// Throws std::invalid_argument unless a < interior[0] < ... < b and
    /// degree >= 1.
    void validate() const;
};

/// Spline space of degree k over a clamped (open) extended knot vector:
/// k+1 coincident copies of a and of b around the g interior knots.
///
/// Indexing follows the convention that basis functions of degree d carry
/// indices i = -d..g and knots carry indices lambda_i, i = -k..g+k+1, with
/// lambda_{-k} = ... = lambda_0 = a and lambda_{g+1} = ... = lambda_{g+k+1} = b.
/// The space dimension is g+k+1.
class SplineSpace {
public:
    /// Degree 0 is accepted here so that derivative spaces of order k exist;
    /// build_space() enforces the degree >= 1 contract for user input.
    explicit SplineSpace(KnotConfig config);

    const KnotConfig& config() const { return cfg_; }
    int degree() const { return cfg_.degree; }
    int num_interior() const { return cfg_.num_interior(); }
    int dim() const { return num_interior() + degree() + 1; }
    double a() const { return cfg_.a; }
    double b() const { return cfg_.b; }

    /// lambda_i for i in [-k, g+k+1].
    double knot(int i) const { return extended_[i + cfg_.degree]; }
    const std::vector<double>& extended_knots() const { return extended_; }

    /// Index j in [0, g] of the span [lambda_j, lambda_{j+1}) containing x;
    /// the last span is treated as closed so span_of(b) == g.
    /// Throws std::domain_error for x outside [a, b].
    int span_of(double x) const;

    /// Values of the d+1 basis functions of degree d that may be non-zero at
    /// x, i.e. B_i^{d+1}(x) for i = span_of(x)-d .. span_of(x).
    std::vector<double> nonzero_basis(int d, double x) const;

    /// B_i^{d+1}(x) for 0 <= d <= degree and -d <= i <= g.
    double basis_value(int d, int i, double x) const;

private:
    KnotConfig cfg_;
    std::vector<double> extended_;  // size g + 2k + 2
};

/// Constructs the space after validating the full KnotConfig contract.
SplineSpace build_space(const KnotConfig& config);

/// Collocation matrix of the degree-d basis at the points xs: entry (r, c) is
/// B_{c-d}^{d+1}(x_r). Size n x (g+d+1); each row has at most d+1 non-zeros
/// and sums to one.
Matrix collocation_matrix(const SplineSpace& space, int d, const Vector& xs);

/// A spline as coefficients over the B-spline basis of its space.
struct Spline {
    SplineSpace space;
    Vector coeffs;

    Spline(SplineSpace s, Vector b);
};

/// s(x) via the local non-zero basis window; x must lie in [a, b].
double evaluate(const Spline& spline, double x);

/// The derivative coefficient operator S_l = D_l L_l ... D_1 L_1 mapping
/// degree-k coefficients to degree-(k-l) coefficients of the l-th derivative.
/// Size (g+k+1-l) x (g+k+1), full row rank. Valid for 1 <= l <= k-1; l == k
/// is accepted as an extension (piecewise-constant derivative).
Matrix derivative_operator(const SplineSpace& space, int l);

/// l-th derivative as a spline of degree k-l over the same interior knots.
Spline differentiate(const Spline& spline, int l);

/// Gram matrix of the degree-(k-l) basis in L2[a,b].
struct GramMatrix {
    Matrix entries;
    int basis_degree;  // k - l
};

/// M_kl with entries (B_i^{k+1-l}, B_j^{k+1-l}); symmetric positive definite.
/// Computed by per-span Gauss-Legendre with k-l+1 nodes, which is exact for
/// the piecewise degree-2(k-l) integrand. Valid for 0 <= l <= k.
GramMatrix gram_matrix(const SplineSpace& space, int l);

/// N_kl = S_l^T M_kl S_l; the quadratic form b^T N_kl b equals the integral
/// of the squared l-th derivative. Symmetric positive semidefinite.
Matrix penalty_matrix(const SplineSpace& space, int l);

/// Exact integral over [a, b]: sum_i b_i (lambda_{i+k+1} - lambda_i) / (k+1).
double integrate(const Spline& spline);

}  // namespace clrspline
