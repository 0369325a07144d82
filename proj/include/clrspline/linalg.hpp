#pragma once

#include <utility>

#include "clrspline/types.hpp"

namespace clrspline {

/// A square linear system A x = rhs (A symmetric in every use here).
struct LinearSystem {
    Matrix a;
    Vector rhs;
};

enum class InverseKind { regular, generalized, minimum_norm };

const char* to_string(InverseKind kind);

/// Outcome of a (generalized-) inverse solve.
struct SolveReport {
    int rank = 0;
    bool consistent = false;
    double residual_norm = 0.0;
    InverseKind inverse_kind = InverseKind::regular;
    double rcond_used = 0.0;
};

/// Truncated orthogonal factorization A ~ U diag(s) V^T keeping the singular
/// values above rcond * s_max.
struct RankFactorization {
    Matrix u;                 // m x rank, orthonormal columns
    Vector singular_values;   // rank entries, descending
    Matrix v;                 // m x rank, orthonormal columns
    int rank = 0;
    double rcond_used = 0.0;

    Matrix reconstruct() const;
};

/// Throws std::invalid_argument on non-finite entries or rcond outside (0,1).
RankFactorization rank_factorize(const Matrix& a, double rcond = kDefaultRcond);

/// Orthonormal basis of the numerical null space (empty matrix if regular).
Matrix null_space_basis(const Matrix& a, double rcond = kDefaultRcond);

/// Solves A x = rhs through a generalized inverse. If the system is
/// inconsistent at the given tolerance the report says so and the returned
/// vector is not a solution; it is never silently a least-squares answer.
std::pair<Vector, SolveReport> solve_generalized(
    const LinearSystem& sys, double rcond = kDefaultRcond,
    double consistency_tol = kDefaultConsistencyTol);

/// Same as solve_generalized but the returned solution is the unique one of
/// minimal Euclidean norm among all solutions of a consistent system.
std::pair<Vector, SolveReport> solve_min_norm(
    const LinearSystem& sys, double rcond = kDefaultRcond,
    double consistency_tol = kDefaultConsistencyTol);

/// Minimum-norm solution of the normal system (F^T F) x = F^T g computed
/// through the factor F instead of the assembled product, which avoids the
/// squared condition number when F mixes blocks of very different scale.
/// The rank rule and the report refer to the normal system: a singular value
/// s of F counts iff s^2 > rcond * s_max^2.
std::pair<Vector, SolveReport> solve_min_norm_factored(
    const Matrix& f, const Vector& g, double rcond = kDefaultRcond,
    double consistency_tol = kDefaultConsistencyTol);

}  // namespace clrspline
