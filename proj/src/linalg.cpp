#include "clrspline/linalg.hpp"

#include <Eigen/SVD>
#include <stdexcept>

namespace clrspline {

const char* to_string(InverseKind kind) {
    switch (kind) {
        case InverseKind::regular: return "regular";
        case InverseKind::generalized: return "generalized";
        case InverseKind::minimum_norm: return "minimum_norm";
    }
    return "unknown";
}

Matrix RankFactorization::reconstruct() const {
    return u * singular_values.asDiagonal() * v.transpose();
}

namespace {

Eigen::JacobiSVD<Matrix> full_svd(const Matrix& a, double rcond) {
    if (!(rcond > 0.0 && rcond < 1.0)) {
        throw std::invalid_argument("rcond must lie in (0, 1)");
    }
    if (!a.allFinite()) {
        throw std::invalid_argument("matrix has non-finite entries");
    }
    return Eigen::JacobiSVD<Matrix>(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
}

int numerical_rank(const Vector& sv, double rcond) {
    if (sv.size() == 0) return 0;
    const double cutoff = rcond * sv[0];
    int r = 0;
    while (r < sv.size() && sv[r] > cutoff && sv[r] > 0.0) ++r;
    return r;
}

// Shared SVD solve; the min-norm pseudoinverse solution is in particular a
// generalized-inverse solution, so both entry points use it and differ only
// in the reported inverse kind.
std::pair<Vector, SolveReport> svd_solve(const LinearSystem& sys, double rcond,
                                         double consistency_tol,
                                         bool min_norm) {
    if (sys.a.rows() != sys.a.cols() || sys.a.rows() != sys.rhs.size()) {
        throw std::invalid_argument("linear system dimensions disagree");
    }
    if (!sys.rhs.allFinite()) {
        throw std::invalid_argument("right-hand side has non-finite entries");
    }
    const auto svd = full_svd(sys.a, rcond);
    const Vector& sv = svd.singularValues();
    const int rank = numerical_rank(sv, rcond);
    const Eigen::Index n = sys.a.rows();

    Vector x = Vector::Zero(n);
    for (int i = 0; i < rank; ++i) {
        x += (svd.matrixU().col(i).dot(sys.rhs) / sv[i]) * svd.matrixV().col(i);
    }

    SolveReport report;
    report.rank = rank;
    report.rcond_used = rcond;
    report.residual_norm = (sys.a * x - sys.rhs).norm();
    const double scale =
        sys.a.norm() * x.norm() + sys.rhs.norm();
    report.consistent =
        report.residual_norm <= consistency_tol * (scale > 0.0 ? scale : 1.0);
    if (rank == n) {
        report.inverse_kind = InverseKind::regular;
    } else {
        report.inverse_kind =
            min_norm ? InverseKind::minimum_norm : InverseKind::generalized;
    }
    return {std::move(x), report};
}

}  // namespace

RankFactorization rank_factorize(const Matrix& a, double rcond) {
    const auto svd = full_svd(a, rcond);
    const Vector& sv = svd.singularValues();
    const int rank = numerical_rank(sv, rcond);
    RankFactorization f;
    f.u = svd.matrixU().leftCols(rank);
    f.singular_values = sv.head(rank);
    f.v = svd.matrixV().leftCols(rank);
    f.rank = rank;
    f.rcond_used = rcond;
    return f;
}

Matrix null_space_basis(const Matrix& a, double rcond) {
    const auto svd = full_svd(a, rcond);
    const int rank = numerical_rank(svd.singularValues(), rcond);
    return svd.matrixV().rightCols(a.cols() - rank);
}

std::pair<Vector, SolveReport> solve_generalized(const LinearSystem& sys,
                                                 double rcond,
                                                 double consistency_tol) {
    return svd_solve(sys, rcond, consistency_tol, /*min_norm=*/false);
}

std::pair<Vector, SolveReport> solve_min_norm(const LinearSystem& sys,
                                              double rcond,
                                              double consistency_tol) {
    return svd_solve(sys, rcond, consistency_tol, /*min_norm=*/true);
}

std::pair<Vector, SolveReport> solve_min_norm_factored(const Matrix& f,
                                                       const Vector& g,
                                                       double rcond,
                                                       double consistency_tol) {
    if (f.rows() != g.size()) {
        throw std::invalid_argument("factored system dimensions disagree");
    }
    if (!(rcond > 0.0 && rcond < 1.0)) {
        throw std::invalid_argument("rcond must lie in (0, 1)");
    }
    if (!f.allFinite() || !g.allFinite()) {
        throw std::invalid_argument("factored system has non-finite entries");
    }
    Eigen::JacobiSVD<Matrix> svd(f, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& sv = svd.singularValues();
    const Eigen::Index n = f.cols();
    const double cutoff = sv.size() > 0 ? std::sqrt(rcond) * sv[0] : 0.0;
    const Vector projections = svd.matrixU().transpose() * g;

    Vector x = Vector::Zero(n);
    int rank = 0;
    double dropped = 0.0;  // || F^T F x - F^T g || over the truncated part
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv[i] > cutoff && sv[i] > 0.0) {
            x += (projections[i] / sv[i]) * svd.matrixV().col(i);
            ++rank;
        } else {
            dropped += sv[i] * sv[i] * projections[i] * projections[i];
        }
    }

    SolveReport report;
    report.rank = rank;
    report.rcond_used = rcond;
    report.residual_norm = std::sqrt(dropped);
    const double a_norm = sv.size() > 0 ? sv[0] * sv[0] : 0.0;
    const double rhs_norm = (f.transpose() * g).norm();
    const double scale = a_norm * x.norm() + rhs_norm;
    report.consistent =
        report.residual_norm <= consistency_tol * (scale > 0.0 ? scale : 1.0);
    report.inverse_kind =
        rank == n ? InverseKind::regular : InverseKind::minimum_norm;
    return {std::move(x), report};
}

}  // namespace clrspline
