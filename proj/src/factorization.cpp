#include "dris/factorization.hpp"

#include <Eigen/SVD>

namespace dris {

PinvResult pinv_with_rank(const ComplexMatrix& M, double rtol) {
    if (rtol <= 0.0)
        throw std::invalid_argument("pinv: rtol must be positive");
    if (M.size() == 0)
        return {ComplexMatrix(M.cols(), M.rows()), 0};
    Eigen::JacobiSVD<ComplexMatrix> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    const double cutoff = rtol * s(0);
    Eigen::Index rank = 0;
    while (rank < s.size() && s(rank) > cutoff && s(rank) > 0.0)
        ++rank;
    ComplexMatrix R = ComplexMatrix::Zero(M.cols(), M.rows());
    if (rank > 0) {
        Eigen::VectorXd sinv = s.head(rank).cwiseInverse();
        R = svd.matrixV().leftCols(rank) * sinv.asDiagonal() *
            svd.matrixU().leftCols(rank).adjoint();
    }
    return {std::move(R), rank};
}

ComplexMatrix pinv(const ComplexMatrix& M, double rtol) {
    return pinv_with_rank(M, rtol).pinv;
}

ComplexMatrix pinv(const ComplexMatrix& M) {
    return pinv(M, default_pinv_rtol(M));
}

ComplexMatrix ls_solve_right(const ComplexMatrix& Y, const ComplexMatrix& F) {
    if (Y.cols() != F.cols())
        throw std::invalid_argument("ls_solve_right: column count mismatch");
    return Y * pinv(F);
}

Rank1Result rank1_approx(const ComplexMatrix& M) {
    if (M.norm() == 0.0)
        throw std::invalid_argument("rank1_approx: zero matrix");
    Eigen::JacobiSVD<ComplexMatrix> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Rank1Result r;
    r.u = svd.matrixU().col(0);
    r.v = svd.matrixV().col(0);
    r.sigma = svd.singularValues()(0);
    return r;
}

KrfResult krf(const ComplexMatrix& M, Eigen::Index rowsA, Eigen::Index rowsB) {
    if (M.rows() != rowsA * rowsB)
        throw std::invalid_argument("krf: M.rows() != rowsA * rowsB");
    const Eigen::Index R = M.cols();
    KrfResult out;
    out.A = ComplexMatrix::Zero(rowsA, R);
    out.B = ComplexMatrix::Zero(rowsB, R);
    for (Eigen::Index r = 0; r < R; ++r) {
        ComplexMatrix C = unvec(M.col(r), rowsB, rowsA); // = B(:,r) A(:,r)^T for exact inputs
        if (C.norm() == 0.0) {
            out.zero_columns.push_back(r);
            continue;
        }
        Rank1Result r1 = rank1_approx(C);
        const double s = std::sqrt(r1.sigma);
        out.A.col(r) = s * r1.v.conjugate();
        out.B.col(r) = s * r1.u;
    }
    out.residual = (khatri_rao(out.A, out.B) - M).norm();
    return out;
}

} // namespace dris
