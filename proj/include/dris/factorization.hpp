#ifndef DRIS_FACTORIZATION_HPP
#define DRIS_FACTORIZATION_HPP

#include "dris/tensor.hpp"

namespace dris {

struct PinvResult {
    ComplexMatrix pinv;
    Eigen::Index effective_rank = 0;
};

constexpr double kDefaultPinvRtolScale = 1e-10;

inline double default_pinv_rtol(const ComplexMatrix& M) {
    return kDefaultPinvRtolScale * static_cast<double>(std::max(M.rows(), M.cols()));
}

/// SVD-based Moore-Penrose pseudo-inverse; singular values below
/// rtol * sigma_max are truncated.
PinvResult pinv_with_rank(const ComplexMatrix& M, double rtol);
ComplexMatrix pinv(const ComplexMatrix& M, double rtol);
ComplexMatrix pinv(const ComplexMatrix& M);

/// argmin_X || Y - X * F ||_F, computed as Y * pinv(F).
ComplexMatrix ls_solve_right(const ComplexMatrix& Y, const ComplexMatrix& F);

struct Rank1Result {
    ComplexVector u;   // unit left vector
    ComplexVector v;   // unit right vector
    double sigma = 0.0;
};

/// Best rank-1 Frobenius approximation sigma * u * v^H. Throws on zero input.
Rank1Result rank1_approx(const ComplexMatrix& M);

struct KrfResult {
    ComplexMatrix A;
    ComplexMatrix B;
    double residual = 0.0;
    std::vector<Eigen::Index> zero_columns;
};

/// Least-squares Khatri-Rao factorization: per column r, M(:,r) is reshaped
/// column-major into rowsB x rowsA and its best rank-1 term B(:,r) A(:,r)^T
/// extracted, with a balanced sqrt(sigma) scale split between the factors.
KrfResult krf(const ComplexMatrix& M, Eigen::Index rowsA, Eigen::Index rowsB);

} // namespace dris

#endif
