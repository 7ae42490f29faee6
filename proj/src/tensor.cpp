#include "dris/tensor.hpp"

namespace dris {

ComplexMatrix kron(const ComplexMatrix& A, const ComplexMatrix& B) {
    ComplexMatrix R(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            R.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return R;
}

ComplexMatrix khatri_rao(const ComplexMatrix& A, const ComplexMatrix& B) {
    if (A.cols() != B.cols())
        throw std::invalid_argument("khatri_rao: column count mismatch");
    ComplexMatrix R(A.rows() * B.rows(), A.cols());
    for (Eigen::Index r = 0; r < A.cols(); ++r)
        for (Eigen::Index i = 0; i < A.rows(); ++i)
            R.block(i * B.rows(), r, B.rows(), 1) = A(i, r) * B.col(r);
    return R;
}

ComplexVector vec(const ComplexMatrix& A) {
    return Eigen::Map<const ComplexVector>(A.data(), A.size());
}

ComplexMatrix unvec(const ComplexVector& v, Eigen::Index rows, Eigen::Index cols) {
    if (v.size() != rows * cols)
        throw std::invalid_argument("unvec: size mismatch");
    return Eigen::Map<const ComplexMatrix>(v.data(), rows, cols);
}

ComplexMatrix mode_n_unfold(const Tensor3& T, int mode) {
    const Eigen::Index d1 = T.dim1(), d2 = T.dim2(), d3 = T.dim3();
    switch (mode) {
    case 1: {
        // columns indexed by (k,j), k slower
        return Eigen::Map<const ComplexMatrix>(T.data().data(), d1, d2 * d3);
    }
    case 2: {
        ComplexMatrix M(d2, d3 * d1);
        for (Eigen::Index k = 0; k < d3; ++k)
            for (Eigen::Index j = 0; j < d2; ++j)
                for (Eigen::Index i = 0; i < d1; ++i)
                    M(j, k * d1 + i) = T(i, j, k);
        return M;
    }
    case 3: {
        ComplexMatrix M(d3, d2 * d1);
        for (Eigen::Index k = 0; k < d3; ++k)
            for (Eigen::Index j = 0; j < d2; ++j)
                for (Eigen::Index i = 0; i < d1; ++i)
                    M(k, j * d1 + i) = T(i, j, k);
        return M;
    }
    default:
        throw std::invalid_argument("mode_n_unfold: mode must be 1, 2 or 3");
    }
}

Tensor3 mode_n_fold(const ComplexMatrix& M, int mode,
                    Eigen::Index d1, Eigen::Index d2, Eigen::Index d3) {
    Tensor3 T(d1, d2, d3);
    switch (mode) {
    case 1:
        if (M.rows() != d1 || M.cols() != d2 * d3)
            throw std::invalid_argument("mode_n_fold: shape mismatch for mode 1");
        Eigen::Map<ComplexMatrix>(T.data().data(), d1, d2 * d3) = M;
        break;
    case 2:
        if (M.rows() != d2 || M.cols() != d3 * d1)
            throw std::invalid_argument("mode_n_fold: shape mismatch for mode 2");
        for (Eigen::Index k = 0; k < d3; ++k)
            for (Eigen::Index j = 0; j < d2; ++j)
                for (Eigen::Index i = 0; i < d1; ++i)
                    T(i, j, k) = M(j, k * d1 + i);
        break;
    case 3:
        if (M.rows() != d3 || M.cols() != d2 * d1)
            throw std::invalid_argument("mode_n_fold: shape mismatch for mode 3");
        for (Eigen::Index k = 0; k < d3; ++k)
            for (Eigen::Index j = 0; j < d2; ++j)
                for (Eigen::Index i = 0; i < d1; ++i)
                    T(i, j, k) = M(k, j * d1 + i);
        break;
    default:
        throw std::invalid_argument("mode_n_fold: mode must be 1, 2 or 3");
    }
    return T;
}

Tensor3 cp3_build(const ComplexMatrix& A, const ComplexMatrix& B, const ComplexMatrix& C) {
    if (A.cols() != B.cols() || A.cols() != C.cols())
        throw std::invalid_argument("cp3_build: factor rank mismatch");
    Tensor3 T(A.rows(), B.rows(), C.rows());
    for (Eigen::Index k = 0; k < C.rows(); ++k)
        T.set_slice(k, A * C.row(k).asDiagonal() * B.transpose());
    return T;
}

ComplexMatrix hstack(const std::vector<ComplexMatrix>& blocks) {
    if (blocks.empty())
        throw std::invalid_argument("hstack: no blocks");
    Eigen::Index rows = blocks.front().rows(), cols = 0;
    for (const auto& b : blocks) {
        if (b.rows() != rows)
            throw std::invalid_argument("hstack: row count mismatch");
        cols += b.cols();
    }
    ComplexMatrix R(rows, cols);
    Eigen::Index at = 0;
    for (const auto& b : blocks) {
        R.middleCols(at, b.cols()) = b;
        at += b.cols();
    }
    return R;
}

ComplexMatrix vstack(const std::vector<ComplexMatrix>& blocks) {
    if (blocks.empty())
        throw std::invalid_argument("vstack: no blocks");
    Eigen::Index cols = blocks.front().cols(), rows = 0;
    for (const auto& b : blocks) {
        if (b.cols() != cols)
            throw std::invalid_argument("vstack: column count mismatch");
        rows += b.rows();
    }
    ComplexMatrix R(rows, cols);
    Eigen::Index at = 0;
    for (const auto& b : blocks) {
        R.middleRows(at, b.rows()) = b;
        at += b.rows();
    }
    return R;
}

} // namespace dris
