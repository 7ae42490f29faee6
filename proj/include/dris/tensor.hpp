#ifndef DRIS_TENSOR_HPP
#define DRIS_TENSOR_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <vector>

namespace dris {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Dense 3-way complex tensor, column-major storage (first index fastest).
class Tensor3 {
public:
    Tensor3() : d1_(0), d2_(0), d3_(0) {}
    Tensor3(Eigen::Index d1, Eigen::Index d2, Eigen::Index d3)
        : d1_(d1), d2_(d2), d3_(d3), data_(ComplexVector::Zero(d1 * d2 * d3)) {}

    Eigen::Index dim1() const { return d1_; }
    Eigen::Index dim2() const { return d2_; }
    Eigen::Index dim3() const { return d3_; }
    Eigen::Index size() const { return data_.size(); }

    Complex& operator()(Eigen::Index i, Eigen::Index j, Eigen::Index k) {
        return data_(i + d1_ * (j + d2_ * k));
    }
    Complex operator()(Eigen::Index i, Eigen::Index j, Eigen::Index k) const {
        return data_(i + d1_ * (j + d2_ * k));
    }

    ComplexVector& data() { return data_; }
    const ComplexVector& data() const { return data_; }

    /// Frontal slice T(:,:,k) as a d1 x d2 matrix.
    ComplexMatrix slice(Eigen::Index k) const {
        return Eigen::Map<const ComplexMatrix>(data_.data() + d1_ * d2_ * k, d1_, d2_);
    }
    void set_slice(Eigen::Index k, const ComplexMatrix& S) {
        if (S.rows() != d1_ || S.cols() != d2_)
            throw std::invalid_argument("Tensor3::set_slice: shape mismatch");
        Eigen::Map<ComplexMatrix>(data_.data() + d1_ * d2_ * k, d1_, d2_) = S;
    }

    double norm() const { return data_.norm(); }

    bool operator==(const Tensor3& o) const {
        return d1_ == o.d1_ && d2_ == o.d2_ && d3_ == o.d3_ && data_ == o.data_;
    }

private:
    Eigen::Index d1_, d2_, d3_;
    ComplexVector data_;
};

ComplexMatrix kron(const ComplexMatrix& A, const ComplexMatrix& B);

/// Column-wise Kronecker product; requires A.cols() == B.cols().
ComplexMatrix khatri_rao(const ComplexMatrix& A, const ComplexMatrix& B);

/// Column-major vectorization.
ComplexVector vec(const ComplexMatrix& A);
ComplexMatrix unvec(const ComplexVector& v, Eigen::Index rows, Eigen::Index cols);

/// Mode-n unfolding. A CP tensor with factors (A,B,C) unfolds as
///   mode 1: A (C kr B)^T,  mode 2: B (C kr A)^T,  mode 3: C (B kr A)^T.
ComplexMatrix mode_n_unfold(const Tensor3& T, int mode);
Tensor3 mode_n_fold(const ComplexMatrix& M, int mode,
                    Eigen::Index d1, Eigen::Index d2, Eigen::Index d3);

/// Sum of rank-1 terms: entry (i,j,k) = sum_r A(i,r) B(j,r) C(k,r).
Tensor3 cp3_build(const ComplexMatrix& A, const ComplexMatrix& B, const ComplexMatrix& C);

ComplexMatrix hstack(const std::vector<ComplexMatrix>& blocks);
ComplexMatrix vstack(const std::vector<ComplexMatrix>& blocks);

} // namespace dris

#endif
