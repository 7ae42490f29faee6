#include "dris/tensor.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

using namespace dris;
using test::cp3_oracle;
using test::random_matrix;
using test::rel_err;

TEST_CASE("kron identity and hand-built block expansion") {
    ComplexMatrix I2 = ComplexMatrix::Identity(2, 2);
    CHECK(kron(I2, I2) == ComplexMatrix::Identity(4, 4));

    ComplexMatrix A(1, 2), B(2, 1);
    A << 1.0, 2.0;
    B << 3.0, 4.0;
    ComplexMatrix want(2, 2);
    want << 3.0, 6.0, 4.0, 8.0;
    CHECK(kron(A, B) == want);
}

TEST_CASE("kron of vectors equals vec of outer product") {
    std::mt19937_64 rng(7);
    ComplexMatrix a = random_matrix(3, 1, rng), b = random_matrix(3, 1, rng);
    ComplexVector lhs = kron(a, b).col(0);
    ComplexVector rhs = vec(b * a.transpose());
    CHECK((lhs - rhs).norm() == doctest::Approx(0.0));
}

TEST_CASE("khatri_rao columns are per-column kron") {
    ComplexMatrix I2 = ComplexMatrix::Identity(2, 2);
    ComplexMatrix K = khatri_rao(I2, I2);
    REQUIRE(K.rows() == 4);
    REQUIRE(K.cols() == 2);
    CHECK(K(0, 0) == Complex(1.0));
    CHECK(K(3, 1) == Complex(1.0));
    CHECK(K.col(0).norm() == doctest::Approx(1.0));

    std::mt19937_64 rng(11);
    ComplexMatrix A = random_matrix(3, 2, rng), B = random_matrix(4, 2, rng);
    ComplexMatrix R = khatri_rao(A, B);
    REQUIRE(R.rows() == 12);
    for (Eigen::Index r = 0; r < 2; ++r) {
        ComplexMatrix kr = kron(A.col(r), B.col(r));
        CHECK(R.col(r) == kr.col(0));  // exact, same products
    }
}

TEST_CASE("khatri_rao rejects mismatched column counts") {
    CHECK_THROWS_AS(khatri_rao(ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(2, 3)),
                    std::invalid_argument);
}

TEST_CASE("vec is column-major and invertible") {
    ComplexMatrix A(2, 2);
    A << 1.0, 3.0, 2.0, 4.0;
    ComplexVector v = vec(A);
    CHECK(v(0) == Complex(1.0));
    CHECK(v(1) == Complex(2.0));
    CHECK(v(2) == Complex(3.0));
    CHECK(v(3) == Complex(4.0));

    std::mt19937_64 rng(3);
    ComplexMatrix M = random_matrix(5, 7, rng);
    CHECK(unvec(vec(M), 5, 7) == M);
}

TEST_CASE("cp3_build matches the triple-loop oracle") {
    ComplexMatrix e1 = ComplexMatrix::Zero(2, 1);
    e1(0, 0) = 1.0;
    Tensor3 T = cp3_build(e1, e1, e1);
    CHECK(T(0, 0, 0) == Complex(1.0));
    CHECK(T.norm() == doctest::Approx(1.0));

    std::mt19937_64 rng(23);
    ComplexMatrix A = random_matrix(4, 3, rng), B = random_matrix(5, 3, rng),
                  C = random_matrix(6, 3, rng);
    CHECK(rel_err(cp3_build(A, B, C), cp3_oracle(A, B, C)) < 1e-13);

    CHECK_THROWS_AS(cp3_build(A, B, random_matrix(2, 2, rng)), std::invalid_argument);
}

TEST_CASE("mode-n unfoldings reproduce the CP closed forms") {
    std::mt19937_64 rng(31);
    ComplexMatrix A = random_matrix(4, 3, rng), B = random_matrix(5, 3, rng),
                  C = random_matrix(6, 3, rng);
    Tensor3 T = cp3_build(A, B, C);

    CHECK(rel_err(mode_n_unfold(T, 1),
                  ComplexMatrix(A * khatri_rao(C, B).transpose())) < 1e-12);
    CHECK(rel_err(mode_n_unfold(T, 2),
                  ComplexMatrix(B * khatri_rao(C, A).transpose())) < 1e-12);
    CHECK(rel_err(mode_n_unfold(T, 3),
                  ComplexMatrix(C * khatri_rao(B, A).transpose())) < 1e-12);

    CHECK_THROWS_AS(mode_n_unfold(T, 4), std::invalid_argument);
}

TEST_CASE("fold inverts unfold exactly") {
    std::mt19937_64 rng(37);
    Tensor3 T(3, 4, 5);
    for (Eigen::Index n = 0; n < T.size(); ++n)
        T.data()(n) = random_matrix(1, 1, rng)(0, 0);
    for (int mode : {1, 2, 3}) {
        Tensor3 R = mode_n_fold(mode_n_unfold(T, mode), mode, 3, 4, 5);
        CHECK(R == T);  // bitwise, no arithmetic
    }
    Tensor3 Z = mode_n_fold(ComplexMatrix::Zero(3, 20), 1, 3, 4, 5);
    CHECK(Z.norm() == 0.0);
    CHECK_THROWS_AS(mode_n_fold(ComplexMatrix::Zero(3, 19), 1, 3, 4, 5),
                    std::invalid_argument);
}

TEST_CASE("fold of a mode-1 CP unfolding rebuilds the tensor") {
    std::mt19937_64 rng(41);
    ComplexMatrix A = random_matrix(3, 2, rng), B = random_matrix(4, 2, rng),
                  C = random_matrix(5, 2, rng);
    ComplexMatrix M = A * khatri_rao(C, B).transpose();
    CHECK(rel_err(mode_n_fold(M, 1, 3, 4, 5), cp3_oracle(A, B, C)) < 1e-12);
}

TEST_CASE("hstack/vstack concatenate and round trip") {
    std::mt19937_64 rng(43);
    ComplexMatrix A = random_matrix(3, 2, rng), B = random_matrix(3, 4, rng);
    ComplexMatrix H = hstack({A, B});
    CHECK(H.rows() == 3);
    CHECK(H.cols() == 6);
    CHECK(H.leftCols(2) == A);
    CHECK(H.rightCols(4) == B);
    CHECK(hstack({A}) == A);

    ComplexMatrix C = random_matrix(2, 5, rng), D = random_matrix(4, 5, rng);
    ComplexMatrix V = vstack({C, D});
    CHECK(V.rows() == 6);
    CHECK(V.topRows(2) == C);
    CHECK(V.bottomRows(4) == D);

    CHECK_THROWS_AS(vstack({A, C}), std::invalid_argument);
    CHECK_THROWS_AS(hstack({A, C}), std::invalid_argument);
}
