// Copyright 2026 The oscsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "oscsim/matrix.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace oscsim;

namespace {

std::mt19937& rng() {
    static std::mt19937 gen(0x5eed);
    return gen;
}

ComplexMatrix random_matrix(Eigen::Index rows, Eigen::Index cols) {
    std::normal_distribution<double> dist;
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(dist(rng()), dist(rng()));
    return m;
}

ComplexMatrix random_hermitian(Eigen::Index n) {
    ComplexMatrix m = random_matrix(n, n);
    return ComplexMatrix(0.5 * (m + m.adjoint()));
}

ComplexMatrix random_unitary(Eigen::Index n) {
    return hermitian_eigen(random_hermitian(n)).vectors;
}

}  // namespace

TEST_CASE("frobenius inner product on reference inputs", "[linalg]") {
    const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
    CHECK(frobenius_inner(id2, id2).real() == Catch::Approx(2.0));

    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 1) = 1.0;
    CHECK(std::abs(frobenius_inner(a, a) - Complex(1.0)) < 1e-15);

    CHECK_THROWS_AS(frobenius_inner(id2, ComplexMatrix::Zero(2, 3)), validation_error);
}

TEST_CASE("frobenius inner product matches elementwise sum and Cauchy-Schwarz", "[linalg]") {
    const ComplexMatrix a = random_matrix(3, 4);
    const ComplexMatrix b = random_matrix(3, 4);

    Complex direct = 0.0;
    for (Eigen::Index i = 0; i < 3; ++i)
        for (Eigen::Index j = 0; j < 4; ++j) direct += a(i, j) * std::conj(b(i, j));
    CHECK(std::abs(frobenius_inner(a, b) - direct) < 1e-12);
    CHECK(std::abs(frobenius_inner(a, b)) <= frobenius_norm(a) * frobenius_norm(b) + 1e-12);
}

TEST_CASE("frobenius norm identities", "[linalg]") {
    CHECK(frobenius_norm(ComplexMatrix::Zero(3, 5)) == 0.0);

    const ComplexMatrix m = random_matrix(4, 4);
    const ComplexMatrix u = random_unitary(4);
    const ComplexMatrix rotated = u * m * u.adjoint();  // explicit triple product
    CHECK(frobenius_norm(rotated) == Catch::Approx(frobenius_norm(m)).margin(1e-10));
    CHECK(frobenius_norm(m.adjoint()) == Catch::Approx(frobenius_norm(m)));

    const ComplexMatrix a = random_matrix(3, 4);
    const ComplexMatrix b = random_matrix(3, 4);
    const ComplexMatrix c = random_matrix(4, 6);
    CHECK(frobenius_norm(a + b) <= frobenius_norm(a) + frobenius_norm(b) + 1e-12);
    CHECK(frobenius_norm(a * c) <= frobenius_norm(a) * frobenius_norm(c) + 1e-12);
}

TEST_CASE("hermitian eigendecomposition", "[linalg]") {
    ComplexMatrix d = ComplexMatrix::Zero(3, 3);
    d(0, 0) = 3.0;
    d(1, 1) = 1.0;
    d(2, 2) = 2.0;
    const auto sys = hermitian_eigen(d);
    CHECK(sys.values(0) == Catch::Approx(1.0));
    CHECK(sys.values(1) == Catch::Approx(2.0));
    CHECK(sys.values(2) == Catch::Approx(3.0));

    ComplexMatrix pauli_x = ComplexMatrix::Zero(2, 2);
    pauli_x(0, 1) = 1.0;
    pauli_x(1, 0) = 1.0;
    const auto px = hermitian_eigen(pauli_x);
    CHECK(px.values(0) == Catch::Approx(-1.0));
    CHECK(px.values(1) == Catch::Approx(1.0));
}

TEST_CASE("hermitian eigendecomposition reconstructs random input", "[linalg]") {
    const ComplexMatrix h = random_hermitian(10);
    const auto sys = hermitian_eigen(h);

    const ComplexMatrix reconstructed =
        sys.vectors * sys.values.asDiagonal() * sys.vectors.adjoint();
    CHECK((reconstructed - h).cwiseAbs().maxCoeff() < 1e-10);

    const ComplexMatrix gram = sys.vectors.adjoint() * sys.vectors;
    CHECK((gram - ComplexMatrix::Identity(10, 10)).cwiseAbs().maxCoeff() < 1e-10);

    for (Eigen::Index i = 1; i < sys.values.size(); ++i)
        CHECK(sys.values(i) >= sys.values(i - 1));
}

TEST_CASE("hermitian eigendecomposition rejects bad input", "[linalg]") {
    ComplexMatrix m = random_matrix(4, 4);
    m(0, 1) += Complex(1.0, 0.0);  // ensure visibly non-Hermitian
    CHECK_THROWS_AS(hermitian_eigen(m), validation_error);
    CHECK_THROWS_AS(hermitian_eigen(random_matrix(2, 3)), validation_error);
}

TEST_CASE("singular values on reference inputs", "[linalg]") {
    ComplexVector u = random_matrix(4, 1);
    ComplexVector v = random_matrix(5, 1);
    u /= u.norm();
    v /= v.norm();
    const ComplexMatrix outer = u * v.transpose();
    const RealVector sv = singular_values(outer);
    CHECK(sv(0) == Catch::Approx(1.0).margin(1e-12));
    for (Eigen::Index i = 1; i < sv.size(); ++i) CHECK(sv(i) < 1e-12);

    ComplexMatrix diag = ComplexMatrix::Zero(2, 2);
    diag(0, 0) = 2.0;
    diag(1, 1) = 1.0;
    const RealVector sd = singular_values(diag);
    CHECK(sd(0) == Catch::Approx(2.0));
    CHECK(sd(1) == Catch::Approx(1.0));
}

TEST_CASE("singular values squared are the eigenvalues of a a^dagger", "[linalg]") {
    const ComplexMatrix a = random_matrix(4, 6);
    const RealVector sv = singular_values(a);

    const auto sys = hermitian_eigen(ComplexMatrix(a * a.adjoint()));
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        const double expected = sys.values(sys.values.size() - 1 - i);
        CHECK(expected >= -1e-12);  // rho rho^dag spectra must be nonnegative
        CHECK(sv(i) * sv(i) == Catch::Approx(expected).margin(1e-10));
    }

    double sumsq = 0.0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) sumsq += sv(i) * sv(i);
    CHECK(sumsq == Catch::Approx(frobenius_norm(a) * frobenius_norm(a)).margin(1e-10));

    const RealVector svt = singular_values(a.transpose());
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        CHECK(svt(i) == Catch::Approx(sv(i)).margin(1e-10));
}
