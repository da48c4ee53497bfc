// Copyright 2026 The oscsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Dense complex matrix kernel: Frobenius inner product/norm, Hermitian
// eigendecomposition and singular values. Everything downstream (evolvers,
// entropies, perturbation theory) is built on these few primitives.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#ifdef OSCSIM_HAVE_LAPACKE
#include <lapacke.h>
#endif

namespace oscsim {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

// Error taxonomy shared across the library. The CLI maps these to exit codes.
struct validation_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct accuracy_error : numeric_error {
    using numeric_error::numeric_error;
};
struct truncation_error : validation_error {
    using validation_error::validation_error;
};

inline constexpr double kHermiticityTol = 1e-12;

// Tr(a b^dagger). Inputs must have identical shape.
inline Complex frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw validation_error("frobenius_inner: shape mismatch (" +
                               std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
                               std::to_string(b.rows()) + "x" + std::to_string(b.cols()) + ")");
    return (a.array() * b.array().conjugate()).sum();
}

inline double frobenius_norm(const ComplexMatrix& a) { return a.norm(); }

inline bool is_hermitian(const ComplexMatrix& h, double tol = kHermiticityTol) {
    if (h.rows() != h.cols()) return false;
    return (h - h.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

struct EigenSystem {
    RealVector values;       // ascending
    ComplexMatrix vectors;   // columns, orthonormal
};

// Hermitian eigendecomposition, eigenvalues ascending. Hermiticity is checked
// elementwise against kHermiticityTol; inputs here are constructed, not
// measured, so a violation is a caller bug.
inline EigenSystem hermitian_eigen(const ComplexMatrix& h) {
    if (h.rows() != h.cols())
        throw validation_error("hermitian_eigen: matrix must be square");
    if (!is_hermitian(h))
        throw validation_error("hermitian_eigen: input not Hermitian within 1e-12");

    const auto n = h.rows();
#ifdef OSCSIM_HAVE_LAPACKE
    EigenSystem sys;
    sys.vectors = h;
    sys.values.resize(n);
    const lapack_int info = LAPACKE_zheevd(
        LAPACK_COL_MAJOR, 'V', 'L', static_cast<lapack_int>(n),
        reinterpret_cast<lapack_complex_double*>(sys.vectors.data()),
        static_cast<lapack_int>(n), sys.values.data());
    if (info != 0)
        throw numeric_error("hermitian_eigen: zheevd failed to converge (info=" +
                            std::to_string(info) + ")");
    return sys;
#else
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    if (solver.info() != Eigen::Success)
        throw numeric_error("hermitian_eigen: eigensolver did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
#endif
}

// Singular values in descending order.
inline RealVector singular_values(const ComplexMatrix& a) {
    Eigen::JacobiSVD<ComplexMatrix> svd(a);
    if (svd.info() != Eigen::Success)
        throw numeric_error("singular_values: SVD did not converge");
    return svd.singularValues();
}

inline bool all_finite(const ComplexMatrix& a) { return a.allFinite(); }

// Outermost nonzero off-diagonal of a square matrix. Interaction matrices
// Q^nu are banded with bandwidth nu; the evolvers exploit this.
inline Eigen::Index matrix_bandwidth(const ComplexMatrix& v, double tol = 0.0) {
    const auto n = v.rows();
    Eigen::Index bw = 0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (std::abs(v(i, j)) > tol && std::abs(i - j) > bw) bw = std::abs(i - j);
    return bw;
}

// out = v * z for banded v (bandwidth bw). Falls back to dense cost if bw is
// large; callers pass the precomputed bandwidth.
inline void banded_mul(const ComplexMatrix& v, Eigen::Index bw, const ComplexMatrix& z,
                       ComplexMatrix& out) {
    const auto n = v.rows();
    const auto m = z.cols();
    out.resize(n, m);
    out.setZero();
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index j0 = std::max<Eigen::Index>(0, i - bw);
        const Eigen::Index j1 = std::min<Eigen::Index>(n - 1, i + bw);
        for (Eigen::Index j = j0; j <= j1; ++j) {
            const Complex vij = v(i, j);
            if (vij == Complex(0.0, 0.0)) continue;
            out.row(i).noalias() += vij * z.row(j);
        }
    }
    (void)m;
}

}  // namespace oscsim
