// Copyright 2026 The oscsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Truncated operator matrices for the coupled-oscillator system, coherent
// initial data, per-sample observables and coherent-state moment recursions.

#pragma once

#include "oscsim/matrix.hpp"

#include <cmath>
#include <optional>

namespace oscsim {

// Parameters of the two nonlinearly coupled oscillators, all dimensionless:
// energies in units of the mean frequency, time tau = Omega_bar * t.
struct OscillatorConfig {
    double lambda = 0.0;   // coupling, >= 0
    double sigma = 0.0;    // frequency asymmetry, |sigma| < 1
    int nu = 2;            // coupling power, >= 1
    double zeta1 = 0.0;    // initial oscillator-1 energy above ground state
    double zeta2 = 0.0;    // initial oscillator-2 energy above ground state
    double phi1 = M_PI_2;  // coherent phase angles
    double phi2 = M_PI_2;
    int n_max = 1;         // truncation cutoff (levels 0..n_max retained)

    void validate() const {
        if (lambda < 0.0) throw validation_error("OscillatorConfig: lambda must be >= 0");
        if (!(std::abs(sigma) < 1.0)) throw validation_error("OscillatorConfig: |sigma| must be < 1");
        if (nu < 1) throw validation_error("OscillatorConfig: nu must be a positive integer");
        if (zeta1 < 0.0 || zeta2 < 0.0) throw validation_error("OscillatorConfig: zeta1, zeta2 must be >= 0");
        if (n_max < 1) throw validation_error("OscillatorConfig: n_max must be >= 1");
    }

    int dim() const { return n_max + 1; }
    double omega1() const { return 1.0 + sigma; }
    double omega2() const { return 1.0 - sigma; }
    Complex alpha() const { return std::sqrt(zeta1 / (1.0 + sigma)) * std::exp(Complex(0.0, phi1)); }
    Complex beta() const { return std::sqrt(zeta2 / (1.0 - sigma)) * std::exp(Complex(0.0, phi2)); }
};

// Generic bipartite system H = H1 (x) I + I (x) H2 + lambda V1 (x) V2 in the
// product eigenbasis of H1, H2 (so h1, h2 are real diagonal).
struct SystemSpec {
    ComplexMatrix h1, h2;  // real diagonal
    ComplexMatrix v1, v2;  // Hermitian
    double lambda = 0.0;

    Eigen::Index dim1() const { return h1.rows(); }
    Eigen::Index dim2() const { return h2.rows(); }

    RealVector energies1() const { return h1.diagonal().real(); }
    RealVector energies2() const { return h2.diagonal().real(); }

    void validate() const {
        auto check_diag_real = [](const ComplexMatrix& h, const char* name) {
            if (h.rows() != h.cols())
                throw validation_error(std::string("SystemSpec: ") + name + " must be square");
            ComplexMatrix off = h;
            off.diagonal().setZero();
            if (off.cwiseAbs().maxCoeff() > kHermiticityTol ||
                h.diagonal().imag().cwiseAbs().maxCoeff() > kHermiticityTol)
                throw validation_error(std::string("SystemSpec: ") + name + " must be real diagonal");
        };
        check_diag_real(h1, "h1");
        check_diag_real(h2, "h2");
        if (v1.rows() != dim1() || v1.cols() != dim1() || v2.rows() != dim2() || v2.cols() != dim2())
            throw validation_error("SystemSpec: interaction matrix dimensions do not match h1/h2");
        if (!is_hermitian(v1) || !is_hermitian(v2))
            throw validation_error("SystemSpec: v1, v2 must be Hermitian within 1e-12");
        if (lambda < 0.0) throw validation_error("SystemSpec: lambda must be >= 0");
    }
};

struct CoherentParams {
    Complex amplitude;
    int dim = 1;
};

// Lowering operator A with A[n, n+1] = sqrt(n+1).
inline ComplexMatrix lowering_matrix(int dim) {
    if (dim < 1) throw validation_error("lowering_matrix: dim must be >= 1");
    ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
    for (int n = 0; n + 1 < dim; ++n) a(n, n + 1) = std::sqrt(double(n + 1));
    return a;
}

// Q = (A + A^dagger)/sqrt(2), tridiagonal.
inline ComplexMatrix position_matrix(int dim) {
    if (dim < 1) throw validation_error("position_matrix: dim must be >= 1");
    ComplexMatrix q = ComplexMatrix::Zero(dim, dim);
    for (int n = 0; n + 1 < dim; ++n) {
        const double x = std::sqrt(double(n + 1) / 2.0);
        q(n, n + 1) = x;
        q(n + 1, n) = x;
    }
    return q;
}

// P = (A - A^dagger)/(sqrt(2) i).
inline ComplexMatrix momentum_matrix(int dim) {
    if (dim < 1) throw validation_error("momentum_matrix: dim must be >= 1");
    ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
    for (int n = 0; n + 1 < dim; ++n) {
        const double x = std::sqrt(double(n + 1) / 2.0);
        p(n, n + 1) = Complex(0.0, -x);
        p(n + 1, n) = Complex(0.0, x);
    }
    return p;
}

// N = diag(0, 1, ..., dim-1).
inline ComplexMatrix number_matrix(int dim) {
    if (dim < 1) throw validation_error("number_matrix: dim must be >= 1");
    ComplexMatrix n = ComplexMatrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) n(k, k) = double(k);
    return n;
}

// Truncate-then-power: Q^nu of the already truncated Q. Truncation artifacts
// live in the last ~nu rows, which the truncation monitor guards.
inline ComplexMatrix matrix_power(const ComplexMatrix& m, int exponent) {
    if (exponent < 0) throw validation_error("matrix_power: exponent must be >= 0");
    ComplexMatrix out = ComplexMatrix::Identity(m.rows(), m.cols());
    for (int k = 0; k < exponent; ++k) out = out * m;
    return out;
}

// Dimensionless oscillator system: h = (1 +/- sigma)(N + I/2), v = Q^nu.
// The Omega_bar^{1/2} prefactors of the interaction operators are absorbed
// into lambda, matching the dimensionless equations of motion.
inline SystemSpec oscillator_system(const OscillatorConfig& cfg) {
    cfg.validate();
    const int d = cfg.dim();
    const ComplexMatrix nhalf =
        number_matrix(d) + 0.5 * ComplexMatrix::Identity(d, d);
    SystemSpec spec;
    spec.h1 = (1.0 + cfg.sigma) * nhalf;
    spec.h2 = (1.0 - cfg.sigma) * nhalf;
    spec.v1 = matrix_power(position_matrix(d), cfg.nu);
    spec.v2 = spec.v1;
    spec.lambda = cfg.lambda;
    return spec;
}

// Coherent-state column z_n = exp(-|alpha|^2/2) alpha^n / sqrt(n!), computed
// in log space, renormalized after truncation. Fails if the cutoff swallows
// more than 1e-3 of the norm.
inline ComplexVector coherent_vector(const CoherentParams& p) {
    if (p.dim < 1) throw validation_error("coherent_vector: dim must be >= 1");
    ComplexVector z(p.dim);
    const double a2 = std::norm(p.amplitude);
    if (a2 == 0.0) {
        z.setZero();
        z(0) = 1.0;
        return z;
    }
    const double log_abs_a = std::log(std::abs(p.amplitude));
    const double arg_a = std::arg(p.amplitude);
    for (int n = 0; n < p.dim; ++n) {
        const double log_mag = -0.5 * a2 + n * log_abs_a - 0.5 * std::lgamma(double(n) + 1.0);
        z(n) = std::exp(log_mag) * std::exp(Complex(0.0, n * arg_a));
    }
    const double norm = z.norm();
    if (norm < 0.999)
        throw truncation_error("coherent_vector: truncated norm " + std::to_string(norm) +
                               " < 0.999; increase the cutoff for |alpha|^2 = " +
                               std::to_string(a2));
    z /= norm;
    return z;
}

// Z(0) = w z^T, the product of coherent states for the two oscillators.
inline ComplexMatrix qq_initial_state(const OscillatorConfig& cfg) {
    cfg.validate();
    const ComplexVector w = coherent_vector({cfg.alpha(), cfg.dim()});
    const ComplexVector z = coherent_vector({cfg.beta(), cfg.dim()});
    return w * z.transpose();
}

// Subsystem-1 expectation Tr(Z Z^dagger A) = sum_k <Z_k| A |Z_k> over columns.
inline Complex expectation1(const ComplexMatrix& z, const ComplexMatrix& a) {
    Complex s = 0.0;
    for (Eigen::Index k = 0; k < z.cols(); ++k) s += z.col(k).dot(a * z.col(k));
    return s;
}

// Subsystem-2 expectation Tr(Z^T Z^* B) = sum_n conj(r_n) B r_n^T over rows.
inline Complex expectation2(const ComplexMatrix& z, const ComplexMatrix& b) {
    Complex s = 0.0;
    for (Eigen::Index n = 0; n < z.rows(); ++n) {
        const ComplexVector r = z.row(n).transpose();
        s += r.dot(b.conjugate() * r);
    }
    return s;
}

// <V1 (x) V2> = Tr(Z^dagger V1 Z V2^T).
inline Complex expectation_interaction(const ComplexMatrix& z, const ComplexMatrix& v1,
                                       const ComplexMatrix& v2) {
    const ComplexMatrix y = v1 * z * v2.transpose();
    return frobenius_inner(y, z);
}

// One sample of the Table-I observable set. Occupation (and entropy) cells
// that a scheme does not define stay empty, mirroring the table's n/a cells.
struct ObservableRecord {
    double q1 = 0.0, p1 = 0.0, q2 = 0.0, p2 = 0.0;
    std::optional<double> n_occ, m_occ, var_n, var_m;
    double e1 = 0.0, e2 = 0.0, e_int = 0.0;
    double e_total() const { return e1 + e2 + e_int; }
};

// Operator matrices reused across every sample of a trajectory.
struct OscillatorOperators {
    ComplexMatrix q, p, n, n2, v;  // v = Q^nu
    static OscillatorOperators build(int dim, int nu) {
        OscillatorOperators ops;
        ops.q = position_matrix(dim);
        ops.p = momentum_matrix(dim);
        ops.n = number_matrix(dim);
        ops.n2 = ops.n * ops.n;
        ops.v = matrix_power(ops.q, nu);
        return ops;
    }
};

// Table-I observables in the quantum-quantum scheme.
inline ObservableRecord observables_qq(const ComplexMatrix& z, const OscillatorConfig& cfg,
                                       const OscillatorOperators& ops) {
    if (std::abs(z.norm() - 1.0) > 1e-6)
        throw validation_error("observables_qq: state matrix is not normalized");
    ObservableRecord r;
    r.q1 = expectation1(z, ops.q).real();
    r.p1 = expectation1(z, ops.p).real();
    r.q2 = expectation2(z, ops.q).real();
    r.p2 = expectation2(z, ops.p).real();
    const double n1 = expectation1(z, ops.n).real();
    const double n2sq = expectation1(z, ops.n2).real();
    const double m1 = expectation2(z, ops.n).real();
    const double m2sq = expectation2(z, ops.n2).real();
    r.n_occ = n1;
    r.var_n = n2sq - n1 * n1;
    r.m_occ = m1;
    r.var_m = m2sq - m1 * m1;
    r.e1 = (1.0 + cfg.sigma) * (n1 + 0.5);
    r.e2 = (1.0 - cfg.sigma) * (m1 + 0.5);
    r.e_int = cfg.lambda * expectation_interaction(z, ops.v, ops.v).real();
    return r;
}

inline ObservableRecord observables_qq(const ComplexMatrix& z, const OscillatorConfig& cfg) {
    return observables_qq(z, cfg, OscillatorOperators::build(int(z.rows()), cfg.nu));
}

// Coherent-state expectation <q^order> from the recursion
// <q^n> = <q><q^{n-1}> + (n-1)/2 <q^{n-2}>.
inline double coherent_q_moment(double mean_q, int order) {
    if (order < 0) throw validation_error("coherent_q_moment: order must be >= 0");
    double prev2 = 1.0;  // <q^0>
    if (order == 0) return prev2;
    double prev1 = mean_q;  // <q^1>
    for (int n = 2; n <= order; ++n) {
        const double cur = mean_q * prev1 + 0.5 * (n - 1) * prev2;
        prev2 = prev1;
        prev1 = cur;
    }
    return prev1;
}

}  // namespace oscsim
