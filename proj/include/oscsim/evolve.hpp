// Copyright 2026 The oscsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Time evolution under the four schemes: fully quantum (QQ, spectral and
// direct), classical-quantum (CQ), classical-classical (CC) and classical
// background (CB), with conserved-quantity and truncation monitoring.
//
// Conventions: time is the dimensionless tau; the state matrix Z is d1 x d2
// with row index on subsystem 1; the vectorization used for the spectral
// eigenproblem is row-major, j = n*d2 + mu, under which the full Hamiltonian
// is H1 (x) I + I (x) H2 + lambda V1 (x) V2.

#pragma once

#include "oscsim/entanglement.hpp"
#include "oscsim/matrix.hpp"
#include "oscsim/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace oscsim {

inline constexpr double kDefaultStep = 1e-3;
inline constexpr double kNormDriftLimit = 1e-4;
inline constexpr double kBlowUpLimit = 1e6;

struct Trajectory {
    std::string scheme;
    std::vector<double> tau;
    std::vector<ObservableRecord> records;
    std::vector<double> norm;             // ||Z|| or ||z||; empty for CC
    std::vector<EntropyRecord> entropy;   // QQ only
    bool energy_conserved_scheme = true;  // false for CB
    double max_norm_drift = 0.0;

    // Optional per-sample state snapshots.
    std::vector<ComplexMatrix> states;    // QQ
    std::vector<ComplexVector> zstates;   // CQ/CB quantum column
    std::vector<Complex> a_series;        // classical amplitude, subsystem 1
    std::vector<Complex> b_series;        // classical amplitude, subsystem 2

    double relative_energy_drift() const {
        if (records.empty()) return 0.0;
        const double e0 = records.front().e_total();
        double worst = 0.0;
        for (const auto& r : records) worst = std::max(worst, std::abs(r.e_total() - e0));
        const double scale = std::max(std::abs(e0), 1e-300);
        return worst / scale;
    }
};

struct EvolveOptions {
    bool keep_states = false;
    bool compute_entropy = true;   // QQ schemes only
    bool backreaction = true;      // CQ only; false reduces CQ to CB
};

inline void check_time_grid(const std::vector<double>& times) {
    if (times.empty()) throw validation_error("evolve: empty time grid");
    if (times.front() < 0.0) throw validation_error("evolve: time grid must start at tau >= 0");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (times[i] <= times[i - 1])
            throw validation_error("evolve: time grid must be strictly increasing");
}

inline std::vector<double> uniform_grid(double horizon, double stride) {
    if (horizon <= 0.0 || stride <= 0.0)
        throw validation_error("uniform_grid: horizon and stride must be positive");
    std::vector<double> t;
    const auto count = static_cast<std::size_t>(std::floor(horizon / stride + 1e-9));
    t.reserve(count + 1);
    for (std::size_t k = 0; k <= count; ++k) t.push_back(double(k) * stride);
    return t;
}

// Classic fixed-step 4th-order step. State must support the usual vector
// space arithmetic (Eigen types or the small scheme states below).
template <class State, class Rhs>
State rk4_step(const State& y, double t, double h, Rhs&& f) {
    const State k1 = f(t, y);
    const State k2 = f(t + 0.5 * h, State(y + (0.5 * h) * k1));
    const State k3 = f(t + 0.5 * h, State(y + (0.5 * h) * k2));
    const State k4 = f(t + h, State(y + h * k3));
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

namespace detail {

// out = v1 * z * v2^T using the band structure of v1 and v2.
inline ComplexMatrix sandwich_banded(const ComplexMatrix& v1, Eigen::Index bw1,
                                     const ComplexMatrix& z, const ComplexMatrix& v2,
                                     Eigen::Index bw2) {
    ComplexMatrix y;
    banded_mul(v1, bw1, z, y);
    const auto d2 = v2.rows();
    ComplexMatrix out = ComplexMatrix::Zero(y.rows(), d2);
    for (Eigen::Index mu = 0; mu < d2; ++mu) {
        const Eigen::Index n0 = std::max<Eigen::Index>(0, mu - bw2);
        const Eigen::Index n1 = std::min<Eigen::Index>(d2 - 1, mu + bw2);
        for (Eigen::Index nu = n0; nu <= n1; ++nu) {
            const Complex w = v2(mu, nu);
            if (w == Complex(0.0, 0.0)) continue;
            out.col(mu).noalias() += w * y.col(nu);
        }
    }
    return out;
}

struct CqState {
    Complex a;
    ComplexVector z;
    friend CqState operator+(const CqState& x, const CqState& y) { return {x.a + y.a, x.z + y.z}; }
    friend CqState operator*(double s, const CqState& x) { return {s * x.a, ComplexVector(s * x.z)}; }
};

struct CcState {
    Complex a, b;
    friend CcState operator+(const CcState& x, const CcState& y) { return {x.a + y.a, x.b + y.b}; }
    friend CcState operator*(double s, const CcState& x) { return {s * x.a, s * x.b}; }
};

inline int substeps_for(double span, double step) {
    return std::max(1, int(std::ceil(span / step - 1e-12)));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Quantum-quantum, spectral path.
//
// Solves E_j Z_j = H1 Z_j + Z_j H2 + lambda V1 Z_j V2^T once as a d1*d2
// Hermitian eigenproblem, then evaluates
//   Z(tau) = sum_j c_j exp(-i E_j tau) Z_j,  c_j = <<Z(0), Z_j>>.
// ---------------------------------------------------------------------------

struct SpectralSolution {
    RealVector energies;
    ComplexMatrix modes;   // columns are vectorized Z_j (row-major j = n*d2+mu)
    ComplexVector coeffs;  // c_j
    Eigen::Index d1 = 0, d2 = 0;

    ComplexMatrix state_at(double tau) const {
        ComplexVector phase(energies.size());
        for (Eigen::Index j = 0; j < energies.size(); ++j)
            phase(j) = coeffs(j) * std::exp(Complex(0.0, -energies(j) * tau));
        const ComplexVector vec = modes * phase;
        ComplexMatrix z(d1, d2);
        for (Eigen::Index n = 0; n < d1; ++n)
            for (Eigen::Index mu = 0; mu < d2; ++mu) z(n, mu) = vec(n * d2 + mu);
        return z;
    }
};

inline ComplexMatrix assemble_full_hamiltonian(const SystemSpec& spec) {
    const auto d1 = spec.dim1();
    const auto d2 = spec.dim2();
    const auto dim = d1 * d2;
    ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
    const RealVector e1 = spec.energies1();
    const RealVector e2 = spec.energies2();
    for (Eigen::Index n = 0; n < d1; ++n)
        for (Eigen::Index mu = 0; mu < d2; ++mu)
            h(n * d2 + mu, n * d2 + mu) = e1(n) + e2(mu);
    for (Eigen::Index n = 0; n < d1; ++n)
        for (Eigen::Index np = 0; np < d1; ++np) {
            const Complex v1 = spec.lambda * spec.v1(n, np);
            if (v1 == Complex(0.0, 0.0)) continue;
            for (Eigen::Index mu = 0; mu < d2; ++mu)
                for (Eigen::Index mup = 0; mup < d2; ++mup)
                    h(n * d2 + mu, np * d2 + mup) += v1 * spec.v2(mu, mup);
        }
    return h;
}

inline SpectralSolution solve_spectral(const SystemSpec& spec, const ComplexMatrix& z0) {
    spec.validate();
    if (z0.rows() != spec.dim1() || z0.cols() != spec.dim2())
        throw validation_error("evolve_qq_spectral: z0 dimensions do not match the system");
    if (spec.dim1() * spec.dim2() > 10000)
        throw validation_error("evolve_qq_spectral: d1*d2 > 10000; use the direct integrator");

    SpectralSolution sol;
    sol.d1 = spec.dim1();
    sol.d2 = spec.dim2();
    const EigenSystem sys = hermitian_eigen(assemble_full_hamiltonian(spec));
    sol.energies = sys.values;
    sol.modes = sys.vectors;

    ComplexVector vec0(sol.d1 * sol.d2);
    for (Eigen::Index n = 0; n < sol.d1; ++n)
        for (Eigen::Index mu = 0; mu < sol.d2; ++mu) vec0(n * sol.d2 + mu) = z0(n, mu);
    sol.coeffs = sol.modes.adjoint() * vec0;
    return sol;
}

inline Trajectory evolve_qq_spectral(const SystemSpec& spec, const ComplexMatrix& z0,
                                     const std::vector<double>& times,
                                     const OscillatorConfig* cfg = nullptr,
                                     const EvolveOptions& opts = {}) {
    check_time_grid(times);
    const SpectralSolution sol = solve_spectral(spec, z0);

    Trajectory traj;
    traj.scheme = "qq-spectral";
    traj.tau = times;
    OscillatorOperators ops;
    if (cfg) ops = OscillatorOperators::build(cfg->dim(), cfg->nu);

    for (const double t : times) {
        const ComplexMatrix z = sol.state_at(t);
        const double norm = z.norm();
        traj.norm.push_back(norm);
        traj.max_norm_drift = std::max(traj.max_norm_drift, std::abs(norm - 1.0));
        ObservableRecord rec;
        if (cfg) {
            rec = observables_qq(z, *cfg, ops);
        } else {
            rec.e1 = expectation1(z, spec.h1).real();
            rec.e2 = expectation2(z, spec.h2).real();
            rec.e_int = spec.lambda * expectation_interaction(z, spec.v1, spec.v2).real();
        }
        traj.records.push_back(rec);
        if (opts.compute_entropy) traj.entropy.push_back(entropies(z));
        if (opts.keep_states) traj.states.push_back(z);
    }
    return traj;
}

// ---------------------------------------------------------------------------
// Quantum-quantum, direct integration of i dZ/dtau = H1 Z + Z H2 + l V1 Z V2^T.
// No renormalization is applied; norm drift is a reported quality signal.
// ---------------------------------------------------------------------------

inline Trajectory evolve_qq_direct(const SystemSpec& spec, const ComplexMatrix& z0,
                                   const std::vector<double>& times, double step = kDefaultStep,
                                   const OscillatorConfig* cfg = nullptr,
                                   const EvolveOptions& opts = {}) {
    spec.validate();
    check_time_grid(times);
    if (step <= 0.0) throw validation_error("evolve_qq_direct: step must be positive");
    if (z0.rows() != spec.dim1() || z0.cols() != spec.dim2())
        throw validation_error("evolve_qq_direct: z0 dimensions do not match the system");

    const RealVector e1 = spec.energies1();
    const RealVector e2 = spec.energies2();
    const Eigen::Index bw1 = matrix_bandwidth(spec.v1);
    const Eigen::Index bw2 = matrix_bandwidth(spec.v2);
    const double lambda = spec.lambda;
    const Complex mi(0.0, -1.0);

    auto rhs = [&](double, const ComplexMatrix& z) -> ComplexMatrix {
        ComplexMatrix h = e1.asDiagonal() * z;
        h += z * e2.asDiagonal();
        if (lambda != 0.0)
            h += lambda * detail::sandwich_banded(spec.v1, bw1, z, spec.v2, bw2);
        return mi * h;
    };

    Trajectory traj;
    traj.scheme = "qq-direct";
    traj.tau = times;
    OscillatorOperators ops;
    if (cfg) ops = OscillatorOperators::build(cfg->dim(), cfg->nu);

    ComplexMatrix z = z0;
    double t = 0.0;
    for (const double target : times) {
        if (target > t) {
            const int nsub = detail::substeps_for(target - t, step);
            const double h = (target - t) / nsub;
            for (int k = 0; k < nsub; ++k) z = rk4_step(z, t + k * h, h, rhs);
            t = target;
        }
        const double norm = z.norm();
        traj.norm.push_back(norm);
        traj.max_norm_drift = std::max(traj.max_norm_drift, std::abs(norm - 1.0));
        if (traj.max_norm_drift > kNormDriftLimit)
            throw accuracy_error("evolve_qq_direct: norm drift " +
                                 std::to_string(traj.max_norm_drift) +
                                 " exceeds 1e-4; reduce the integration step");
        ObservableRecord rec;
        if (cfg) {
            rec = observables_qq(z / norm, *cfg, ops);
        } else {
            rec.e1 = expectation1(z, spec.h1).real();
            rec.e2 = expectation2(z, spec.h2).real();
            rec.e_int = lambda * expectation_interaction(z, spec.v1, spec.v2).real();
        }
        traj.records.push_back(rec);
        if (opts.compute_entropy) traj.entropy.push_back(entropies(z));
        if (opts.keep_states) traj.states.push_back(z);
    }
    return traj;
}

// ---------------------------------------------------------------------------
// Classical-quantum and classical-background.
//
// CQ:  i da/dtau = (1+s) a + (1/sqrt2) l nu (sqrt2 Re a)^{nu-1} z^dag Q^nu z
//      i dz/dtau = (1-s)(N + I/2) z + l (sqrt2 Re a)^nu Q^nu z
// CB drops the backreaction term in the classical equation, whose solution is
// then the free rotation a(tau) = a(0) exp(-i(1+s)tau), used analytically.
// ---------------------------------------------------------------------------

namespace detail {

inline ObservableRecord cq_record(const OscillatorConfig& cfg, const Complex& a,
                                  const ComplexVector& z, const OscillatorOperators& ops) {
    ObservableRecord r;
    r.q1 = std::sqrt(2.0) * a.real();
    r.p1 = std::sqrt(2.0) * a.imag();
    const ComplexVector zn = z / z.norm();
    r.q2 = std::real(zn.dot(ops.q * zn));
    r.p2 = std::real(zn.dot(ops.p * zn));
    const double m = std::real(zn.dot(ops.n * zn));
    const double m2 = std::real(zn.dot(ops.n2 * zn));
    r.m_occ = m;
    r.var_m = m2 - m * m;
    r.e1 = (1.0 + cfg.sigma) * std::norm(a);
    r.e2 = (1.0 - cfg.sigma) * (m + 0.5);
    const double v1c = std::pow(std::sqrt(2.0) * a.real(), cfg.nu);
    r.e_int = cfg.lambda * v1c * std::real(zn.dot(ops.v * zn));
    return r;
}

template <class Drive>
Trajectory evolve_driven_column(const OscillatorConfig& cfg, const std::vector<double>& times,
                                double step, Drive&& classical_a, const char* scheme,
                                bool energy_conserved, const EvolveOptions& opts) {
    cfg.validate();
    check_time_grid(times);
    if (step <= 0.0) throw validation_error("evolve: step must be positive");

    const int d = cfg.dim();
    const auto ops = OscillatorOperators::build(d, cfg.nu);
    const RealVector e2 = [&] {
        RealVector e(d);
        for (int k = 0; k < d; ++k) e(k) = (1.0 - cfg.sigma) * (k + 0.5);
        return e;
    }();
    const Eigen::Index bw = cfg.nu;
    const Complex mi(0.0, -1.0);

    auto rhs = [&](double t, const ComplexVector& z) -> ComplexVector {
        const Complex a = classical_a(t);
        const double v1c = std::pow(std::sqrt(2.0) * a.real(), cfg.nu);
        ComplexVector h = e2.asDiagonal() * z;
        ComplexVector vz(d);
        vz.setZero();
        for (Eigen::Index i = 0; i < d; ++i) {
            const Eigen::Index j0 = std::max<Eigen::Index>(0, i - bw);
            const Eigen::Index j1 = std::min<Eigen::Index>(d - 1, i + bw);
            for (Eigen::Index j = j0; j <= j1; ++j) vz(i) += ops.v(i, j) * z(j);
        }
        h += (cfg.lambda * v1c) * vz;
        return mi * h;
    };

    Trajectory traj;
    traj.scheme = scheme;
    traj.tau = times;
    traj.energy_conserved_scheme = energy_conserved;

    ComplexVector z = coherent_vector({cfg.beta(), d});
    double t = 0.0;
    for (const double target : times) {
        if (target > t) {
            const int nsub = substeps_for(target - t, step);
            const double h = (target - t) / nsub;
            for (int k = 0; k < nsub; ++k) z = rk4_step(z, t + k * h, h, rhs);
            t = target;
        }
        const double norm = z.norm();
        traj.norm.push_back(norm);
        traj.max_norm_drift = std::max(traj.max_norm_drift, std::abs(norm - 1.0));
        if (traj.max_norm_drift > kNormDriftLimit)
            throw accuracy_error(std::string(scheme) +
                                 ": norm drift exceeds 1e-4; reduce the integration step");
        traj.records.push_back(cq_record(cfg, classical_a(t), z, ops));
        traj.a_series.push_back(classical_a(t));
        if (opts.keep_states) traj.zstates.push_back(z);
    }
    return traj;
}

}  // namespace detail

inline Trajectory evolve_cq(const OscillatorConfig& cfg, const std::vector<double>& times,
                            double step = kDefaultStep, const EvolveOptions& opts = {}) {
    if (!opts.backreaction) {
        // With the backreaction term zeroed the classical equation is the free
        // rotation, handled analytically exactly as in the CB scheme.
        const Complex a0 = cfg.alpha();
        const double w1 = 1.0 + cfg.sigma;
        return detail::evolve_driven_column(
            cfg, times, step, [a0, w1](double t) { return a0 * std::exp(Complex(0.0, -w1 * t)); },
            "cq", true, opts);
    }

    cfg.validate();
    check_time_grid(times);
    if (step <= 0.0) throw validation_error("evolve_cq: step must be positive");

    const int d = cfg.dim();
    const auto ops = OscillatorOperators::build(d, cfg.nu);
    RealVector e2(d);
    for (int k = 0; k < d; ++k) e2(k) = (1.0 - cfg.sigma) * (k + 0.5);
    const Eigen::Index bw = cfg.nu;
    const Complex mi(0.0, -1.0);
    const double sqrt2 = std::sqrt(2.0);

    auto rhs = [&](double, const detail::CqState& s) -> detail::CqState {
        ComplexVector vz(d);
        vz.setZero();
        for (Eigen::Index i = 0; i < d; ++i) {
            const Eigen::Index j0 = std::max<Eigen::Index>(0, i - bw);
            const Eigen::Index j1 = std::min<Eigen::Index>(d - 1, i + bw);
            for (Eigen::Index j = j0; j <= j1; ++j) vz(i) += ops.v(i, j) * s.z(j);
        }
        const Complex zvz = s.z.dot(vz);  // z^dag Q^nu z
        const double q1 = sqrt2 * s.a.real();
        const Complex da = mi * ((1.0 + cfg.sigma) * s.a +
                                 (cfg.lambda * cfg.nu / sqrt2) *
                                     std::pow(q1, cfg.nu - 1) * zvz);
        ComplexVector dz = e2.asDiagonal() * s.z;
        dz += (cfg.lambda * std::pow(q1, cfg.nu)) * vz;
        return {da, ComplexVector(mi * dz)};
    };

    Trajectory traj;
    traj.scheme = "cq";
    traj.tau = times;

    detail::CqState s{cfg.alpha(), coherent_vector({cfg.beta(), d})};
    double t = 0.0;
    for (const double target : times) {
        if (target > t) {
            const int nsub = detail::substeps_for(target - t, step);
            const double h = (target - t) / nsub;
            for (int k = 0; k < nsub; ++k) s = rk4_step(s, t + k * h, h, rhs);
            t = target;
        }
        const double norm = s.z.norm();
        traj.norm.push_back(norm);
        traj.max_norm_drift = std::max(traj.max_norm_drift, std::abs(norm - 1.0));
        if (traj.max_norm_drift > kNormDriftLimit)
            throw accuracy_error("evolve_cq: norm drift exceeds 1e-4; reduce the step");
        traj.records.push_back(detail::cq_record(cfg, s.a, s.z, ops));
        traj.a_series.push_back(s.a);
        if (opts.keep_states) traj.zstates.push_back(s.z);
    }
    return traj;
}

inline Trajectory evolve_cb(const OscillatorConfig& cfg, const std::vector<double>& times,
                            double step = kDefaultStep, const EvolveOptions& opts = {}) {
    const Complex a0 = cfg.alpha();
    const double w1 = 1.0 + cfg.sigma;
    return detail::evolve_driven_column(
        cfg, times, step, [a0, w1](double t) { return a0 * std::exp(Complex(0.0, -w1 * t)); },
        "cb", false, opts);
}

// ---------------------------------------------------------------------------
// Classical-classical:
//   i da/dtau = (1+s) a + 2^{nu-1} nu l (Re a)^{nu-1} (Re b)^nu
//   i db/dtau = (1-s) b + 2^{nu-1} nu l (Re a)^nu (Re b)^{nu-1}
// ---------------------------------------------------------------------------

inline Trajectory evolve_cc(const OscillatorConfig& cfg, const std::vector<double>& times,
                            double step = kDefaultStep, const EvolveOptions& opts = {}) {
    cfg.validate();
    check_time_grid(times);
    if (step <= 0.0) throw validation_error("evolve_cc: step must be positive");

    const double c = std::pow(2.0, cfg.nu - 1) * cfg.nu * cfg.lambda;
    const Complex mi(0.0, -1.0);

    auto rhs = [&](double, const detail::CcState& s) -> detail::CcState {
        const double ra = s.a.real();
        const double rb = s.b.real();
        const Complex da = mi * ((1.0 + cfg.sigma) * s.a +
                                 c * std::pow(ra, cfg.nu - 1) * std::pow(rb, cfg.nu));
        const Complex db = mi * ((1.0 - cfg.sigma) * s.b +
                                 c * std::pow(ra, cfg.nu) * std::pow(rb, cfg.nu - 1));
        return {da, db};
    };

    Trajectory traj;
    traj.scheme = "cc";
    traj.tau = times;

    detail::CcState s{cfg.alpha(), cfg.beta()};
    double t = 0.0;
    for (const double target : times) {
        if (target > t) {
            const int nsub = detail::substeps_for(target - t, step);
            const double h = (target - t) / nsub;
            for (int k = 0; k < nsub; ++k) s = rk4_step(s, t + k * h, h, rhs);
            t = target;
        }
        if (std::abs(s.a) > kBlowUpLimit || std::abs(s.b) > kBlowUpLimit)
            throw numeric_error("evolve_cc: amplitude blow-up (unbounded Hamiltonian for odd nu?)");
        ObservableRecord r;
        r.q1 = std::sqrt(2.0) * s.a.real();
        r.p1 = std::sqrt(2.0) * s.a.imag();
        r.q2 = std::sqrt(2.0) * s.b.real();
        r.p2 = std::sqrt(2.0) * s.b.imag();
        r.e1 = (1.0 + cfg.sigma) * std::norm(s.a);
        r.e2 = (1.0 - cfg.sigma) * std::norm(s.b);
        r.e_int = std::pow(2.0, cfg.nu) * cfg.lambda * std::pow(s.a.real(), cfg.nu) *
                  std::pow(s.b.real(), cfg.nu);
        traj.records.push_back(r);
        traj.a_series.push_back(s.a);
        traj.b_series.push_back(s.b);
    }
    (void)opts;
    return traj;
}

// ---------------------------------------------------------------------------
// Truncation validity.
// ---------------------------------------------------------------------------

struct TruncationReport {
    bool passed = true;          // worst statistic stays below n_max
    bool meets_headroom = true;  // n_max >= 1.5 x worst statistic
    double worst_stat = 0.0;     // max over time of <n>+sqrt(Var n), <m>+sqrt(Var m)
    double worst_tau = 0.0;
    double margin = 0.0;         // n_max - worst_stat
    double headroom_ratio = 0.0; // n_max / worst_stat (inf when nothing occupied)
};

inline TruncationReport truncation_monitor(const Trajectory& traj, int n_max) {
    TruncationReport rep;
    for (std::size_t i = 0; i < traj.records.size(); ++i) {
        const auto& r = traj.records[i];
        double stat = 0.0;
        if (r.n_occ) stat = std::max(stat, *r.n_occ + std::sqrt(std::max(0.0, r.var_n.value_or(0.0))));
        if (r.m_occ) stat = std::max(stat, *r.m_occ + std::sqrt(std::max(0.0, r.var_m.value_or(0.0))));
        if (stat > rep.worst_stat) {
            rep.worst_stat = stat;
            rep.worst_tau = traj.tau[i];
        }
    }
    rep.passed = rep.worst_stat < double(n_max);
    rep.margin = double(n_max) - rep.worst_stat;
    rep.headroom_ratio = rep.worst_stat > 0.0
                             ? double(n_max) / rep.worst_stat
                             : std::numeric_limits<double>::infinity();
    rep.meets_headroom = rep.headroom_ratio >= 1.5;
    return rep;
}

// Mean von Neumann entropy of a QQ trajectory over tau > burn_in.
inline double entropy_time_average(const Trajectory& traj, double burn_in) {
    if (traj.entropy.size() != traj.tau.size())
        throw validation_error("entropy_time_average: trajectory carries no entropy series");
    std::vector<double> svn(traj.entropy.size());
    for (std::size_t i = 0; i < svn.size(); ++i) svn[i] = traj.entropy[i].s_vn;
    return entropy_time_average(traj.tau, svn, burn_in);
}

}  // namespace oscsim
