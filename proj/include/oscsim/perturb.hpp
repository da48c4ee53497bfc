// Copyright 2026 The oscsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// First-order interaction-picture perturbation theory: the quadrature
// solutions for the first-order coefficient matrix and reduced density
// matrices, the entropy bounds built from their norms, and the zero-coupling
// classicality gauge epsilon0 together with the QQ/CQ relative errors.

#pragma once

#include "oscsim/evolve.hpp"
#include "oscsim/matrix.hpp"
#include "oscsim/model.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace oscsim {

// V_k in the interaction picture: entry (a,b) acquires exp(i(E_a - E_b)t).
inline ComplexMatrix interaction_picture_op(const ComplexMatrix& v, const RealVector& energies,
                                            double t) {
    ComplexMatrix out(v.rows(), v.cols());
    for (Eigen::Index a = 0; a < v.rows(); ++a)
        for (Eigen::Index b = 0; b < v.cols(); ++b)
            out(a, b) = v(a, b) * std::exp(Complex(0.0, (energies(a) - energies(b)) * t));
    return out;
}

inline std::pair<ComplexMatrix, ComplexMatrix> interaction_picture_v(const SystemSpec& spec,
                                                                     double t) {
    return {interaction_picture_op(spec.v1, spec.energies1(), t),
            interaction_picture_op(spec.v2, spec.energies2(), t)};
}

namespace detail {

inline ComplexVector rotated_v_u(const ComplexMatrix& v, const RealVector& e,
                                 const ComplexVector& u, double t) {
    // (e^{iHt} V e^{-iHt}) u without forming the matrix.
    ComplexVector phased(u.size());
    for (Eigen::Index k = 0; k < u.size(); ++k)
        phased(k) = u(k) * std::exp(Complex(0.0, -e(k) * t));
    ComplexVector w = v * phased;
    for (Eigen::Index k = 0; k < w.size(); ++k) w(k) *= std::exp(Complex(0.0, e(k) * t));
    return w;
}

}  // namespace detail

// Z^(1)(t) = -i \int_0^t V1'(t') u1 (V2'(t') u2)^T dt'  (composite trapezoid).
inline ComplexMatrix first_order_z(const SystemSpec& spec, const ComplexVector& u1,
                                   const ComplexVector& u2, double t, double quad_step) {
    if (quad_step <= 0.0) throw validation_error("first_order_z: quad_step must be positive");
    spec.validate();
    if (t < 0.0) throw validation_error("first_order_z: t must be >= 0");
    const RealVector e1 = spec.energies1();
    const RealVector e2 = spec.energies2();

    ComplexMatrix acc = ComplexMatrix::Zero(u1.size(), u2.size());
    if (t == 0.0) return acc;
    const int steps = std::max(1, int(std::ceil(t / quad_step - 1e-12)));
    const double h = t / steps;
    auto integrand = [&](double s) -> ComplexMatrix {
        const ComplexVector w1 = detail::rotated_v_u(spec.v1, e1, u1, s);
        const ComplexVector w2 = detail::rotated_v_u(spec.v2, e2, u2, s);
        return w1 * w2.transpose();
    };
    ComplexMatrix prev = integrand(0.0);
    for (int k = 1; k <= steps; ++k) {
        const ComplexMatrix cur = integrand(k * h);
        acc += (0.5 * h) * (prev + cur);
        prev = cur;
    }
    return Complex(0.0, -1.0) * acc;
}

// rho^(1) for subsystem 1 or 2:
//   rho1^(1)(t) = -i \int <V2'>_0 [V1'(t'), u1 u1^dagger] dt'
// and symmetrically for subsystem 2. Hermitian and traceless by construction.
inline ComplexMatrix first_order_rho(const SystemSpec& spec, const ComplexVector& u1,
                                     const ComplexVector& u2, int subsystem, double t,
                                     double quad_step) {
    if (quad_step <= 0.0) throw validation_error("first_order_rho: quad_step must be positive");
    if (subsystem != 1 && subsystem != 2)
        throw validation_error("first_order_rho: subsystem must be 1 or 2");
    spec.validate();
    const bool first = subsystem == 1;
    const ComplexMatrix& v_self = first ? spec.v1 : spec.v2;
    const ComplexMatrix& v_other = first ? spec.v2 : spec.v1;
    const RealVector e_self = first ? spec.energies1() : spec.energies2();
    const RealVector e_other = first ? spec.energies2() : spec.energies1();
    const ComplexVector& u_self = first ? u1 : u2;
    const ComplexVector& u_other = first ? u2 : u1;

    const ComplexMatrix proj = u_self * u_self.adjoint();
    ComplexMatrix acc = ComplexMatrix::Zero(proj.rows(), proj.cols());
    if (t == 0.0) return acc;
    const int steps = std::max(1, int(std::ceil(t / quad_step - 1e-12)));
    const double h = t / steps;
    auto integrand = [&](double s) -> ComplexMatrix {
        const ComplexVector wo = detail::rotated_v_u(v_other, e_other, u_other, s);
        const double vexp = std::real(u_other.dot(wo));  // <V_other(s)>_0
        const ComplexMatrix vt = interaction_picture_op(v_self, e_self, s);
        return vexp * (vt * proj - proj * vt);
    };
    ComplexMatrix prev = integrand(0.0);
    for (int k = 1; k <= steps; ++k) {
        const ComplexMatrix cur = integrand(k * h);
        acc += (0.5 * h) * (prev + cur);
        prev = cur;
    }
    return Complex(0.0, -1.0) * acc;
}

// Norms of the first-order quantities accumulated once over a shared grid.
struct PerturbationResult {
    std::vector<double> times;
    std::vector<double> z1_norm;
    std::vector<double> rho1_norm;
    std::vector<double> rho2_norm;
};

inline PerturbationResult perturbation_norm_series(const SystemSpec& spec, const ComplexVector& u1,
                                                   const ComplexVector& u2,
                                                   const std::vector<double>& times,
                                                   double quad_step) {
    if (quad_step <= 0.0)
        throw validation_error("perturbation_norm_series: quad_step must be positive");
    check_time_grid(times);
    spec.validate();
    const RealVector e1 = spec.energies1();
    const RealVector e2 = spec.energies2();
    const ComplexMatrix proj1 = u1 * u1.adjoint();
    const ComplexMatrix proj2 = u2 * u2.adjoint();

    PerturbationResult out;
    out.times = times;

    ComplexMatrix acc_z = ComplexMatrix::Zero(u1.size(), u2.size());
    ComplexMatrix acc_r1 = ComplexMatrix::Zero(u1.size(), u1.size());
    ComplexMatrix acc_r2 = ComplexMatrix::Zero(u2.size(), u2.size());

    struct Slice {
        ComplexMatrix z, r1, r2;
    };
    auto integrands = [&](double s) -> Slice {
        const ComplexVector w1 = detail::rotated_v_u(spec.v1, e1, u1, s);
        const ComplexVector w2 = detail::rotated_v_u(spec.v2, e2, u2, s);
        const double v1exp = std::real(u1.dot(w1));
        const double v2exp = std::real(u2.dot(w2));
        const ComplexMatrix vt1 = interaction_picture_op(spec.v1, e1, s);
        const ComplexMatrix vt2 = interaction_picture_op(spec.v2, e2, s);
        return {w1 * w2.transpose(), v2exp * (vt1 * proj1 - proj1 * vt1),
                v1exp * (vt2 * proj2 - proj2 * vt2)};
    };

    double t = 0.0;
    Slice prev = integrands(0.0);
    for (const double target : times) {
        if (target > t) {
            const int steps = std::max(1, int(std::ceil((target - t) / quad_step - 1e-12)));
            const double h = (target - t) / steps;
            for (int k = 1; k <= steps; ++k) {
                const Slice cur = integrands(t + k * h);
                acc_z += (0.5 * h) * (prev.z + cur.z);
                acc_r1 += (0.5 * h) * (prev.r1 + cur.r1);
                acc_r2 += (0.5 * h) * (prev.r2 + cur.r2);
                prev = cur;
            }
            t = target;
        }
        out.z1_norm.push_back(acc_z.norm());
        out.rho1_norm.push_back(acc_r1.norm());
        out.rho2_norm.push_back(acc_r2.norm());
    }
    return out;
}

// Per-time upper bounds S_VN <= 2 lambda ||Z^(1)|| and
// S_LIN <= 2 lambda min(||rho1^(1)||, ||rho2^(1)||), leading order in lambda.
struct EntropyBounds {
    std::vector<double> times;
    std::vector<double> s_vn_bound;
    std::vector<double> s_lin_bound;
};

inline EntropyBounds entropy_bounds(const PerturbationResult& pr, double lambda) {
    EntropyBounds out;
    out.times = pr.times;
    out.s_vn_bound.reserve(pr.times.size());
    out.s_lin_bound.reserve(pr.times.size());
    for (std::size_t i = 0; i < pr.times.size(); ++i) {
        out.s_vn_bound.push_back(2.0 * lambda * pr.z1_norm[i]);
        out.s_lin_bound.push_back(2.0 * lambda * std::min(pr.rho1_norm[i], pr.rho2_norm[i]));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Zero-coupling classicality gauge epsilon0 for the oscillator system.
// ---------------------------------------------------------------------------

inline double free_classical_q1(const OscillatorConfig& cfg, double t) {
    return std::sqrt(2.0) * std::abs(cfg.alpha()) * std::cos((1.0 + cfg.sigma) * t - cfg.phi1);
}

inline double free_classical_q2(const OscillatorConfig& cfg, double t) {
    return std::sqrt(2.0) * std::abs(cfg.beta()) * std::cos((1.0 - cfg.sigma) * t - cfg.phi2);
}

// Closed form for nu = 2: eps0(t) = 1 / (4 |alpha|^2 cos^2(w1 t - phi1) + 1).
inline double epsilon0_closed_nu2(const OscillatorConfig& cfg, double t) {
    const double c = std::cos((1.0 + cfg.sigma) * t - cfg.phi1);
    return 1.0 / (4.0 * std::norm(cfg.alpha()) * c * c + 1.0);
}

// General nu via the coherent moment recursion:
// eps0 = (<q^nu> - q_cl^nu) / <q^nu> on the free trajectory.
inline double epsilon0_general(const OscillatorConfig& cfg, double t) {
    const double q = free_classical_q1(cfg, t);
    const double expect = coherent_q_moment(q, cfg.nu);
    if (expect == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return (expect - std::pow(q, cfg.nu)) / expect;
}

inline std::vector<double> epsilon0_series(const OscillatorConfig& cfg,
                                           const std::vector<double>& times) {
    cfg.validate();
    std::vector<double> out;
    out.reserve(times.size());
    for (const double t : times)
        out.push_back(cfg.nu == 2 ? epsilon0_closed_nu2(cfg, t) : epsilon0_general(cfg, t));
    return out;
}

// ---------------------------------------------------------------------------
// Relative QQ/CQ errors per observable. Points where the QQ denominator
// magnitude falls below 1e-8 are masked, not divided.
// ---------------------------------------------------------------------------

inline constexpr double kDenominatorFloor = 1e-8;

using MaskedSeries = std::vector<std::optional<double>>;

namespace detail {

inline double record_field(const ObservableRecord& r, const std::string& name) {
    if (name == "q1") return r.q1;
    if (name == "p1") return r.p1;
    if (name == "q2") return r.q2;
    if (name == "p2") return r.p2;
    if (name == "e1") return r.e1;
    if (name == "e2") return r.e2;
    if (name == "e_int") return r.e_int;
    if (name == "m_occ") {
        if (!r.m_occ) throw validation_error("observable m_occ not recorded for this scheme");
        return *r.m_occ;
    }
    if (name == "n_occ") {
        if (!r.n_occ) throw validation_error("observable n_occ not recorded for this scheme");
        return *r.n_occ;
    }
    throw validation_error("unknown observable name: " + name);
}

inline void require_matching_grids(const Trajectory& a, const Trajectory& b) {
    if (a.tau.size() != b.tau.size())
        throw validation_error("trajectories have different grid lengths");
    for (std::size_t i = 0; i < a.tau.size(); ++i)
        if (std::abs(a.tau[i] - b.tau[i]) > 1e-12)
            throw validation_error("trajectories have mismatched time grids");
}

inline MaskedSeries relative_observable_error(const Trajectory& qq, const Trajectory& other,
                                              const std::string& observable) {
    require_matching_grids(qq, other);
    MaskedSeries out(qq.tau.size());
    for (std::size_t i = 0; i < qq.tau.size(); ++i) {
        const double ref = record_field(qq.records[i], observable);
        const double val = record_field(other.records[i], observable);
        if (std::abs(ref) < kDenominatorFloor)
            out[i] = std::nullopt;
        else
            out[i] = (ref - val) / ref;
    }
    return out;
}

}  // namespace detail

// Delta A2 = (<A2>_QQ - <A2>_CQ) / <A2>_QQ for a subsystem-2 observable.
inline MaskedSeries delta_a2(const Trajectory& traj_qq, const Trajectory& traj_cq,
                             const std::string& observable) {
    if (observable != "q2" && observable != "p2" && observable != "m_occ" &&
        observable != "e2" && observable != "e_int")
        throw validation_error("delta_a2: not a subsystem-2 observable: " + observable);
    return detail::relative_observable_error(traj_qq, traj_cq, observable);
}

// Delta A1 = (<A1>_QQ - A1_CQ) / <A1>_QQ, which does not vanish as lambda -> 0.
inline MaskedSeries delta_a1(const Trajectory& traj_qq, const Trajectory& traj_cq,
                             const std::string& observable) {
    if (observable != "q1" && observable != "p1" && observable != "e1")
        throw validation_error("delta_a1: not a subsystem-1 observable: " + observable);
    return detail::relative_observable_error(traj_qq, traj_cq, observable);
}

}  // namespace oscsim
