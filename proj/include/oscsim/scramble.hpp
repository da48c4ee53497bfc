// Copyright 2026 The oscsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Scrambling-time machinery: the averaged interaction-energy bound E_int(t),
// the coherence measures N1, N2, the numerical root solves for t_LIN and
// t_VN, the crude closed-form estimate and the parametric-resonance
// predictor for the nu = 2 coupling.
//
// All integrals run over the zero-coupling classical trajectories with
// coherent-state moments supplied by the recursion in model.hpp. Note that
// t * E_int(t) * N_i(t) telescopes to lambda * int sqrt(M_other Var_i), so
// the root function for t_LIN is monotone and bisection is safe.

#pragma once

#include "oscsim/matrix.hpp"
#include "oscsim/model.hpp"
#include "oscsim/perturb.hpp"

#include <cmath>
#include <optional>
#include <vector>

namespace oscsim {

namespace detail {

// Integrand building blocks at zero coupling:
//   M_i(t)  = <q_i^{2nu}>          (= <V_i^2> in units of Omega_bar)
//   Var_i(t) = <q_i^{2nu}> - <q_i^nu>^2
struct ScrambleIntegrand {
    OscillatorConfig cfg;

    double m1(double t) const { return coherent_q_moment(free_classical_q1(cfg, t), 2 * cfg.nu); }
    double m2(double t) const { return coherent_q_moment(free_classical_q2(cfg, t), 2 * cfg.nu); }
    double var1(double t) const {
        const double q = free_classical_q1(cfg, t);
        const double mean = coherent_q_moment(q, cfg.nu);
        return coherent_q_moment(q, 2 * cfg.nu) - mean * mean;
    }
    double var2(double t) const {
        const double q = free_classical_q2(cfg, t);
        const double mean = coherent_q_moment(q, cfg.nu);
        return coherent_q_moment(q, 2 * cfg.nu) - mean * mean;
    }

    // d/dt of the three cumulative integrals.
    double f_ee(double t) const { return std::sqrt(std::max(0.0, m1(t) * m2(t))); }
    double f_n1(double t) const { return std::sqrt(std::max(0.0, m2(t) * var1(t))); }
    double f_n2(double t) const { return std::sqrt(std::max(0.0, m1(t) * var2(t))); }
};

struct CumulativeTriple {
    double ee = 0.0, n1 = 0.0, n2 = 0.0;
};

}  // namespace detail

// E_int(t) = (lambda / t) * int_0^t sqrt(<V1'^2><V2'^2>) dt', in units of the
// mean frequency. The t -> 0 limit is the integrand at t = 0.
inline double interaction_energy_avg(const OscillatorConfig& cfg, double t, double quad_step) {
    cfg.validate();
    if (quad_step <= 0.0)
        throw validation_error("interaction_energy_avg: quad_step must be positive");
    if (t < 0.0) throw validation_error("interaction_energy_avg: t must be >= 0");
    const detail::ScrambleIntegrand gi{cfg};
    if (t == 0.0) return cfg.lambda * gi.f_ee(0.0);
    const int steps = std::max(1, int(std::ceil(t / quad_step - 1e-12)));
    const double h = t / steps;
    double acc = 0.0;
    double prev = gi.f_ee(0.0);
    for (int k = 1; k <= steps; ++k) {
        const double cur = gi.f_ee(k * h);
        acc += 0.5 * h * (prev + cur);
        prev = cur;
    }
    return cfg.lambda * acc / t;
}

// Coherence measures N1, N2 in [0, 1]:
//   N_i(t) = int sqrt(<V_other^2> Var(V_i)) / int sqrt(<V1^2><V2^2>).
inline std::pair<double, double> coherence_measures(const OscillatorConfig& cfg, double t,
                                                    double quad_step) {
    cfg.validate();
    if (quad_step <= 0.0)
        throw validation_error("coherence_measures: quad_step must be positive");
    if (t <= 0.0) throw validation_error("coherence_measures: t must be positive");
    const detail::ScrambleIntegrand gi{cfg};
    const int steps = std::max(1, int(std::ceil(t / quad_step - 1e-12)));
    const double h = t / steps;
    detail::CumulativeTriple acc;
    double pe = gi.f_ee(0.0), p1 = gi.f_n1(0.0), p2 = gi.f_n2(0.0);
    for (int k = 1; k <= steps; ++k) {
        const double s = k * h;
        const double ce = gi.f_ee(s), c1 = gi.f_n1(s), c2 = gi.f_n2(s);
        acc.ee += 0.5 * h * (pe + ce);
        acc.n1 += 0.5 * h * (p1 + c1);
        acc.n2 += 0.5 * h * (p2 + c2);
        pe = ce;
        p1 = c1;
        p2 = c2;
    }
    if (acc.ee == 0.0) return {0.0, 0.0};
    return {acc.n1 / acc.ee, acc.n2 / acc.ee};
}

// Crude large-amplitude estimate tau_LIN ~ max(|a|,|b|) / (lambda |a|^nu |b|^nu).
inline double crude_scrambling_estimate(const OscillatorConfig& cfg) {
    const double a = std::abs(cfg.alpha());
    const double b = std::abs(cfg.beta());
    const double denom = cfg.lambda * std::pow(a, cfg.nu) * std::pow(b, cfg.nu);
    if (denom == 0.0) return std::numeric_limits<double>::infinity();
    return std::max(a, b) / denom;
}

// Numerical solve of 1 = t E_int(t) min[N_1(t), N_2(t)]. The left side equals
// lambda min(int sqrt(M2 Var1), int sqrt(M1 Var2)), a nondecreasing function
// of t, so the root is bracketed by marching and polished by bisection.
inline double scrambling_time_lin(const OscillatorConfig& cfg, double quad_step = 1e-3) {
    cfg.validate();
    if (quad_step <= 0.0)
        throw validation_error("scrambling_time_lin: quad_step must be positive");
    if (cfg.lambda <= 0.0 || (cfg.zeta1 == 0.0 && cfg.zeta2 == 0.0))
        throw validation_error(
            "scrambling_time_lin: no finite root; needs lambda > 0 and excited initial data");

    const detail::ScrambleIntegrand gi{cfg};
    const double t_cap = 1e6;

    double t = 0.0;
    double acc1 = 0.0, acc2 = 0.0;
    double p1 = gi.f_n1(0.0), p2 = gi.f_n2(0.0);
    auto f_of = [&](double a1, double a2) { return cfg.lambda * std::min(a1, a2); };

    // March with the fixed quadrature step (coarsening by decade past t=1e3
    // to keep far brackets affordable) until f crosses 1.
    while (t < t_cap) {
        const double h = quad_step * std::max(1.0, t / 1e3);
        const double s = t + h;
        const double c1 = gi.f_n1(s), c2 = gi.f_n2(s);
        const double acc1_next = acc1 + 0.5 * h * (p1 + c1);
        const double acc2_next = acc2 + 0.5 * h * (p2 + c2);
        if (f_of(acc1_next, acc2_next) >= 1.0) {
            // Bisect inside [t, s] on the continuous extension of the
            // cumulative integrals.
            double lo = t, hi = s;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double cm1 = gi.f_n1(mid), cm2 = gi.f_n2(mid);
                const double fm = f_of(acc1 + 0.5 * (mid - t) * (p1 + cm1),
                                       acc2 + 0.5 * (mid - t) * (p2 + cm2));
                if (std::abs(fm - 1.0) < 1e-9 || (hi - lo) < 1e-9 * std::max(1.0, mid)) return mid;
                (fm < 1.0 ? lo : hi) = mid;
            }
            return 0.5 * (lo + hi);
        }
        acc1 = acc1_next;
        acc2 = acc2_next;
        p1 = c1;
        p2 = c2;
        t = s;
    }
    throw numeric_error("scrambling_time_lin: no sign change in [" + std::to_string(quad_step) +
                        ", 1e6]; f at cap = " + std::to_string(f_of(acc1, acc2)));
}

// Evaluate f(t) = t E_int(t) min N_12(t), used by residual checks.
inline double scrambling_residual_f(const OscillatorConfig& cfg, double t, double quad_step) {
    const double e = interaction_energy_avg(cfg, t, quad_step);
    const auto [n1, n2] = coherence_measures(cfg, t, quad_step);
    return t * e * std::min(n1, n2);
}

// t_VN = ln d / E_int(t_VN), i.e. lambda int_0^t sqrt(M1 M2) = ln d.
inline double scrambling_time_vn(const OscillatorConfig& cfg, int d, double quad_step = 1e-3) {
    cfg.validate();
    if (d < 1) throw validation_error("scrambling_time_vn: d must be >= 1");
    if (quad_step <= 0.0)
        throw validation_error("scrambling_time_vn: quad_step must be positive");
    const double target = std::log(double(d));
    if (target == 0.0) return 0.0;
    if (cfg.lambda <= 0.0)
        throw validation_error("scrambling_time_vn: no finite root at lambda = 0");

    const detail::ScrambleIntegrand gi{cfg};
    const double t_cap = 1e6;
    double t = 0.0, acc = 0.0, prev = gi.f_ee(0.0);
    while (t < t_cap) {
        const double h = quad_step * std::max(1.0, t / 1e3);
        const double s = t + h;
        const double cur = gi.f_ee(s);
        const double acc_next = acc + 0.5 * h * (prev + cur);
        if (cfg.lambda * acc_next >= target) {
            double lo = t, hi = s;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = cfg.lambda * (acc + 0.5 * (mid - t) * (prev + gi.f_ee(mid)));
                if (std::abs(fm - target) < 1e-9 * std::max(1.0, target) ||
                    (hi - lo) < 1e-9 * std::max(1.0, mid))
                    return mid;
                (fm < target ? lo : hi) = mid;
            }
            return 0.5 * (lo + hi);
        }
        acc = acc_next;
        prev = cur;
        t = s;
    }
    throw numeric_error("scrambling_time_vn: no root below t = 1e6");
}

// ---------------------------------------------------------------------------
// Parametric resonance (nu = 2 only; the Mathieu reduction is specific to
// the quadratic coupling).
// ---------------------------------------------------------------------------

struct ResonancePrediction {
    bool resonant = false;
    double tau_res = std::numeric_limits<double>::infinity();
    double ratio = 0.0;  // tau_LIN / tau_RES ~ sqrt(zeta1) / zeta2
};

inline ResonancePrediction resonance_predictor(const OscillatorConfig& cfg) {
    cfg.validate();
    if (cfg.nu != 2)
        throw validation_error("resonance_predictor: Mathieu reduction only derived for nu = 2");
    ResonancePrediction pred;
    const double a2 = std::norm(cfg.alpha());
    pred.resonant = 4.0 * std::abs(cfg.sigma) < a2 * cfg.lambda;
    pred.tau_res = (a2 * cfg.lambda > 0.0) ? 1.0 / (a2 * cfg.lambda)
                                           : std::numeric_limits<double>::infinity();
    pred.ratio = cfg.zeta2 > 0.0 ? std::sqrt(cfg.zeta1) / cfg.zeta2
                                 : std::numeric_limits<double>::infinity();
    return pred;
}

struct MathieuParameters {
    double omega = 0.0;      // reduced drive frequency 2(1+sigma)/(1-sigma)
    double h = 0.0;          // drive strength 2|alpha|^2 lambda / (1-sigma)
    bool h_small = true;     // false once h >= 0.5 (h << 1 analysis invalid)
};

inline MathieuParameters mathieu_parameters(const OscillatorConfig& cfg) {
    cfg.validate();
    MathieuParameters mp;
    mp.omega = 2.0 * (1.0 + cfg.sigma) / (1.0 - cfg.sigma);
    mp.h = 2.0 * std::norm(cfg.alpha()) * cfg.lambda / (1.0 - cfg.sigma);
    mp.h_small = mp.h < 0.5;
    return mp;
}

// ---------------------------------------------------------------------------
// Aggregate report for the CLI.
// ---------------------------------------------------------------------------

struct ScrambleReport {
    std::optional<double> t_lin;
    std::string t_lin_error;
    std::optional<double> t_vn;  // only when a finite d was requested
    double crude_estimate = 0.0;
    std::vector<double> times;
    std::vector<double> e_int_series;
    std::vector<double> n1_series;
    std::vector<double> n2_series;
    std::optional<ResonancePrediction> resonance;  // nu = 2 only
    std::optional<MathieuParameters> mathieu;
};

inline ScrambleReport build_scramble_report(const OscillatorConfig& cfg,
                                            const std::vector<double>& series_times,
                                            double quad_step = 1e-3,
                                            std::optional<int> vn_dimension = std::nullopt) {
    cfg.validate();
    ScrambleReport rep;
    rep.crude_estimate = crude_scrambling_estimate(cfg);
    try {
        rep.t_lin = scrambling_time_lin(cfg, quad_step);
    } catch (const std::exception& e) {
        rep.t_lin_error = e.what();
    }
    if (vn_dimension) rep.t_vn = scrambling_time_vn(cfg, *vn_dimension, quad_step);
    rep.times = series_times;
    for (const double t : series_times) {
        rep.e_int_series.push_back(interaction_energy_avg(cfg, t, quad_step));
        if (t > 0.0) {
            const auto [n1, n2] = coherence_measures(cfg, t, quad_step);
            rep.n1_series.push_back(n1);
            rep.n2_series.push_back(n2);
        } else {
            rep.n1_series.push_back(0.0);
            rep.n2_series.push_back(0.0);
        }
    }
    if (cfg.nu == 2) {
        rep.resonance = resonance_predictor(cfg);
        rep.mathieu = mathieu_parameters(cfg);
    }
    return rep;
}

}  // namespace oscsim
