// Copyright 2026 The oscsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "oscsim/evolve.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace oscsim;

namespace {

OscillatorConfig fig1_config(double lambda) {
    OscillatorConfig cfg;
    cfg.lambda = lambda;
    cfg.sigma = 0.0;
    cfg.nu = 2;
    cfg.zeta1 = 12.0;
    cfg.zeta2 = 2.0;
    cfg.n_max = 35;
    return cfg;
}

ComplexMatrix random_complex(Eigen::Index r, Eigen::Index c, unsigned seed) {
    std::mt19937 gen(seed);
    std::normal_distribution<double> dist;
    ComplexMatrix m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < c; ++j) m(i, j) = Complex(dist(gen), dist(gen));
    return m;
}

}  // namespace

TEST_CASE("vectorization convention reproduces the matrix equation of motion", "[evolve]") {
    SystemSpec spec;
    const Eigen::Index d1 = 3, d2 = 4;
    RealVector e1 = RealVector::Random(d1);
    RealVector e2 = RealVector::Random(d2);
    spec.h1 = e1.cast<Complex>().asDiagonal();
    spec.h2 = e2.cast<Complex>().asDiagonal();
    ComplexMatrix v1 = random_complex(d1, d1, 7);
    ComplexMatrix v2 = random_complex(d2, d2, 8);
    spec.v1 = 0.5 * (v1 + v1.adjoint());
    spec.v2 = 0.5 * (v2 + v2.adjoint());
    spec.lambda = 0.37;

    const ComplexMatrix h = assemble_full_hamiltonian(spec);
    CHECK(is_hermitian(h, 1e-12));

    const ComplexMatrix z = random_complex(d1, d2, 9);
    const ComplexMatrix rhs =
        spec.h1 * z + z * spec.h2 + spec.lambda * spec.v1 * z * spec.v2.transpose();

    ComplexVector vec(d1 * d2);
    for (Eigen::Index n = 0; n < d1; ++n)
        for (Eigen::Index mu = 0; mu < d2; ++mu) vec(n * d2 + mu) = z(n, mu);
    const ComplexVector hvec = h * vec;
    for (Eigen::Index n = 0; n < d1; ++n)
        for (Eigen::Index mu = 0; mu < d2; ++mu)
            CHECK(std::abs(hvec(n * d2 + mu) - rhs(n, mu)) < 1e-12);
}

TEST_CASE("spectral evolution: free oscillators", "[evolve]") {
    OscillatorConfig cfg = fig1_config(0.0);
    cfg.sigma = 0.1;
    cfg.n_max = 30;
    const auto grid = uniform_grid(12.0, 0.05);
    const auto traj = evolve_qq_spectral(oscillator_system(cfg), qq_initial_state(cfg), grid, &cfg);

    const double amp = std::sqrt(2.0 * cfg.zeta2 / (1.0 - cfg.sigma));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double expected = amp * std::cos((1.0 - cfg.sigma) * grid[i] - cfg.phi2);
        CHECK(traj.records[i].q2 == Catch::Approx(expected).margin(1e-6));
        CHECK(std::abs(traj.norm[i] - 1.0) < 1e-10);
    }
}

TEST_CASE("spectral evolution matches a small dense oracle", "[evolve]") {
    // d1 = d2 = 2 toy system, evolved independently by diagonalizing the
    // 4x4 Hamiltonian assembled by hand.
    SystemSpec spec;
    spec.h1 = ComplexMatrix::Zero(2, 2);
    spec.h1(0, 0) = 0.3;
    spec.h1(1, 1) = 1.1;
    spec.h2 = ComplexMatrix::Zero(2, 2);
    spec.h2(0, 0) = 0.6;
    spec.h2(1, 1) = 1.9;
    ComplexMatrix v = random_complex(2, 2, 17);
    spec.v1 = 0.5 * (v + v.adjoint());
    ComplexMatrix w = random_complex(2, 2, 18);
    spec.v2 = 0.5 * (w + w.adjoint());
    spec.lambda = 0.23;

    ComplexMatrix z0 = random_complex(2, 2, 19);
    z0 /= z0.norm();

    ComplexMatrix hbig = ComplexMatrix::Zero(4, 4);
    for (int n = 0; n < 2; ++n)
        for (int m = 0; m < 2; ++m)
            for (int np = 0; np < 2; ++np)
                for (int mp = 0; mp < 2; ++mp) {
                    Complex val = spec.lambda * spec.v1(n, np) * spec.v2(m, mp);
                    if (m == mp) val += spec.h1(n, np);
                    if (n == np) val += spec.h2(m, mp);
                    hbig(n * 2 + m, np * 2 + mp) = val;
                }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hbig);
    ComplexVector vec0(4);
    for (int n = 0; n < 2; ++n)
        for (int m = 0; m < 2; ++m) vec0(n * 2 + m) = z0(n, m);

    const auto grid = uniform_grid(5.0, 0.5);
    const auto traj = evolve_qq_spectral(spec, z0, grid, nullptr, {.keep_states = true});
    for (std::size_t i = 0; i < grid.size(); ++i) {
        ComplexVector phases(4);
        for (int j = 0; j < 4; ++j)
            phases(j) = std::exp(Complex(0.0, -es.eigenvalues()(j) * grid[i]));
        const ComplexVector vec_t =
            es.eigenvectors() *
            phases.cwiseProduct(ComplexVector(es.eigenvectors().adjoint() * vec0));
        for (int n = 0; n < 2; ++n)
            for (int m = 0; m < 2; ++m)
                CHECK(std::abs(traj.states[i](n, m) - vec_t(n * 2 + m)) < 1e-10);
    }
}

TEST_CASE("direct integration: free phase evolution", "[evolve]") {
    OscillatorConfig cfg = fig1_config(0.0);
    cfg.zeta1 = 2.0;
    cfg.zeta2 = 1.0;
    cfg.n_max = 18;
    const SystemSpec spec = oscillator_system(cfg);
    const ComplexMatrix z0 = qq_initial_state(cfg);
    const auto grid = uniform_grid(3.0, 0.5);
    const auto traj = evolve_qq_direct(spec, z0, grid, 1e-3, &cfg, {.keep_states = true});
    const RealVector e1 = spec.energies1();
    const RealVector e2 = spec.energies2();
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (int n = 0; n < cfg.dim(); ++n)
            for (int m = 0; m < cfg.dim(); ++m) {
                const Complex expected =
                    z0(n, m) * std::exp(Complex(0.0, -(e1(n) + e2(m)) * grid[i]));
                CHECK(std::abs(traj.states[i](n, m) - expected) < 1e-8);
            }
}

TEST_CASE("direct integration agrees with the spectral path", "[evolve]") {
    OscillatorConfig cfg = fig1_config(0.001);
    cfg.n_max = 24;  // keep the unit test light; the acceptance suite runs n_max = 35
    const SystemSpec spec = oscillator_system(cfg);
    const ComplexMatrix z0 = qq_initial_state(cfg);
    const auto grid = uniform_grid(6.0, 0.5);
    const auto direct = evolve_qq_direct(spec, z0, grid, 1e-3, &cfg, {.keep_states = true});
    const auto spectral = evolve_qq_spectral(spec, z0, grid, &cfg, {.keep_states = true});
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double err = (direct.states[i] - spectral.states[i]).cwiseAbs().maxCoeff();
        CHECK(err < 1e-6);
    }
    CHECK(direct.relative_energy_drift() < 1e-6);
    CHECK(spectral.relative_energy_drift() < 1e-6);
}

TEST_CASE("direct integration converges at fourth order", "[evolve]") {
    OscillatorConfig cfg = fig1_config(0.01);
    cfg.n_max = 12;
    cfg.zeta1 = 4.0;
    cfg.zeta2 = 1.0;
    const SystemSpec spec = oscillator_system(cfg);
    const ComplexMatrix z0 = qq_initial_state(cfg);
    const auto grid = uniform_grid(4.0, 4.0);

    const auto ref = evolve_qq_spectral(spec, z0, grid, &cfg, {.keep_states = true});
    const auto coarse = evolve_qq_direct(spec, z0, grid, 1e-2, &cfg, {.keep_states = true});
    const auto fine = evolve_qq_direct(spec, z0, grid, 5e-3, &cfg, {.keep_states = true});

    const double err_coarse = (coarse.states.back() - ref.states.back()).norm();
    const double err_fine = (fine.states.back() - ref.states.back()).norm();
    CHECK(err_coarse / err_fine >= 8.0);
}

TEST_CASE("phase invariance of observables", "[evolve]") {
    OscillatorConfig cfg = fig1_config(0.01);
    cfg.n_max = 20;
    cfg.zeta1 = 4.0;
    const SystemSpec spec = oscillator_system(cfg);
    const ComplexMatrix z0 = qq_initial_state(cfg);
    const ComplexMatrix z0_rot = std::exp(Complex(0.0, 0.73)) * z0;
    const auto grid = uniform_grid(3.0, 0.5);
    const auto a = evolve_qq_spectral(spec, z0, grid, &cfg);
    const auto b = evolve_qq_spectral(spec, z0_rot, grid, &cfg);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(a.records[i].q1 == Catch::Approx(b.records[i].q1).margin(1e-10));
        CHECK(a.records[i].q2 == Catch::Approx(b.records[i].q2).margin(1e-10));
        CHECK(a.records[i].e_int == Catch::Approx(b.records[i].e_int).margin(1e-10));
    }
}

TEST_CASE("classical-quantum scheme", "[evolve]") {
    OscillatorConfig cfg = fig1_config(0.0);
    cfg.sigma = 0.15;
    cfg.zeta1 = 5.0;
    cfg.zeta2 = 1.0;
    cfg.n_max = 16;
    const auto grid = uniform_grid(8.0, 0.1);

    SECTION("free classical amplitude rotates, quantum column evolves freely") {
        const auto traj = evolve_cq(cfg, grid, 1e-3);
        const Complex a0 = cfg.alpha();
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const Complex expected = a0 * std::exp(Complex(0.0, -(1.0 + cfg.sigma) * grid[i]));
            CHECK(std::abs(traj.a_series[i] - expected) < 1e-8);
        }
        CHECK(traj.records.front().e1 == Catch::Approx(cfg.zeta1));
        CHECK(!traj.records.front().n_occ.has_value());
        CHECK(traj.records.front().m_occ.has_value());
    }

    SECTION("effective Hamiltonian is conserved at moderate coupling") {
        OscillatorConfig coupled = fig1_config(0.01);
        coupled.n_max = 30;
        const auto traj = evolve_cq(coupled, uniform_grid(6.0 * M_PI, 0.05), 1e-3);
        CHECK(traj.relative_energy_drift() < 1e-6);
        CHECK(traj.records.front().e1 == Catch::Approx(coupled.zeta1));
    }
}

TEST_CASE("classical-classical scheme", "[evolve]") {
    OscillatorConfig cfg = fig1_config(0.0);
    const auto grid = uniform_grid(10.0, 0.1);

    SECTION("free moduli are conserved") {
        const auto traj = evolve_cc(cfg, grid, 1e-3);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(std::abs(traj.a_series[i]) ==
                  Catch::Approx(std::abs(cfg.alpha())).margin(1e-10));
            CHECK(std::abs(traj.b_series[i]) ==
                  Catch::Approx(std::abs(cfg.beta())).margin(1e-10));
        }
    }

    SECTION("total energy conserved at moderate coupling") {
        OscillatorConfig coupled = fig1_config(0.01);
        const auto traj = evolve_cc(coupled, uniform_grid(6.0 * M_PI, 0.05), 1e-3);
        CHECK(traj.relative_energy_drift() < 1e-8);
    }
}

TEST_CASE("classical background scheme", "[evolve]") {
    OscillatorConfig cfg = fig1_config(0.01);
    cfg.n_max = 30;
    const auto grid = uniform_grid(10.0, 0.1);

    SECTION("classical part is the analytic free solution") {
        const auto traj = evolve_cb(cfg, grid, 1e-3);
        const Complex a0 = cfg.alpha();
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const Complex expected = a0 * std::exp(Complex(0.0, -(1.0 + cfg.sigma) * grid[i]));
            CHECK(std::abs(traj.a_series[i] - expected) < 1e-14);
        }
        CHECK_FALSE(traj.energy_conserved_scheme);
    }

    SECTION("lambda = 0 reduces CB to CQ") {
        OscillatorConfig free_cfg = cfg;
        free_cfg.lambda = 0.0;
        const auto cb = evolve_cb(free_cfg, grid, 1e-3, {.keep_states = true});
        const auto cq = evolve_cq(free_cfg, grid, 1e-3, {.keep_states = true});
        for (std::size_t i = 0; i < grid.size(); ++i)
            CHECK((cb.zstates[i] - cq.zstates[i]).norm() < 1e-9);
    }

    SECTION("zeroed backreaction makes CQ bitwise identical to CB") {
        const auto cb = evolve_cb(cfg, grid, 1e-3, {.keep_states = true});
        EvolveOptions opts;
        opts.keep_states = true;
        opts.backreaction = false;
        const auto cq = evolve_cq(cfg, grid, 1e-3, opts);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            REQUIRE(cb.zstates[i].size() == cq.zstates[i].size());
            for (Eigen::Index k = 0; k < cb.zstates[i].size(); ++k) {
                CHECK(cb.zstates[i](k).real() == cq.zstates[i](k).real());
                CHECK(cb.zstates[i](k).imag() == cq.zstates[i](k).imag());
            }
        }
    }

    SECTION("subsystem-2-plus-interaction energy drifts") {
        const auto traj = evolve_cb(cfg, uniform_grid(6.0 * M_PI, 0.1), 1e-3);
        double worst = 0.0;
        const double first = traj.records.front().e2 + traj.records.front().e_int;
        for (const auto& r : traj.records) worst = std::max(worst, std::abs(r.e2 + r.e_int - first));
        CHECK(worst > 1e-6);  // non-conservation is expected and reported
    }
}

TEST_CASE("truncation monitor", "[evolve]") {
    OscillatorConfig cfg = fig1_config(0.01);

    SECTION("ground state leaves the full margin") {
        OscillatorConfig gs = cfg;
        gs.lambda = 0.0;  // uncoupled vacuum stays exactly stationary
        gs.zeta1 = gs.zeta2 = 0.0;
        gs.n_max = 10;
        const auto traj =
            evolve_qq_spectral(oscillator_system(gs), qq_initial_state(gs), uniform_grid(2.0, 0.5), &gs);
        const auto rep = truncation_monitor(traj, gs.n_max);
        CHECK(rep.passed);
        CHECK(rep.margin == Catch::Approx(double(gs.n_max)).margin(1e-6));
    }

    SECTION("fig-3 style configuration passes") {
        const auto traj = evolve_qq_spectral(oscillator_system(cfg), qq_initial_state(cfg),
                                             uniform_grid(6.0, 0.2), &cfg);
        CHECK(truncation_monitor(traj, cfg.n_max).passed);
    }

    SECTION("overfull initial data fails at tau = 0") {
        // zeta1 = 60, n_max = 20: <n> + sqrt(Var n) = 60 + sqrt(60) > 20.
        Trajectory traj;
        traj.tau = {0.0};
        ObservableRecord r;
        r.n_occ = 60.0;
        r.var_n = 60.0;
        traj.records.push_back(r);
        const auto rep = truncation_monitor(traj, 20);
        CHECK_FALSE(rep.passed);
        CHECK(rep.worst_tau == 0.0);
    }
}

TEST_CASE("evolution input validation", "[evolve]") {
    OscillatorConfig cfg = fig1_config(0.01);
    const SystemSpec spec = oscillator_system(cfg);
    const ComplexMatrix z0 = qq_initial_state(cfg);
    CHECK_THROWS_AS(evolve_qq_direct(spec, z0, {0.0, 1.0}, -1.0), validation_error);
    CHECK_THROWS_AS(evolve_qq_direct(spec, z0, {1.0, 0.5}), validation_error);
    CHECK_THROWS_AS(evolve_qq_direct(spec, ComplexMatrix::Zero(2, 2), {0.0, 1.0}),
                    validation_error);
    CHECK_THROWS_AS(evolve_qq_spectral(spec, ComplexMatrix::Zero(2, 2), {0.0, 1.0}),
                    validation_error);
}
