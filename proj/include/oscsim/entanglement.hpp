// Copyright 2026 The oscsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Purity, linear and von Neumann entropies from the joint coefficient matrix.
// All measures come from the singular values of Z, which is numerically
// better conditioned than diagonalizing the reduced density matrices.

#pragma once

#include "oscsim/matrix.hpp"

#include <cmath>
#include <vector>

namespace oscsim {

// Squared singular values below this are treated as exactly zero in the
// entropy sums (0 ln 0 := 0).
inline constexpr double kEntropyClamp = 1e-14;

struct EntropyRecord {
    double purity = 1.0;     // gamma = ||Z Z^dagger||^2
    double s_lin = 0.0;      // 1 - gamma
    double s_vn = 0.0;       // -sum chi^2 ln chi^2
    RealVector chi;          // singular values, descending
};

// rho1 = Z Z^dagger, rho2 = Z^T Z^*.
inline std::pair<ComplexMatrix, ComplexMatrix> reduced_density(const ComplexMatrix& z) {
    return {z * z.adjoint(), z.transpose() * z.conjugate()};
}

inline EntropyRecord entropies(const ComplexMatrix& z) {
    EntropyRecord rec;
    rec.chi = singular_values(z);
    double gamma = 0.0;
    double svn = 0.0;
    for (Eigen::Index i = 0; i < rec.chi.size(); ++i) {
        const double c2 = rec.chi(i) * rec.chi(i);
        gamma += c2 * c2;
        if (c2 > kEntropyClamp) svn -= c2 * std::log(c2);
    }
    rec.purity = gamma;
    rec.s_lin = 1.0 - gamma;
    rec.s_vn = svn;
    return rec;
}

// Arithmetic mean of a sampled series over tau > burn_in.
inline double entropy_time_average(const std::vector<double>& tau,
                                   const std::vector<double>& s_vn, double burn_in) {
    if (tau.size() != s_vn.size() || tau.empty())
        throw validation_error("entropy_time_average: mismatched or empty series");
    if (burn_in >= tau.back())
        throw validation_error("entropy_time_average: burn_in exceeds final time");
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < tau.size(); ++i) {
        if (tau[i] > burn_in) {
            sum += s_vn[i];
            ++count;
        }
    }
    if (count == 0) throw validation_error("entropy_time_average: no samples after burn_in");
    return sum / double(count);
}

}  // namespace oscsim
