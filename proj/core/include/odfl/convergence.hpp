// SPDX-FileCopyrightText: © 2026 The odfl Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace odfl {

/// Constants of the D-PSGD convergence bound. Defaults are the fixed values used
/// by the experiments and recorded in every output.
struct ConvergenceConstants {
    double smoothness = 1.0;     ///< l
    double noise = 1.0;          ///< sigma-hat
    double heterogeneity = 1.0;  ///< zeta-hat
    double m1 = 0.0;
    double m2 = 0.0;
    double epsilon = 0.1;        ///< target stationarity
    double initial_gap = 1.0;    ///< F(x-bar^(1)) - F_inf
    int agents = 2;

    /// Throws PreconditionError on negative constants, epsilon <= 0 or agents < 2.
    void validate() const;
};

/// Designs with rho this close to 1 are disconnected up to rounding.
inline constexpr double kRhoTolerance = 1e-9;

/// K(rho), with the big-O constant fixed to 1.
/// Returns +inf for rho >= 1 - kRhoTolerance.
double iterations_to_converge(double rho, const ConvergenceConstants& c);

struct TotalTime {
    double tau = 0.0;
    double iterations = 0.0;
    double product = 0.0;
    bool convergent = false;  ///< false when rho >= 1
};

/// Prediction tau * K(rho).
TotalTime total_time(double tau, double rho, const ConvergenceConstants& c);

/// (kappa T / C_min) * K((m - 3)/m + 16/(T + 2)). Requires m > 3 and
/// T > 16m/3 - 2; violations throw PreconditionError.
double fmmd_guarantee(int agents, int iterations, double min_capacity, double kappa, const ConvergenceConstants& c);

}  // namespace odfl
