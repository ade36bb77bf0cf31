// SPDX-FileCopyrightText: © 2026 The odfl Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "odfl/convergence.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "odfl/errors.hpp"

namespace odfl {

void ConvergenceConstants::validate() const {
    if (smoothness < 0 || noise < 0 || heterogeneity < 0 || m1 < 0 || m2 < 0 || initial_gap < 0)
        throw PreconditionError("convergence constants must be nonnegative");
    if (!(epsilon > 0)) throw PreconditionError("epsilon must be positive");
    if (agents < 2) throw PreconditionError("convergence bound needs at least two agents");
}

double iterations_to_converge(double rho, const ConvergenceConstants& c) {
    c.validate();
    if (rho < 0) throw PreconditionError("rho must be nonnegative");
    if (rho >= 1.0 - kRhoTolerance) return std::numeric_limits<double>::infinity();

    const double gap = 1.0 - rho * rho;
    const double eps = c.epsilon;
    const double noise_term = c.noise * c.noise / (c.agents * eps * eps);
    const double mixing_term =
        (c.heterogeneity * std::sqrt(c.m1 + 1.0) + c.noise * std::sqrt(gap)) / (gap * std::pow(eps, 1.5));
    const double drift_term = std::sqrt((c.m2 + 1.0) * (c.m1 + 1.0)) / (gap * eps);
    return c.smoothness * c.initial_gap * (noise_term + mixing_term + drift_term);
}

TotalTime total_time(double tau, double rho, const ConvergenceConstants& c) {
    TotalTime out;
    out.tau = tau;
    out.iterations = iterations_to_converge(rho, c);
    out.convergent = std::isfinite(out.iterations);
    out.product = tau * out.iterations;
    return out;
}

double fmmd_guarantee(int agents, int iterations, double min_capacity, double kappa, const ConvergenceConstants& c) {
    if (agents <= 3) throw PreconditionError("the FMMD guarantee needs more than 3 agents");
    if (!(iterations > 16.0 * agents / 3.0 - 2.0))
        throw PreconditionError("the FMMD guarantee needs T > 16m/3 - 2 (m = " + std::to_string(agents) +
                                ", T = " + std::to_string(iterations) + ")");
    if (!(min_capacity > 0)) throw PreconditionError("minimum category capacity must be positive");
    const double rho_bound = static_cast<double>(agents - 3) / agents + 16.0 / (iterations + 2.0);
    return kappa * iterations / min_capacity * iterations_to_converge(rho_bound, c);
}

}  // namespace odfl
