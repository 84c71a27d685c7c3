#pragma once

#include "blowuplab/radial.hpp"

namespace blowuplab {

/// Scalar moments of the ground state used throughout the profile and
/// modulation formulas.
struct Moments {
    double mass = 0.0;       // ∫ Q^2
    double variance = 0.0;   // ∫ |y|^2 Q^2
    double quartic = 0.0;    // ∫ Q^4
    double y2_quartic = 0.0; // ∫ |y|^2 Q^4  (quartic_tensor = diag of half this)
    double quartic_tensor[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
    double rho_q = 0.0;      // (rho, Q)
    double y2q_rho = 0.0;    // (|y|^2 Q, rho)
};

/// Townes ground state of -ΔQ + Q = Q^3 in 2D: bisection shooting for the
/// central amplitude, then Newton on the 4th-order finite-difference system
/// until the discrete residual is below tol.
/// Returns a positive, strictly decreasing profile with Q'(0) = 0.
RadialProfile solve_ground_state(const RadialGrid& grid, double tol);

/// Residual field of the discrete equation -Q'' - Q'/r + Q - Q^3 evaluated
/// with the same 4th-order stencils used by the solver.
RadialProfile ground_state_residual(const RadialProfile& q);

Moments compute_moments(const RadialProfile& q, const RadialProfile& rho);

}  // namespace blowuplab
