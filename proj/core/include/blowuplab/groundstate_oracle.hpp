#pragma once

#include <cstddef>
#include <map>
#include <string>

namespace blowuplab {

/// Reference values for the ground state produced by an integration route
/// that shares no code with solve_ground_state: plain bisection shooting on a
/// fine uniform march plus Richardson extrapolation in the step size, and a
/// second-order tridiagonal boundary-value solve for rho.
struct OracleValues {
    double q0 = 0.0;         // central amplitude Q(0)
    double mass = 0.0;       // ∫ Q^2
    double variance = 0.0;   // ∫ |y|^2 Q^2
    double quartic = 0.0;    // ∫ Q^4
    double y2_quartic = 0.0; // ∫ |y|^2 Q^4
    double rho_q = 0.0;      // (rho, Q)
    double y2q_rho = 0.0;    // (|y|^2 Q, rho)
};

/// Run the oracle at march resolution n (default 2^16 over [0, 25]) and n/2,
/// Richardson-extrapolating every reported value at 4th order (2nd order for
/// the rho pairings, which come from the tridiagonal solve).
OracleValues run_ground_state_oracle(std::size_t n = 1u << 16, double r_max = 25.0);

std::map<std::string, double> oracle_as_map(const OracleValues& v);

}  // namespace blowuplab
