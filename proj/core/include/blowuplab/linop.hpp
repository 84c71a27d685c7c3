#pragma once

#include <array>
#include <stdexcept>

#include "blowuplab/field.hpp"
#include "blowuplab/groundstate.hpp"
#include "blowuplab/radial.hpp"

namespace blowuplab {

enum class LKind { Plus, Minus };

/// Bookkeeping for kernel-aware solves.
struct FredholmReport {
    double compatibility_defect = 0.0;  // size of the RHS projection onto the kernel
    int iterations = 0;
    double residual = 0.0;
};

struct IncompatibleRhs : std::runtime_error {
    double defect;
    explicit IncompatibleRhs(double d)
        : std::runtime_error("incompatible RHS: kernel projection " + std::to_string(d)), defect(d) {}
};

/// L+ = -Δ + 1 - 3Q^2,  L- = -Δ + 1 - Q^2, spectral Laplacian, Q sampled
/// radially onto f's grid.
Field2D apply_L(const RadialProfile& q, const Field2D& f, LKind which);

/// First-order-in-eps part of the nonlinearity around Q_P with the rescaled
/// coefficient:  M(eps) = -Δeps + eps - k_resc (2|Q_P|^2 eps + Q_P^2 conj eps).
Field2D apply_M(const Field2D& qp, const Field2D& k_resc, const Field2D& eps);

struct Fredholm2DResult {
    Field2D solution;
    FredholmReport report;
};

/// Solve L+ u = P_perp rhs on the grid, with u orthogonal to span{d1 Q, d2 Q}
/// (minimal-norm representative).  Preconditioned CG on the normal equations,
/// projected off the kernel every application.  Throws IncompatibleRhs when
/// the kernel component of rhs exceeds tol * ||rhs||.
Fredholm2DResult solve_Lplus(const RadialProfile& q, const Field2D& rhs, double tol);

struct RadialSolveResult {
    RadialProfile solution;
    FredholmReport report;
};

/// Radial fast path: solve (-d_rr - d_r/r + l^2/r^2 + 1 - 3Q^2) u = f for the
/// angular harmonic l in {0, 1, 2}, 4th-order banded finite differences.
/// l = 1 carries the kernel Q'; that solve runs through a bordered system
/// enforcing the r-weighted orthogonality <u, Q'> = 0 and reports the
/// compatibility defect of f against Q'.
RadialSolveResult solve_Lplus_radial(const RadialProfile& q, int harmonic, const RadialProfile& f,
                                     double tol);

/// rho with L+ rho = |y|^2 Q (radial, l = 0).
RadialProfile solve_rho(const RadialProfile& q, double tol);

struct CoercivityResult {
    double value = 0.0;  // <L+ e1, e1> + <L- e2, e2>
    std::array<double, 4> projections{};  // <e1,Q>, <e1,|y|^2 Q>, |<e1,yQ>|, <e2,Q>
};

CoercivityResult coercivity_form(const RadialProfile& q, const Field2D& eps);

/// Remove the four coercivity directions from eps (amounts removed from the
/// real part along Q, |y|^2 Q, y1 Q, y2 Q; from the imaginary part along Q).
Field2D project_out_coercivity_directions(const RadialProfile& q, const Field2D& eps);

}  // namespace blowuplab
