#pragma once

#include <functional>
#include <vector>

#include "blowuplab/grids.hpp"

namespace blowuplab {

/// Real function of the radius sampled on a RadialGrid, with its even/odd
/// extension value at r = 0 stored separately.
struct RadialProfile {
    RadialGrid grid;
    std::vector<double> values;  // values[j] = f(grid.node(j))
    double value_at_zero = 0.0;

    RadialProfile() = default;
    explicit RadialProfile(const RadialGrid& g) : grid(g), values(g.n, 0.0) {}

    static RadialProfile sample(const RadialGrid& g, const std::function<double(double)>& f) {
        RadialProfile p(g);
        for (std::size_t j = 0; j < g.n; ++j) p.values[j] = f(g.node(j));
        p.value_at_zero = f(0.0);
        return p;
    }

    /// Pointwise map onto a new profile on the same grid.
    RadialProfile map(const std::function<double(double)>& op) const {
        RadialProfile out(grid);
        for (std::size_t j = 0; j < grid.n; ++j) out.values[j] = op(values[j]);
        out.value_at_zero = op(value_at_zero);
        return out;
    }

    void check_finite(const char* what) const;
};

/// 2pi * quadrature of f(r) * r^{1+p} over [0, r_max]  (i.e. the 2D integral
/// of f(|y|) |y|^p).  Composite Simpson; a trailing Simpson-3/8 block absorbs
/// an odd panel count.  Throws on non-finite samples, reporting the first
/// offending node index.
double integrate_radial(const RadialProfile& f, int weight_power);

/// Plain composite Simpson of the node values w(r)*f(r) for an arbitrary
/// weight function; shares the integrate_radial panel logic.
double integrate_radial_weighted(const RadialProfile& f,
                                 const std::function<double(double)>& weight);

class RadialInterpolant;

/// Node-wise 4th-order derivative of a profile (parity ghosts at r = 0,
/// exponential-tail ghosts beyond r_max).  The result has the opposite parity.
RadialProfile derivative_profile(const RadialProfile& p, bool even);

/// Quintic-Hermite interpolant of a radial profile with parity-aware handling
/// at r = 0 and an exponential-tail extension beyond r_max.  Node slopes and
/// curvatures come from 4th-order central differences.  The interpolant is C2,
/// which keeps spectral Laplacians of resampled fields free of node-kink noise.
class RadialInterpolant {
  public:
    enum class Parity { Even, Odd };

    RadialInterpolant() = default;
    RadialInterpolant(const RadialProfile& p, Parity parity);

    double operator()(double r) const;
    double derivative(double r) const;

  private:
    double h_ = 0.0, r_max_ = 0.0;
    double tail_coeff_ = 0.0;  // f ~ tail_coeff * exp(-r) beyond r_max
    std::vector<double> val_;  // index 0 is r=0, then nodes 1..n
    std::vector<double> slope_;
    std::vector<double> curv_;
};

}  // namespace blowuplab
