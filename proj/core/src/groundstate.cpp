#include "blowuplab/groundstate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "blowuplab/banded.hpp"

namespace blowuplab {

namespace {

// Series start near r = 0:  u = a + c2 r^2 + c4 r^4 + c6 r^6.
struct SeriesStart {
    double c2, c4, c6;
    explicit SeriesStart(double a) {
        c2 = (a - a * a * a) / 4.0;
        c4 = c2 * (1.0 - 3.0 * a * a) / 16.0;
        c6 = (c4 * (1.0 - 3.0 * a * a) - 3.0 * a * c2 * c2) / 36.0;
    }
    double u(double a, double r) const {
        const double r2 = r * r;
        return a + r2 * (c2 + r2 * (c4 + r2 * c6));
    }
    double v(double r) const {
        const double r2 = r * r;
        return r * (2.0 * c2 + r2 * (4.0 * c4 + r2 * 6.0 * c6));
    }
};

enum class Shot { Cross, Grow };

// RK4 march of u' = v, v' = -v/r + u - u^3 on steps of size h from r = h.
// Fills traj (u at r = k*h for k = 1..steps) when non-null.
Shot shoot(double a, double h, std::size_t steps, std::vector<double>* traj) {
    SeriesStart s(a);
    double r = h, u = s.u(a, h), v = s.v(h);
    if (traj) (*traj)[0] = u;
    auto fu = [](double vv) { return vv; };
    auto fv = [](double rr, double uu, double vv) { return -vv / rr + uu - uu * uu * uu; };
    bool decreased = false;
    for (std::size_t k = 1; k < steps; ++k) {
        const double k1u = fu(v), k1v = fv(r, u, v);
        const double k2u = fu(v + 0.5 * h * k1v), k2v = fv(r + 0.5 * h, u + 0.5 * h * k1u, v + 0.5 * h * k1v);
        const double k3u = fu(v + 0.5 * h * k2v), k3v = fv(r + 0.5 * h, u + 0.5 * h * k2u, v + 0.5 * h * k2v);
        const double k4u = fu(v + h * k3v), k4v = fv(r + h, u + h * k3u, v + h * k3v);
        u += h / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
        v += h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
        r += h;
        if (traj) (*traj)[k] = u;
        if (u < 0.0) return Shot::Cross;
        if (u < 0.5 * a) decreased = true;
        if (decreased && v > 0.0) return Shot::Grow;
        if (u > 2.0 * a) return Shot::Grow;
    }
    return (u > 0.0) ? Shot::Grow : Shot::Cross;
}

// 4th-order FD operator N[u]_k = -u'' - u'/r + u - u^3 on radii k*h,
// k = 0..n-1 (unknowns), u(n*h) = 0 Dirichlet, even extension at r = 0.
struct FdSystem {
    std::size_t n;
    double h;

    double ghost(const std::vector<double>& u, long k) const {
        if (k >= 0 && k < static_cast<long>(n)) return u[k];
        if (k < 0) return u[-k];
        return 0.0;
    }

    std::vector<double> residual(const std::vector<double>& u) const {
        std::vector<double> F(n);
        const double ih2 = 1.0 / (12.0 * h * h), ih1 = 1.0 / (12.0 * h);
        // r = 0: Laplacian limit is 2 u''(0)
        {
            const double upp0 = (-2.0 * ghost(u, 2) + 32.0 * ghost(u, 1) - 30.0 * u[0]) * ih2;
            F[0] = -2.0 * upp0 + u[0] - u[0] * u[0] * u[0];
        }
        for (std::size_t k = 1; k < n; ++k) {
            const long kk = static_cast<long>(k);
            const double um2 = ghost(u, kk - 2), um1 = ghost(u, kk - 1);
            const double up1 = ghost(u, kk + 1), up2 = ghost(u, kk + 2);
            const double d2 = (-um2 + 16.0 * um1 - 30.0 * u[k] + 16.0 * up1 - up2) * ih2;
            const double d1 = (um2 - 8.0 * um1 + 8.0 * up1 - up2) * ih1;
            const double r = static_cast<double>(k) * h;
            F[k] = -d2 - d1 / r + u[k] - u[k] * u[k] * u[k];
        }
        return F;
    }

    BandedMatrix jacobian(const std::vector<double>& u) const {
        BandedMatrix J(n, 2, 2);
        const double ih2 = 1.0 / (12.0 * h * h), ih1 = 1.0 / (12.0 * h);
        auto put = [&](std::size_t row, long col, double v) {
            if (col < 0) col = -col;  // even extension folds ghosts back
            if (col >= static_cast<long>(n)) return;
            J.add(row, static_cast<std::size_t>(col), v);
        };
        put(0, 2, 2.0 * 2.0 * ih2);
        put(0, 1, -2.0 * 32.0 * ih2);
        put(0, 0, 2.0 * 30.0 * ih2 + 1.0 - 3.0 * u[0] * u[0]);
        for (std::size_t k = 1; k < n; ++k) {
            const long kk = static_cast<long>(k);
            const double r = static_cast<double>(k) * h;
            put(k, kk - 2, ih2 - ih1 / r);
            put(k, kk - 1, -16.0 * ih2 + 8.0 * ih1 / r);
            put(k, kk, 30.0 * ih2 + 1.0 - 3.0 * u[k] * u[k]);
            put(k, kk + 1, -16.0 * ih2 - 8.0 * ih1 / r);
            put(k, kk + 2, ih2 + ih1 / r);
        }
        return J;
    }
};

}  // namespace

RadialProfile solve_ground_state(const RadialGrid& grid, double tol) {
    grid.validate();
    if (!(tol > 1e-14 && tol < 1e-4))
        throw std::invalid_argument("solve_ground_state: tol must lie in (1e-14, 1e-4)");
    const std::size_t n = grid.n;
    const double h = grid.spacing();

    // Bisection on the central amplitude.
    double lo = 2.0, hi = 2.5;
    if (shoot(lo, h, n, nullptr) != Shot::Grow) lo = 1.2;
    if (shoot(hi, h, n, nullptr) != Shot::Cross) hi = 4.0;
    if (shoot(lo, h, n, nullptr) != Shot::Grow || shoot(hi, h, n, nullptr) != Shot::Cross)
        throw std::runtime_error("solve_ground_state: shooting bracket [" + std::to_string(lo) +
                                 ", " + std::to_string(hi) + "] does not enclose a decaying solution");
    for (int iter = 0; iter < 64 && (hi - lo) > 1e-14 * lo; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (shoot(mid, h, n, nullptr) == Shot::Grow ? lo : hi) = mid;
    }
    const double a_star = 0.5 * (lo + hi);

    // Initial Newton guess: the shot trajectory with its diverging tail
    // replaced by an exponential continuation from the turning point.
    std::vector<double> traj(n, 0.0);
    shoot(a_star, h, n, &traj);
    std::size_t kturn = n - 1;
    for (std::size_t k = 1; k + 1 < n; ++k) {
        if (traj[k] <= 0.0 || traj[k] > traj[k - 1]) {
            kturn = k - 1;
            break;
        }
    }
    std::vector<double> u(n, 0.0);
    u[0] = a_star;
    for (std::size_t k = 1; k < n; ++k) {
        const std::size_t t = k - 1;  // traj[t] is u at r=(t+1)h
        if (t <= kturn)
            u[k] = traj[t];
        else
            u[k] = traj[kturn] * std::exp(-(static_cast<double>(t - kturn)) * h);
    }

    FdSystem sys{n, h};
    double res = 1e300;
    for (int iter = 0; iter < 50; ++iter) {
        std::vector<double> F = sys.residual(u);
        double r = 0.0;
        for (double f : F) r = std::max(r, std::abs(f));
        const bool stalled = r >= 0.95 * res;  // roundoff floor of the h^-2 stencils
        res = std::min(res, r);
        if (r < 0.1 * tol || stalled) break;
        BandedMatrix J = sys.jacobian(u);
        for (auto& f : F) f = -f;
        std::vector<double> du = BandedMatrix::solve_once(std::move(J), F);
        for (std::size_t k = 0; k < n; ++k) u[k] += du[k];
    }
    if (res >= tol) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3e", res);
        throw std::runtime_error(std::string("solve_ground_state: Newton residual ") + buf +
                                 " did not reach tol");
    }

    RadialProfile q(grid);
    q.value_at_zero = u[0];
    for (std::size_t j = 0; j + 1 < n; ++j) q.values[j] = u[j + 1];
    q.values[n - 1] = 0.0;  // Dirichlet truncation at r_max

    // Exponential-tail clamp below 1e-12 to keep moment integrands clean.
    std::size_t last = n - 1;
    for (std::size_t j = 0; j < n; ++j)
        if (q.values[j] < 1e-12) {
            last = j;
            break;
        }
    if (last > 0 && last < n - 1) {
        const double c = q.values[last - 1] * std::exp(grid.node(last - 1));
        for (std::size_t j = last; j < n; ++j) q.values[j] = c * std::exp(-grid.node(j));
    }

    for (std::size_t j = 0; j < n; ++j)
        if (!(q.values[j] > 0.0))
            throw std::runtime_error("solve_ground_state: positivity lost at node " + std::to_string(j));
    return q;
}

RadialProfile ground_state_residual(const RadialProfile& q) {
    const std::size_t n = q.grid.n;
    FdSystem sys{n, q.grid.spacing()};
    std::vector<double> u(n);
    u[0] = q.value_at_zero;
    for (std::size_t j = 0; j + 1 < n; ++j) u[j + 1] = q.values[j];
    std::vector<double> F = sys.residual(u);
    RadialProfile out(q.grid);
    out.value_at_zero = F[0];
    for (std::size_t j = 0; j + 1 < n; ++j) out.values[j] = F[j + 1];
    out.values[n - 1] = 0.0;
    return out;
}

Moments compute_moments(const RadialProfile& q, const RadialProfile& rho) {
    if (!(q.grid == rho.grid)) throw std::invalid_argument("compute_moments: grid mismatch");
    auto q2 = q.map([](double x) { return x * x; });
    auto q4 = q.map([](double x) { return x * x * x * x; });
    RadialProfile qrho(q.grid);
    for (std::size_t j = 0; j < q.grid.n; ++j) qrho.values[j] = q.values[j] * rho.values[j];
    qrho.value_at_zero = q.value_at_zero * rho.value_at_zero;

    Moments m;
    m.mass = integrate_radial(q2, 0);
    m.variance = integrate_radial(q2, 2);
    m.quartic = integrate_radial(q4, 0);
    m.y2_quartic = integrate_radial(q4, 2);
    m.quartic_tensor[0][0] = 0.5 * m.y2_quartic;
    m.quartic_tensor[1][1] = 0.5 * m.y2_quartic;
    m.rho_q = integrate_radial(qrho, 0);
    m.y2q_rho = integrate_radial(qrho, 2);
    if (!(m.mass > 0.0)) throw std::runtime_error("compute_moments: non-positive mass, Q corrupted");
    return m;
}

}  // namespace blowuplab
