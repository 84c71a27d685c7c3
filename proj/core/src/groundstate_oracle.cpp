#include "blowuplab/groundstate_oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "blowuplab/banded.hpp"

namespace blowuplab {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct March {
    double a_star = 0.0;
    std::vector<double> u;  // u[k] = Q(k*h), k = 0..n (tail-clamped)
    double h = 0.0;
};

// One shot; returns +1 if the trajectory crosses zero (amplitude too big),
// -1 if it turns back up while positive (too small).
int classify(double a, double h, std::size_t n, std::vector<double>* out) {
    const double c2 = (a - a * a * a) / 4.0;
    double r = h, u = a + c2 * h * h, v = 2.0 * c2 * h;
    if (out) {
        (*out)[0] = a;
        (*out)[1] = u;
    }
    bool fell = false;
    for (std::size_t k = 2; k <= n; ++k) {
        auto fv = [](double rr, double uu, double vv) { return -vv / rr + uu - uu * uu * uu; };
        const double k1u = v, k1v = fv(r, u, v);
        const double k2u = v + 0.5 * h * k1v, k2v = fv(r + 0.5 * h, u + 0.5 * h * k1u, v + 0.5 * h * k1v);
        const double k3u = v + 0.5 * h * k2v, k3v = fv(r + 0.5 * h, u + 0.5 * h * k2u, v + 0.5 * h * k2v);
        const double k4u = v + h * k3v, k4v = fv(r + h, u + h * k3u, v + h * k3v);
        u += h / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
        v += h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
        r += h;
        if (out) (*out)[k] = u;
        if (u < 0.0) return +1;
        if (u < 0.5 * a) fell = true;
        if ((fell && v > 0.0) || u > 2.0 * a) return -1;
    }
    return (u > 0.0) ? -1 : +1;
}

March run_march(std::size_t n, double r_max) {
    const double h = r_max / static_cast<double>(n);
    double lo = 1.5, hi = 3.5;
    if (classify(lo, h, n, nullptr) != -1 || classify(hi, h, n, nullptr) != +1)
        throw std::runtime_error("ground-state oracle: bracket [1.5, 3.5] failed");
    for (int it = 0; it < 80 && (hi - lo) > 1e-15 * lo; ++it) {
        const double mid = 0.5 * (lo + hi);
        (classify(mid, h, n, nullptr) == -1 ? lo : hi) = mid;
    }
    March m;
    m.a_star = 0.5 * (lo + hi);
    m.h = h;
    m.u.assign(n + 1, 0.0);
    classify(m.a_star, h, n, &m.u);
    // replace the diverging tail by the exponential continuation from the
    // last monotone node
    std::size_t kturn = n;
    for (std::size_t k = 2; k <= n; ++k)
        if (m.u[k] <= 0.0 || m.u[k] > m.u[k - 1]) {
            kturn = k - 1;
            break;
        }
    for (std::size_t k = kturn + 1; k <= n; ++k)
        m.u[k] = m.u[kturn] * std::exp(-static_cast<double>(k - kturn) * h) *
                 std::sqrt(static_cast<double>(kturn) / static_cast<double>(k));
    return m;
}

double simpson(const std::vector<double>& F, double h) {
    const std::size_t n = F.size() - 1;
    const std::size_t even_end = (n % 2 == 0) ? n : n - 3;
    double acc = F[0] + F[even_end];
    for (std::size_t j = 1; j < even_end; ++j) acc += (j % 2 == 1 ? 4.0 : 2.0) * F[j];
    double total = acc * h / 3.0;
    if (n % 2 != 0) total += 3.0 * h / 8.0 * (F[n - 3] + 3.0 * F[n - 2] + 3.0 * F[n - 1] + F[n]);
    return total;
}

double moment(const March& m, int upow, int rpow) {
    std::vector<double> F(m.u.size());
    for (std::size_t k = 0; k < m.u.size(); ++k) {
        const double r = static_cast<double>(k) * m.h;
        F[k] = std::pow(m.u[k], upow) * std::pow(r, rpow + 1);
    }
    return 2.0 * kPi * simpson(F, m.h);
}

// rho from (-d2 - d/r + 1 - 3Q^2) rho = r^2 Q, second-order tridiagonal
// with an even-extension row at r = 0 and Dirichlet at r_max.
std::vector<double> solve_rho_tridiag(const March& m) {
    const std::size_t n = m.u.size() - 1;  // unknowns at k = 0..n-1
    const double h = m.h, ih2 = 1.0 / (h * h);
    std::vector<double> dl(n - 1, 0.0), d(n, 0.0), du(n - 1, 0.0), rhs(n, 0.0);
    // k = 0: -2 u''(0) + (1 - 3Q^2) u = 0;  u''(0) ~ 2(u1 - u0)/h^2
    d[0] = 4.0 * ih2 + 1.0 - 3.0 * m.u[0] * m.u[0];
    du[0] = -4.0 * ih2;
    rhs[0] = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
        const double r = static_cast<double>(k) * h;
        const double q = m.u[k];
        dl[k - 1] = -ih2 + 1.0 / (2.0 * h * r);
        d[k] = 2.0 * ih2 + 1.0 - 3.0 * q * q;
        if (k + 1 < n) du[k] = -ih2 - 1.0 / (2.0 * h * r);
        rhs[k] = r * r * q;
    }
    return solve_tridiagonal(dl, d, du, rhs);
}

struct RawValues {
    double q0, mass, variance, quartic, y2_quartic, rho_q, y2q_rho;
};

RawValues raw(std::size_t n, double r_max) {
    March m = run_march(n, r_max);
    RawValues v{};
    v.q0 = m.a_star;
    v.mass = moment(m, 2, 0);
    v.variance = moment(m, 2, 2);
    v.quartic = moment(m, 4, 0);
    v.y2_quartic = moment(m, 4, 2);
    std::vector<double> rho = solve_rho_tridiag(m);
    rho.push_back(0.0);
    std::vector<double> f0(m.u.size()), f2(m.u.size());
    for (std::size_t k = 0; k < m.u.size(); ++k) {
        const double r = static_cast<double>(k) * m.h;
        f0[k] = rho[k] * m.u[k] * r;
        f2[k] = rho[k] * m.u[k] * r * r * r;
    }
    v.rho_q = 2.0 * kPi * simpson(f0, m.h);
    v.y2q_rho = 2.0 * kPi * simpson(f2, m.h);
    return v;
}

}  // namespace

OracleValues run_ground_state_oracle(std::size_t n, double r_max) {
    RawValues fine = raw(n, r_max);
    RawValues coarse = raw(n / 2, r_max);
    auto rich4 = [](double f, double c) { return (16.0 * f - c) / 15.0; };
    auto rich2 = [](double f, double c) { return (4.0 * f - c) / 3.0; };
    OracleValues out;
    out.q0 = rich4(fine.q0, coarse.q0);
    out.mass = rich4(fine.mass, coarse.mass);
    out.variance = rich4(fine.variance, coarse.variance);
    out.quartic = rich4(fine.quartic, coarse.quartic);
    out.y2_quartic = rich4(fine.y2_quartic, coarse.y2_quartic);
    out.rho_q = rich2(fine.rho_q, coarse.rho_q);
    out.y2q_rho = rich2(fine.y2q_rho, coarse.y2q_rho);
    return out;
}

std::map<std::string, double> oracle_as_map(const OracleValues& v) {
    return {{"q0", v.q0},           {"mass", v.mass},   {"variance", v.variance},
            {"quartic", v.quartic}, {"y2_quartic", v.y2_quartic},
            {"rho_q", v.rho_q},     {"y2q_rho", v.y2q_rho}};
}

}  // namespace blowuplab
