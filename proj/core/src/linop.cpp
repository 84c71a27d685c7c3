#include "blowuplab/linop.hpp"

#include <cmath>
#include <vector>

#include "blowuplab/banded.hpp"
#include "blowuplab/fft.hpp"

namespace blowuplab {

namespace {

Field2D sample_radial_2d(const CartesianGrid& g, const RadialInterpolant& itp) {
    Field2D out(g);
    for (std::size_t i = 0; i < g.m; ++i) {
        const double x = g.coord(i);
        for (std::size_t j = 0; j < g.m; ++j) {
            const double y = g.coord(j);
            out.at(i, j) = itp(std::sqrt(x * x + y * y));
        }
    }
    return out;
}

// d_a Q component a in {0,1}: Q'(r) y_a / r
Field2D sample_dQ(const CartesianGrid& g, const RadialInterpolant& q_itp, int a) {
    Field2D out(g);
    for (std::size_t i = 0; i < g.m; ++i) {
        const double x = g.coord(i);
        for (std::size_t j = 0; j < g.m; ++j) {
            const double y = g.coord(j);
            const double r = std::sqrt(x * x + y * y);
            const double dir = (r > 0) ? ((a == 0 ? x : y) / r) : 0.0;
            out.at(i, j) = q_itp.derivative(r) * dir;
        }
    }
    return out;
}

}  // namespace

Field2D apply_L(const RadialProfile& q, const Field2D& f, LKind which) {
    RadialInterpolant itp(q, RadialInterpolant::Parity::Even);
    Field2D out = spectral::laplacian(f);
    const double c = (which == LKind::Plus) ? 3.0 : 1.0;
    const std::size_t m = f.grid.m;
    for (std::size_t i = 0; i < m; ++i) {
        const double x = f.grid.coord(i);
        for (std::size_t j = 0; j < m; ++j) {
            const double y = f.grid.coord(j);
            const double qv = itp(std::sqrt(x * x + y * y));
            out.at(i, j) = -out.at(i, j) + (1.0 - c * qv * qv) * f.at(i, j);
        }
    }
    return out;
}

Field2D apply_M(const Field2D& qp, const Field2D& k_resc, const Field2D& eps) {
    if (!(qp.grid == eps.grid) || !(k_resc.grid == eps.grid))
        throw std::invalid_argument("apply_M: grid mismatch");
    Field2D out = spectral::laplacian(eps);
    for (std::size_t k = 0; k < eps.v.size(); ++k) {
        const cplx qpv = qp.v[k];
        const cplx lin = 2.0 * std::norm(qpv) * eps.v[k] + qpv * qpv * std::conj(eps.v[k]);
        out.v[k] = -out.v[k] + eps.v[k] - k_resc.v[k].real() * lin;
    }
    return out;
}

Fredholm2DResult solve_Lplus(const RadialProfile& q, const Field2D& rhs, double tol) {
    RadialInterpolant q_itp(q, RadialInterpolant::Parity::Even);
    const CartesianGrid& g = rhs.grid;

    Field2D e1 = sample_dQ(g, q_itp, 0), e2 = sample_dQ(g, q_itp, 1);
    const double n1 = l2_norm(e1), n2 = l2_norm(e2);
    e1 *= cplx(1.0 / n1, 0.0);
    e2 *= cplx(1.0 / n2, 0.0);
    auto project = [&](Field2D& f) {
        const double c1 = inner(f, e1).real(), c2 = inner(f, e2).real();
        for (std::size_t k = 0; k < f.v.size(); ++k)
            f.v[k] -= c1 * e1.v[k] + c2 * e2.v[k];
        return std::sqrt(c1 * c1 + c2 * c2);
    };

    Field2D b = rhs;
    const double rhs_norm = l2_norm(rhs);
    const double defect = project(b);
    FredholmReport rep;
    rep.compatibility_defect = defect;
    if (defect > tol * std::max(rhs_norm, 1e-300)) throw IncompatibleRhs(defect);

    Field2D q2 = sample_radial_2d(g, q_itp);
    for (auto& z : q2.v) z *= z;
    auto apply_lp = [&](const Field2D& f) {
        Field2D out = spectral::laplacian(f);
        for (std::size_t k = 0; k < f.v.size(); ++k)
            out.v[k] = -out.v[k] + (1.0 - 3.0 * q2.v[k].real()) * f.v[k];
        project(out);
        return out;
    };
    auto precond = [&](const Field2D& f) {
        return spectral::apply_symbol(f, [](double kx, double ky) {
            const double s = 1.0 + kx * kx + ky * ky;
            return cplx(1.0 / (s * s), 0.0);
        });
    };

    // CG on the normal equations  (P L+ P)^2 u = P L+ P b
    Field2D u(g);
    Field2D res = apply_lp(b);      // L^T (b - L u) with u = 0
    Field2D z = precond(res);
    project(z);
    Field2D p = z;
    double rz = inner(res, z).real();
    const int max_iter = 600;
    int it = 0;
    double achieved = 1e300;
    for (; it < max_iter; ++it) {
        Field2D lp_p = apply_lp(p);
        const double denom = inner(lp_p, lp_p).real();
        if (denom <= 0.0) break;
        const double alpha = rz / denom;
        for (std::size_t k = 0; k < u.v.size(); ++k) {
            u.v[k] += alpha * p.v[k];
            // res -= alpha * L^T L p accumulated below
        }
        Field2D ltlp = apply_lp(lp_p);
        for (std::size_t k = 0; k < res.v.size(); ++k) res.v[k] -= alpha * ltlp.v[k];
        // true residual every few steps
        if (it % 5 == 4 || it == max_iter - 1) {
            Field2D r_true = apply_lp(u);
            for (std::size_t k = 0; k < r_true.v.size(); ++k) r_true.v[k] = b.v[k] - r_true.v[k];
            project(r_true);
            achieved = l2_norm(r_true) / std::max(rhs_norm, 1e-300);
            if (achieved < tol) {
                ++it;
                break;
            }
        }
        Field2D z_new = precond(res);
        project(z_new);
        const double rz_new = inner(res, z_new).real();
        const double beta = rz_new / rz;
        rz = rz_new;
        for (std::size_t k = 0; k < p.v.size(); ++k) p.v[k] = z_new.v[k] + beta * p.v[k];
    }
    project(u);
    rep.iterations = it;
    {
        Field2D r_true = apply_lp(u);
        for (std::size_t k = 0; k < r_true.v.size(); ++k) r_true.v[k] = b.v[k] - r_true.v[k];
        project(r_true);
        rep.residual = l2_norm(r_true) / std::max(rhs_norm, 1e-300);
    }
    return {std::move(u), rep};
}

namespace {

// 4th-order banded assembly of -u'' - u'/r + (l^2/r^2 + 1 - 3Q^2) u on radii
// k*h.  l = 0 keeps the r = 0 value as unknown 0 with the limit equation
// -2u''(0) + (1 - 3Q(0)^2) u0 = f(0); l >= 1 pins u(0) = 0 and starts at k=1.
// Ghost values fold back with parity sign: even for l even, odd for l odd.
struct RadialSystem {
    std::size_t n;       // grid.n; radii k*h, k = 0..n, Dirichlet at k = n
    double h;
    int l;
    std::vector<double> pot;  // 1 - 3Q^2 at k = 0..n-1

    std::size_t unknowns() const { return (l == 0) ? n : n - 1; }
    std::size_t first_k() const { return (l == 0) ? 0 : 1; }

    BandedMatrix assemble() const {
        const std::size_t N = unknowns();
        BandedMatrix A(N, 2, 2);
        const double ih2 = 1.0 / (12.0 * h * h), ih1 = 1.0 / (12.0 * h);
        const double sgn = (l % 2 == 0) ? 1.0 : -1.0;
        const std::size_t k0 = first_k();
        auto put = [&](std::size_t row, long k, double v) {
            if (k < 0) {
                k = -k;
                v *= sgn;
            }
            if (k < static_cast<long>(k0) || k >= static_cast<long>(n)) return;  // u(0)=0 (l>=1), u(r_max)=0
            A.add(row, static_cast<std::size_t>(k) - k0, v);
        };
        if (l == 0) {
            put(0, 2, 2.0 * 2.0 * ih2);
            put(0, 1, -2.0 * 32.0 * ih2);
            put(0, 0, 2.0 * 30.0 * ih2 + pot[0]);
        }
        for (std::size_t k = std::max<std::size_t>(1, k0); k < n; ++k) {
            const std::size_t row = k - k0;
            const long kk = static_cast<long>(k);
            const double r = static_cast<double>(k) * h;
            const double cent = static_cast<double>(l * l) / (r * r);
            put(row, kk - 2, ih2 - ih1 / r);
            put(row, kk - 1, -16.0 * ih2 + 8.0 * ih1 / r);
            put(row, kk, 30.0 * ih2 + cent + pot[k]);
            put(row, kk + 1, -16.0 * ih2 - 8.0 * ih1 / r);
            put(row, kk + 2, ih2 + ih1 / r);
        }
        return A;
    }
};

std::vector<double> simpson_weights(std::size_t n, double h) {
    // weights for samples at k = 0..n
    std::vector<double> w(n + 1, 0.0);
    const std::size_t even_end = (n % 2 == 0) ? n : n - 3;
    w[0] += h / 3.0;
    w[even_end] += h / 3.0;
    for (std::size_t j = 1; j < even_end; ++j) w[j] += (j % 2 == 1 ? 4.0 : 2.0) * h / 3.0;
    if (n % 2 != 0) {
        w[n - 3] += 3.0 * h / 8.0;
        w[n - 2] += 9.0 * h / 8.0;
        w[n - 1] += 9.0 * h / 8.0;
        w[n] += 3.0 * h / 8.0;
    }
    return w;
}

}  // namespace

RadialSolveResult solve_Lplus_radial(const RadialProfile& q, int harmonic, const RadialProfile& f,
                                     double tol) {
    if (harmonic < 0 || harmonic > 2)
        throw std::invalid_argument("solve_Lplus_radial: harmonic must be 0, 1 or 2");
    if (!(q.grid == f.grid)) throw std::invalid_argument("solve_Lplus_radial: grid mismatch");
    const std::size_t n = q.grid.n;
    const double h = q.grid.spacing();

    RadialSystem sys{n, h, harmonic, {}};
    sys.pot.resize(n);
    sys.pot[0] = 1.0 - 3.0 * q.value_at_zero * q.value_at_zero;
    for (std::size_t k = 1; k < n; ++k) {
        const double qv = q.values[k - 1];  // node (k-1) sits at radius k*h
        sys.pot[k] = 1.0 - 3.0 * qv * qv;
    }

    const std::size_t k0 = sys.first_k(), N = sys.unknowns();
    std::vector<double> rhs(N);
    for (std::size_t k = k0; k < n; ++k)
        rhs[k - k0] = (k == 0) ? f.value_at_zero : f.values[k - 1];

    BandedMatrix A = sys.assemble();
    BandedMatrix A0 = A;  // pristine copy for residual evaluation
    A.factor();

    FredholmReport rep;
    std::vector<double> u(N, 0.0);

    if (harmonic != 1) {
        std::vector<double> r = rhs;
        for (int pass = 0; pass < 2; ++pass) {
            std::vector<double> du = A.solve(r);
            for (std::size_t i = 0; i < N; ++i) u[i] += du[i];
            std::vector<double> au = A0.apply(u);
            for (std::size_t i = 0; i < N; ++i) r[i] = rhs[i] - au[i];
        }
        double rn = 0.0, gn = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            rn = std::max(rn, std::abs(r[i]));
            gn = std::max(gn, std::abs(rhs[i]));
        }
        rep.residual = rn / std::max(gn, 1e-300);
        rep.iterations = 2;
    } else {
        // bordered system: [A, w; c^T, 0] (u, mu) = (rhs, 0) with
        // c = (simpson weight * r) Q'  (2D orthogonality to the kernel) and
        // w = r Q' (left near-null direction of the row form).
        RadialInterpolant q_itp(q, RadialInterpolant::Parity::Even);
        std::vector<double> v(N), w(N), c(N);
        std::vector<double> sw = simpson_weights(n, h);
        for (std::size_t k = 1; k < n; ++k) {
            const double r = static_cast<double>(k) * h;
            v[k - 1] = q_itp.derivative(r);
            w[k - 1] = r * v[k - 1];
            c[k - 1] = sw[k] * r * v[k - 1];
        }
        double cn = 0.0, fn = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            cn += c[i] * v[i];
            fn += c[i] * rhs[i];
        }
        rep.compatibility_defect = std::abs(fn) / std::max(std::sqrt(cn), 1e-300);

        std::vector<double> z = A.solve(w);
        double czw = 0.0;
        for (std::size_t i = 0; i < N; ++i) czw += c[i] * z[i];

        double mu = 0.0;
        std::vector<double> r1 = rhs;
        double r2 = 0.0;
        for (int pass = 0; pass < 3; ++pass) {
            std::vector<double> t = A.solve(r1);
            double ct = 0.0;
            for (std::size_t i = 0; i < N; ++i) ct += c[i] * t[i];
            const double dmu = (ct - r2) / czw;
            for (std::size_t i = 0; i < N; ++i) u[i] += t[i] - dmu * z[i];
            mu += dmu;
            std::vector<double> au = A0.apply(u);
            r2 = 0.0;
            for (std::size_t i = 0; i < N; ++i) {
                r1[i] = rhs[i] - au[i] - mu * w[i];
                r2 -= c[i] * u[i];
            }
        }
        double rn = 0.0, gn = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            rn = std::max(rn, std::abs(r1[i]));
            gn = std::max(gn, std::abs(rhs[i]));
        }
        rep.residual = rn / std::max(gn, 1e-300);
        rep.iterations = 3;
    }
    if (rep.residual > std::max(tol, 1e-10) * 100.0)
        throw std::runtime_error("solve_Lplus_radial: refinement stalled, residual " +
                                 std::to_string(rep.residual));

    RadialProfile sol(q.grid);
    sol.value_at_zero = (harmonic == 0) ? u[0] : 0.0;
    for (std::size_t k = 1; k < n; ++k) sol.values[k - 1] = u[k - k0];
    sol.values[n - 1] = 0.0;
    return {std::move(sol), rep};
}

RadialProfile solve_rho(const RadialProfile& q, double tol) {
    RadialProfile rhs(q.grid);
    rhs.value_at_zero = 0.0;
    for (std::size_t j = 0; j < q.grid.n; ++j) {
        const double r = q.grid.node(j);
        rhs.values[j] = r * r * q.values[j];
    }
    return solve_Lplus_radial(q, 0, rhs, tol).solution;
}

CoercivityResult coercivity_form(const RadialProfile& q, const Field2D& eps) {
    const CartesianGrid& g = eps.grid;
    Field2D e1(g), e2(g);
    for (std::size_t k = 0; k < eps.v.size(); ++k) {
        e1.v[k] = cplx(eps.v[k].real(), 0.0);
        e2.v[k] = cplx(eps.v[k].imag(), 0.0);
    }
    Field2D lp = apply_L(q, e1, LKind::Plus);
    Field2D lm = apply_L(q, e2, LKind::Minus);

    RadialInterpolant itp(q, RadialInterpolant::Parity::Even);
    Field2D qf = sample_radial_2d(g, itp);

    CoercivityResult out;
    out.value = inner(lp, e1).real() + inner(lm, e2).real();
    double p_q = 0.0, p_y2q = 0.0, p_y1q = 0.0, p_y2q_vec = 0.0, p2_q = 0.0;
    const double h2 = g.spacing() * g.spacing();
    for (std::size_t i = 0; i < g.m; ++i) {
        const double x = g.coord(i);
        for (std::size_t j = 0; j < g.m; ++j) {
            const double y = g.coord(j);
            const double qv = qf.at(i, j).real();
            const double r2 = x * x + y * y;
            const double a = e1.at(i, j).real(), b = e2.at(i, j).real();
            p_q += a * qv;
            p_y2q += a * r2 * qv;
            p_y1q += a * x * qv;
            p_y2q_vec += a * y * qv;
            p2_q += b * qv;
        }
    }
    out.projections = {p_q * h2, p_y2q * h2, std::hypot(p_y1q * h2, p_y2q_vec * h2), p2_q * h2};
    return out;
}

Field2D project_out_coercivity_directions(const RadialProfile& q, const Field2D& eps) {
    const CartesianGrid& g = eps.grid;
    RadialInterpolant itp(q, RadialInterpolant::Parity::Even);
    // directions for the real part: Q, |y|^2 Q, y1 Q, y2 Q
    std::vector<Field2D> dirs;
    dirs.push_back(Field2D::sample(g, [&](double x, double y) {
        return cplx(itp(std::hypot(x, y)), 0.0);
    }));
    dirs.push_back(Field2D::sample(g, [&](double x, double y) {
        return cplx((x * x + y * y) * itp(std::hypot(x, y)), 0.0);
    }));
    dirs.push_back(Field2D::sample(g, [&](double x, double y) {
        return cplx(x * itp(std::hypot(x, y)), 0.0);
    }));
    dirs.push_back(Field2D::sample(g, [&](double x, double y) {
        return cplx(y * itp(std::hypot(x, y)), 0.0);
    }));

    Field2D re(g), im(g);
    for (std::size_t k = 0; k < eps.v.size(); ++k) {
        re.v[k] = cplx(eps.v[k].real(), 0.0);
        im.v[k] = cplx(eps.v[k].imag(), 0.0);
    }
    // Gram-Schmidt the directions, then subtract components
    std::vector<Field2D> ortho;
    for (auto& d : dirs) {
        Field2D dd = d;
        for (const auto& o : ortho) {
            const double cval = inner(dd, o).real();
            for (std::size_t k = 0; k < dd.v.size(); ++k) dd.v[k] -= cval * o.v[k];
        }
        dd *= cplx(1.0 / l2_norm(dd), 0.0);
        ortho.push_back(std::move(dd));
    }
    for (const auto& o : ortho) {
        const double cval = inner(re, o).real();
        for (std::size_t k = 0; k < re.v.size(); ++k) re.v[k] -= cval * o.v[k];
    }
    {
        const auto& o = ortho[0];  // Q direction for the imaginary part
        const double cval = inner(im, o).real();
        for (std::size_t k = 0; k < im.v.size(); ++k) im.v[k] -= cval * o.v[k];
    }
    Field2D out(g);
    for (std::size_t k = 0; k < out.v.size(); ++k) out.v[k] = cplx(re.v[k].real(), im.v[k].real());
    return out;
}

}  // namespace blowuplab
