#include "blowuplab/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace blowuplab {
namespace spectral {

namespace {

// One pair of c2c plans per grid size, created once under a lock (FFTW plan
// creation is not thread-safe; execution with the new-array interface is).
struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

PlanPair& plans_for(std::size_t m) {
    static std::mutex mu;
    static std::map<std::size_t, PlanPair> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    const auto n = static_cast<int>(m);
    auto* buf_in = fftw_alloc_complex(m * m);
    auto* buf_out = fftw_alloc_complex(m * m);
    PlanPair p;
    p.fwd = fftw_plan_dft_2d(n, n, buf_in, buf_out, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.bwd = fftw_plan_dft_2d(n, n, buf_in, buf_out, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf_in);
    fftw_free(buf_out);
    return cache.emplace(m, p).first->second;
}

fftw_complex* as_fftw(std::vector<cplx>& v) { return reinterpret_cast<fftw_complex*>(v.data()); }

}  // namespace

Field2D forward(const Field2D& f) {
    Field2D out(f.grid);
    Field2D in = f;  // fftw may not preserve input for some algorithms
    fftw_execute_dft(plans_for(f.grid.m).fwd, as_fftw(in.v), as_fftw(out.v));
    return out;
}

Field2D backward(const Field2D& fhat) {
    Field2D out(fhat.grid);
    Field2D in = fhat;
    fftw_execute_dft(plans_for(fhat.grid.m).bwd, as_fftw(in.v), as_fftw(out.v));
    const double scale = 1.0 / static_cast<double>(fhat.grid.size());
    for (auto& z : out.v) z *= scale;
    return out;
}

Field2D apply_symbol(const Field2D& f, const std::function<cplx(double, double)>& sym) {
    Field2D hat = forward(f);
    const std::size_t m = f.grid.m;
    for (std::size_t i = 0; i < m; ++i) {
        const double kx = f.grid.wavenumber(i);
        for (std::size_t j = 0; j < m; ++j) hat.v[i * m + j] *= sym(kx, f.grid.wavenumber(j));
    }
    return backward(hat);
}

Field2D laplacian(const Field2D& f) {
    return apply_symbol(f, [](double kx, double ky) { return cplx(-(kx * kx + ky * ky), 0.0); });
}

std::pair<Field2D, Field2D> gradient(const Field2D& f) {
    Field2D hat = forward(f);
    const std::size_t m = f.grid.m;
    Field2D gx_hat(f.grid), gy_hat(f.grid);
    const std::size_t nyq = m / 2;
    for (std::size_t i = 0; i < m; ++i) {
        const double kx = (i == nyq) ? 0.0 : f.grid.wavenumber(i);
        for (std::size_t j = 0; j < m; ++j) {
            const double ky = (j == nyq) ? 0.0 : f.grid.wavenumber(j);
            const cplx c = hat.v[i * m + j];
            gx_hat.v[i * m + j] = cplx(0.0, kx) * c;
            gy_hat.v[i * m + j] = cplx(0.0, ky) * c;
        }
    }
    return {backward(gx_hat), backward(gy_hat)};
}

Field2D scaling_generator(const Field2D& f) {
    auto [gx, gy] = gradient(f);
    Field2D out = f;
    const std::size_t m = f.grid.m;
    for (std::size_t i = 0; i < m; ++i) {
        const double x = f.grid.coord(i);
        for (std::size_t j = 0; j < m; ++j) {
            const double y = f.grid.coord(j);
            out.v[i * m + j] += x * gx.v[i * m + j] + y * gy.v[i * m + j];
        }
    }
    return out;
}

std::pair<double, double> norms(const Field2D& f) {
    Field2D hat = forward(f);
    const std::size_t m = f.grid.m;
    double sum2 = 0.0, sumk2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double kx = f.grid.wavenumber(i);
        for (std::size_t j = 0; j < m; ++j) {
            const double ky = f.grid.wavenumber(j);
            const double a = std::norm(hat.v[i * m + j]);
            sum2 += a;
            sumk2 += (kx * kx + ky * ky) * a;
        }
    }
    const double h = f.grid.spacing();
    const double scale = h * h / static_cast<double>(f.grid.size());
    const double l2sq = sum2 * scale;
    return {std::sqrt(l2sq), std::sqrt(l2sq + sumk2 * scale)};
}

double l2_norm_fourier(const Field2D& f) { return norms(f).first; }

Field2D upsample(const Field2D& f, std::size_t factor) {
    if (factor == 0 || (factor & (factor - 1)) != 0)
        throw std::invalid_argument("upsample: factor must be a power of two");
    if (factor == 1) return f;
    const std::size_t m = f.grid.m, M = m * factor;
    Field2D hat = forward(f);
    CartesianGrid fine{f.grid.half_width, M};
    Field2D fine_hat(fine);
    // copy spectrum into the corners of the larger array (signed indices kept)
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t I = (i < m / 2) ? i : M - (m - i);
        for (std::size_t j = 0; j < m; ++j) {
            const std::size_t J = (j < m / 2) ? j : M - (m - j);
            fine_hat.v[I * M + J] = hat.v[i * m + j];
        }
    }
    Field2D out = backward(fine_hat);
    const double grow = static_cast<double>(factor * factor);
    for (auto& z : out.v) z *= grow;  // backward() divided by M^2, spectrum was m^2-scaled
    return out;
}

}  // namespace spectral
}  // namespace blowuplab
