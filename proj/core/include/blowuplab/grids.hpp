#pragma once

#include <cstddef>
#include <stdexcept>

namespace blowuplab {

/// Uniform radial grid with nodes r_j = (j+1)*h, j = 0..n-1, h = r_max/n.
/// The origin r = 0 is not a node; even-extension values at r = 0 are carried
/// by the profiles themselves.
struct RadialGrid {
    double r_max = 25.0;
    std::size_t n = 4096;

    double spacing() const { return r_max / static_cast<double>(n); }
    double node(std::size_t j) const { return static_cast<double>(j + 1) * spacing(); }

    bool operator==(const RadialGrid&) const = default;

    void validate() const {
        if (!(r_max > 0.0)) throw std::invalid_argument("RadialGrid: r_max must be > 0");
        if (n < 16) throw std::invalid_argument("RadialGrid: need n >= 16");
    }
};

/// Periodic square [-L, L)^2, m points per axis (power of two), h = 2L/m.
struct CartesianGrid {
    double half_width = 16.0;  // L
    std::size_t m = 512;

    double spacing() const { return 2.0 * half_width / static_cast<double>(m); }
    double coord(std::size_t i) const { return -half_width + static_cast<double>(i) * spacing(); }
    std::size_t size() const { return m * m; }

    /// Physical wavenumber of Fourier index i: (pi/L) * signed index.
    double wavenumber(std::size_t i) const {
        const double base = 3.14159265358979323846 / half_width;
        const auto mi = static_cast<long>(m);
        auto si = static_cast<long>(i);
        if (si >= mi / 2) si -= mi;
        return base * static_cast<double>(si);
    }

    bool operator==(const CartesianGrid&) const = default;

    void validate() const {
        if (!(half_width > 0.0)) throw std::invalid_argument("CartesianGrid: L must be > 0");
        if (m < 2 || (m & (m - 1)) != 0) throw std::invalid_argument("CartesianGrid: m must be a power of two");
    }
};

}  // namespace blowuplab
