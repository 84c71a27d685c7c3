#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "blowuplab/grids.hpp"

namespace blowuplab {

using cplx = std::complex<double>;

/// Complex field on a periodic Cartesian grid, row-major: v[i*m + j] is the
/// value at (x_i, y_j) = (-L + i h, -L + j h).
struct Field2D {
    CartesianGrid grid;
    std::vector<cplx> v;

    Field2D() = default;
    explicit Field2D(const CartesianGrid& g) : grid(g), v(g.size(), cplx(0.0, 0.0)) {}

    cplx& at(std::size_t i, std::size_t j) { return v[i * grid.m + j]; }
    const cplx& at(std::size_t i, std::size_t j) const { return v[i * grid.m + j]; }

    static Field2D sample(const CartesianGrid& g, const std::function<cplx(double, double)>& f);

    Field2D& operator+=(const Field2D& o);
    Field2D& operator-=(const Field2D& o);
    Field2D& operator*=(cplx a);
    void check_finite(const char* what) const;
};

Field2D operator+(Field2D a, const Field2D& b);
Field2D operator-(Field2D a, const Field2D& b);
Field2D operator*(cplx a, Field2D f);

/// <f,g> = h^2 sum f conj(g).  Throws on grid mismatch.
cplx inner(const Field2D& f, const Field2D& g);

double l2_norm(const Field2D& f);
double sup_norm(const Field2D& f);

/// Sample the 2L-periodization of a decaying free-space function: the sum of
/// f over the 3x3 nearest images.  Sampling a decaying function this way keeps
/// it smooth across the box seam, which matters whenever the samples feed a
/// spectral derivative.
Field2D sample_periodized(const CartesianGrid& g, const std::function<cplx(double, double)>& f);

}  // namespace blowuplab
