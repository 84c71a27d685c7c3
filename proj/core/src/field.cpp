#include "blowuplab/field.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace blowuplab {

Field2D Field2D::sample(const CartesianGrid& g, const std::function<cplx(double, double)>& f) {
    Field2D out(g);
    for (std::size_t i = 0; i < g.m; ++i) {
        const double x = g.coord(i);
        for (std::size_t j = 0; j < g.m; ++j) out.v[i * g.m + j] = f(x, g.coord(j));
    }
    return out;
}

Field2D& Field2D::operator+=(const Field2D& o) {
    if (!(grid == o.grid)) throw std::invalid_argument("Field2D: grid mismatch in +=");
    for (std::size_t k = 0; k < v.size(); ++k) v[k] += o.v[k];
    return *this;
}

Field2D& Field2D::operator-=(const Field2D& o) {
    if (!(grid == o.grid)) throw std::invalid_argument("Field2D: grid mismatch in -=");
    for (std::size_t k = 0; k < v.size(); ++k) v[k] -= o.v[k];
    return *this;
}

Field2D& Field2D::operator*=(cplx a) {
    for (auto& z : v) z *= a;
    return *this;
}

void Field2D::check_finite(const char* what) const {
    for (std::size_t k = 0; k < v.size(); ++k)
        if (!std::isfinite(v[k].real()) || !std::isfinite(v[k].imag()))
            throw std::invalid_argument(std::string(what) + ": non-finite entry at flat index " +
                                        std::to_string(k));
}

Field2D operator+(Field2D a, const Field2D& b) { return a += b; }
Field2D operator-(Field2D a, const Field2D& b) { return a -= b; }
Field2D operator*(cplx a, Field2D f) { return f *= a; }

cplx inner(const Field2D& f, const Field2D& g) {
    if (!(f.grid == g.grid)) throw std::invalid_argument("inner: grid mismatch");
    cplx acc(0.0, 0.0);
    for (std::size_t k = 0; k < f.v.size(); ++k) acc += f.v[k] * std::conj(g.v[k]);
    const double h = f.grid.spacing();
    return acc * (h * h);
}

double l2_norm(const Field2D& f) {
    double acc = 0.0;
    for (const auto& z : f.v) acc += std::norm(z);
    const double h = f.grid.spacing();
    return std::sqrt(acc * h * h);
}

double sup_norm(const Field2D& f) {
    double s = 0.0;
    for (const auto& z : f.v) s = std::max(s, std::abs(z));
    return s;
}

Field2D sample_periodized(const CartesianGrid& g, const std::function<cplx(double, double)>& f) {
    Field2D out(g);
    const double P = 2.0 * g.half_width;
    for (std::size_t i = 0; i < g.m; ++i) {
        const double x = g.coord(i);
        for (std::size_t j = 0; j < g.m; ++j) {
            const double y = g.coord(j);
            cplx acc(0.0, 0.0);
            for (int a = -1; a <= 1; ++a)
                for (int b = -1; b <= 1; ++b) acc += f(x + P * a, y + P * b);
            out.v[i * g.m + j] = acc;
        }
    }
    return out;
}

}  // namespace blowuplab
