#include "blowuplab/radial.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace blowuplab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void RadialProfile::check_finite(const char* what) const {
    for (std::size_t j = 0; j < values.size(); ++j) {
        if (!std::isfinite(values[j]))
            throw std::invalid_argument(std::string(what) + ": non-finite value at node index " +
                                        std::to_string(j) + " (r = " + std::to_string(grid.node(j)) + ")");
    }
    if (!std::isfinite(value_at_zero))
        throw std::invalid_argument(std::string(what) + ": non-finite value at r = 0");
}

namespace {

// Composite Simpson over the n+1 samples F_0..F_n on spacing h.  n >= 4.
// Odd n: Simpson over the first n-3 panels, Simpson-3/8 over the last three.
double simpson_samples(const std::vector<double>& F, double h) {
    const std::size_t n = F.size() - 1;
    double total = 0.0;
    std::size_t even_end = (n % 2 == 0) ? n : n - 3;
    double acc = F[0] + F[even_end];
    for (std::size_t j = 1; j < even_end; ++j) acc += (j % 2 == 1 ? 4.0 : 2.0) * F[j];
    total = acc * h / 3.0;
    if (n % 2 != 0)
        total += 3.0 * h / 8.0 * (F[n - 3] + 3.0 * F[n - 2] + 3.0 * F[n - 1] + F[n]);
    return total;
}

}  // namespace

double integrate_radial(const RadialProfile& f, int weight_power) {
    if (weight_power < 0) throw std::invalid_argument("integrate_radial: weight_power must be >= 0");
    f.check_finite("integrate_radial");
    const std::size_t n = f.grid.n;
    const double h = f.grid.spacing();
    std::vector<double> F(n + 1);
    F[0] = 0.0;  // r^{1+p} vanishes at r = 0 for p >= 0
    for (std::size_t j = 0; j < n; ++j) {
        const double r = f.grid.node(j);
        F[j + 1] = f.values[j] * std::pow(r, 1 + weight_power);
    }
    return 2.0 * kPi * simpson_samples(F, h);
}

double integrate_radial_weighted(const RadialProfile& f,
                                 const std::function<double(double)>& weight) {
    f.check_finite("integrate_radial_weighted");
    const std::size_t n = f.grid.n;
    const double h = f.grid.spacing();
    std::vector<double> F(n + 1);
    F[0] = f.value_at_zero * weight(0.0);
    for (std::size_t j = 0; j < n; ++j) F[j + 1] = f.values[j] * weight(f.grid.node(j));
    return simpson_samples(F, h);
}

RadialProfile derivative_profile(const RadialProfile& p, bool even) {
    const std::size_t n = p.grid.n;
    const double h = p.grid.spacing();
    std::vector<double> v(n + 1);
    v[0] = even ? p.value_at_zero : 0.0;
    for (std::size_t j = 0; j < n; ++j) v[j + 1] = p.values[j];
    const double sgn = even ? 1.0 : -1.0;
    auto at = [&](long j) -> double {
        if (j >= 0 && j <= static_cast<long>(n)) return v[j];
        if (j < 0) return sgn * v[-j];
        return v[n] * std::exp(-(static_cast<double>(j) - static_cast<double>(n)) * h);
    };
    RadialProfile out(p.grid);
    for (long j = 1; j <= static_cast<long>(n); ++j)
        out.values[j - 1] = (at(j - 2) - 8.0 * at(j - 1) + 8.0 * at(j + 1) - at(j + 2)) / (12.0 * h);
    out.value_at_zero =
        even ? 0.0 : (at(-2) - 8.0 * at(-1) + 8.0 * at(1) - at(2)) / (12.0 * h);
    return out;
}

RadialInterpolant::RadialInterpolant(const RadialProfile& p, Parity parity) {
    const std::size_t n = p.grid.n;
    h_ = p.grid.spacing();
    r_max_ = p.grid.r_max;
    val_.resize(n + 1);
    slope_.resize(n + 1);
    curv_.resize(n + 1);
    val_[0] = (parity == Parity::Odd) ? 0.0 : p.value_at_zero;
    for (std::size_t j = 0; j < n; ++j) val_[j + 1] = p.values[j];

    const double sgn = (parity == Parity::Even) ? 1.0 : -1.0;
    auto at = [&](long j) -> double {
        if (j >= 0 && j <= static_cast<long>(n)) return val_[j];
        if (j < 0) return sgn * val_[-j];          // parity mirror through r = 0
        return val_[n] * std::exp(-(static_cast<double>(j) - static_cast<double>(n)) * h_);
    };
    for (long j = 0; j <= static_cast<long>(n); ++j) {
        slope_[j] = (at(j - 2) - 8.0 * at(j - 1) + 8.0 * at(j + 1) - at(j + 2)) / (12.0 * h_);
        curv_[j] = (-at(j - 2) + 16.0 * at(j - 1) - 30.0 * at(j) + 16.0 * at(j + 1) - at(j + 2)) /
                   (12.0 * h_ * h_);
    }
    if (parity == Parity::Even) slope_[0] = 0.0;
    if (parity == Parity::Odd) curv_[0] = 0.0;

    tail_coeff_ = val_[n] * std::exp(r_max_);
}

double RadialInterpolant::operator()(double r) const {
    r = std::abs(r);
    if (r >= r_max_) return tail_coeff_ * std::exp(-r);
    const double x = r / h_;
    auto j = static_cast<std::size_t>(x);
    const double t = x - static_cast<double>(j);
    const double y0 = val_[j], y1 = val_[j + 1];
    const double m0 = slope_[j] * h_, m1 = slope_[j + 1] * h_;
    const double c0 = curv_[j] * h_ * h_, c1 = curv_[j + 1] * h_ * h_;
    const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
    return y0 * (1 - 10 * t3 + 15 * t4 - 6 * t5) + m0 * (t - 6 * t3 + 8 * t4 - 3 * t5) +
           c0 * 0.5 * (t2 - 3 * t3 + 3 * t4 - t5) + y1 * (10 * t3 - 15 * t4 + 6 * t5) +
           m1 * (-4 * t3 + 7 * t4 - 3 * t5) + c1 * 0.5 * (t3 - 2 * t4 + t5);
}

double RadialInterpolant::derivative(double r) const {
    r = std::abs(r);
    if (r >= r_max_) return -tail_coeff_ * std::exp(-r);
    const double x = r / h_;
    auto j = static_cast<std::size_t>(x);
    const double t = x - static_cast<double>(j);
    const double y0 = val_[j], y1 = val_[j + 1];
    const double m0 = slope_[j] * h_, m1 = slope_[j + 1] * h_;
    const double c0 = curv_[j] * h_ * h_, c1 = curv_[j + 1] * h_ * h_;
    const double t2 = t * t, t3 = t2 * t, t4 = t3 * t;
    const double d = y0 * (-30 * t2 + 60 * t3 - 30 * t4) + m0 * (1 - 18 * t2 + 32 * t3 - 15 * t4) +
                     c0 * 0.5 * (2 * t - 9 * t2 + 12 * t3 - 5 * t4) +
                     y1 * (30 * t2 - 60 * t3 + 30 * t4) + m1 * (-12 * t2 + 28 * t3 - 15 * t4) +
                     c1 * 0.5 * (3 * t2 - 8 * t3 + 5 * t4);
    return d / h_;
}

}  // namespace blowuplab
