#include "blowuplab/banded.hpp"

#include <lapacke.h>

#include <stdexcept>
#include <string>

namespace blowuplab {

BandedMatrix::BandedMatrix(std::size_t n, std::size_t kl, std::size_t ku)
    : n_(n), kl_(kl), ku_(ku), ldab_(2 * kl + ku + 1), ab_(ldab_ * n, 0.0), ipiv_(n, 0) {}

void BandedMatrix::add(std::size_t i, std::size_t j, double v) {
    // column-major band storage: AB(kl + ku + i - j, j)
    ab_[(kl_ + ku_ + i - j) + j * ldab_] += v;
}

void BandedMatrix::set(std::size_t i, std::size_t j, double v) {
    ab_[(kl_ + ku_ + i - j) + j * ldab_] = v;
}

double BandedMatrix::get(std::size_t i, std::size_t j) const {
    const long d = static_cast<long>(i) - static_cast<long>(j);
    if (d > static_cast<long>(kl_) || -d > static_cast<long>(ku_)) return 0.0;
    const auto& src = factored_ ? ab_orig_ : ab_;
    return src[(kl_ + ku_ + i - j) + j * ldab_];
}

void BandedMatrix::factor() {
    ab_orig_ = ab_;
    const int info = LAPACKE_dgbtrf(LAPACK_COL_MAJOR, static_cast<int>(n_), static_cast<int>(n_),
                                    static_cast<int>(kl_), static_cast<int>(ku_), ab_.data(),
                                    static_cast<int>(ldab_), ipiv_.data());
    if (info != 0)
        throw std::runtime_error("BandedMatrix::factor: dgbtrf info = " + std::to_string(info));
    factored_ = true;
}

std::vector<double> BandedMatrix::solve(const std::vector<double>& rhs) const {
    if (!factored_) throw std::logic_error("BandedMatrix::solve: factor() not called");
    std::vector<double> x = rhs;
    const int info = LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', static_cast<int>(n_), static_cast<int>(kl_),
                                    static_cast<int>(ku_), 1, ab_.data(), static_cast<int>(ldab_),
                                    ipiv_.data(), x.data(), static_cast<int>(n_));
    if (info != 0)
        throw std::runtime_error("BandedMatrix::solve: dgbtrs info = " + std::to_string(info));
    return x;
}

std::vector<double> BandedMatrix::solve_once(BandedMatrix a, const std::vector<double>& rhs) {
    a.factor();
    return a.solve(rhs);
}

std::vector<double> BandedMatrix::apply(const std::vector<double>& x) const {
    const auto& src = factored_ ? ab_orig_ : ab_;
    std::vector<double> y(n_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) {
        const std::size_t ilo = (j > ku_) ? j - ku_ : 0;
        const std::size_t ihi = std::min(n_ - 1, j + kl_);
        for (std::size_t i = ilo; i <= ihi; ++i)
            y[i] += src[(kl_ + ku_ + i - j) + j * ldab_] * x[j];
    }
    return y;
}

std::vector<double> solve_tridiagonal(std::vector<double> lower, std::vector<double> diag,
                                      std::vector<double> upper, std::vector<double> rhs) {
    const auto n = static_cast<int>(diag.size());
    const int info =
        LAPACKE_dgtsv(LAPACK_COL_MAJOR, n, 1, lower.data(), diag.data(), upper.data(), rhs.data(), n);
    if (info != 0) throw std::runtime_error("solve_tridiagonal: dgtsv info = " + std::to_string(info));
    return rhs;
}

}  // namespace blowuplab
