#pragma once

#include <cstddef>
#include <vector>

namespace blowuplab {

/// General banded matrix in LAPACK dgbsv/dgbtrf storage (column-major band
/// layout with kl extra rows for pivoting).
class BandedMatrix {
  public:
    BandedMatrix(std::size_t n, std::size_t kl, std::size_t ku);

    std::size_t size() const { return n_; }
    void add(std::size_t i, std::size_t j, double v);
    void set(std::size_t i, std::size_t j, double v);
    double get(std::size_t i, std::size_t j) const;

    /// LU-factor in place (dgbtrf).  Throws if singular to machine precision.
    void factor();
    /// Solve with the stored factorization (dgbtrs); factor() must have run.
    std::vector<double> solve(const std::vector<double>& rhs) const;
    /// One-shot solve without keeping the factorization.
    static std::vector<double> solve_once(BandedMatrix a, const std::vector<double>& rhs);

    /// y = A x with the original (unfactored) coefficients.
    std::vector<double> apply(const std::vector<double>& x) const;

  private:
    std::size_t n_, kl_, ku_, ldab_;
    std::vector<double> ab_;       // band storage handed to LAPACK
    std::vector<double> ab_orig_;  // pristine copy for apply()
    std::vector<int> ipiv_;
    bool factored_ = false;
};

/// Tridiagonal solve via dgtsv (partial pivoting).
std::vector<double> solve_tridiagonal(std::vector<double> lower, std::vector<double> diag,
                                      std::vector<double> upper, std::vector<double> rhs);

}  // namespace blowuplab
