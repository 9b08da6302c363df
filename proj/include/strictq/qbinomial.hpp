#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <vector>

namespace strictq {

using BigInt = mpz_class;

/// Dense polynomial in q with arbitrary-precision coefficients; index is the
/// exponent. A Gaussian binomial has degree l*m and a palindromic vector.
class QPolynomial {
public:
    QPolynomial() = default;
    explicit QPolynomial(std::vector<BigInt> coeffs);

    const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

    friend bool operator==(const QPolynomial&, const QPolynomial&) = default;

private:
    std::vector<BigInt> coeffs_;
};

/// Coefficients p_0..p_{lm} of binom(l+m, m)_q via the q-Pascal recurrence
/// G(i,j) = G(i,j-1) + q^j G(i-1,j). l = 0 or m = 0 gives the constant 1.
QPolynomial gaussian(int ell, int m);

/// Independent route: counts partitions of every k inside the l x m box by
/// explicit enumeration. Rejects l*m > 64.
QPolynomial gaussian_by_enumeration(int ell, int m);

/// coeffs[k], or 0 outside [0, degree] (so p_{-1} = 0).
BigInt coefficient(const QPolynomial& p, long k);

/// d_k = coeffs[k] - coeffs[k-1] for k = 0..degree.
std::vector<BigInt> difference_profile(const QPolynomial& p);

/// Ordinary binomial C(n, k).
BigInt binomial(unsigned long n, unsigned long k);

/// Rolls the q-Pascal table one row at a time. After `advance()` returns,
/// `row()[j]` holds G(ell(), j) for j = 0..max_m. Only two rows are alive,
/// so scanning all l <= L costs O(L * max_m) polynomials of memory.
class GaussianRows {
public:
    explicit GaussianRows(int max_m);

    int ell() const noexcept { return ell_; }
    int max_m() const noexcept { return max_m_; }
    const std::vector<QPolynomial>& row() const noexcept { return row_; }

    void advance();

private:
    int max_m_;
    int ell_ = 0;
    std::vector<QPolynomial> row_;
};

} // namespace strictq
