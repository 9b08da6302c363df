#include "strictq/qbinomial.hpp"

#include "strictq/errors.hpp"
#include "strictq/partition.hpp"

#include <string>

namespace strictq {

QPolynomial::QPolynomial(std::vector<BigInt> coeffs)
    : coeffs_(std::move(coeffs))
{
    if (coeffs_.empty())
        coeffs_.emplace_back(0);
}

GaussianRows::GaussianRows(int max_m)
    : max_m_(max_m)
    , row_(static_cast<std::size_t>(max_m) + 1, QPolynomial({BigInt(1)}))
{
    if (max_m < 0)
        throw UsageError("max_m must be non-negative");
}

void GaussianRows::advance()
{
    const int i = ell_ + 1;
    std::vector<QPolynomial> next;
    next.reserve(row_.size());
    next.emplace_back(std::vector<BigInt>{BigInt(1)});
    for (int j = 1; j <= max_m_; ++j) {
        // G(i,j) = G(i,j-1) + q^j G(i-1,j); degrees i(j-1) and (i-1)j + j.
        std::vector<BigInt> c(static_cast<std::size_t>(i) * j + 1);
        const auto& left = next.back().coeffs();
        for (std::size_t k = 0; k < left.size(); ++k)
            c[k] = left[k];
        const auto& up = row_[j].coeffs();
        for (std::size_t k = 0; k < up.size(); ++k)
            c[k + j] += up[k];
        next.emplace_back(std::move(c));
    }
    row_ = std::move(next);
    ell_ = i;
}

QPolynomial gaussian(int ell, int m)
{
    if (ell < 0 || m < 0)
        throw UsageError("gaussian: ell and m must be non-negative");
    if (ell == 0 || m == 0)
        return QPolynomial({BigInt(1)});
    GaussianRows table(m);
    for (int i = 0; i < ell; ++i)
        table.advance();
    return table.row()[m];
}

QPolynomial gaussian_by_enumeration(int ell, int m)
{
    if (ell < 0 || m < 0)
        throw UsageError("gaussian_by_enumeration: ell and m must be non-negative");
    if (static_cast<long long>(ell) * m > 64)
        throw BoundExceeded("gaussian_by_enumeration: l*m = " + std::to_string(ell * m) +
                            " exceeds the enumeration guard 64");
    if (ell == 0 || m == 0)
        return QPolynomial({BigInt(1)});
    const Box box(ell, m);
    std::vector<BigInt> c(static_cast<std::size_t>(box.area()) + 1);
    for (int k = 0; k <= box.area(); ++k)
        c[k] = static_cast<unsigned long>(enumerate_in_box(box, k).size());
    return QPolynomial(std::move(c));
}

BigInt coefficient(const QPolynomial& p, long k)
{
    if (k < 0 || k > p.degree())
        return 0;
    return p.coeffs()[static_cast<std::size_t>(k)];
}

std::vector<BigInt> difference_profile(const QPolynomial& p)
{
    std::vector<BigInt> d;
    d.reserve(p.coeffs().size());
    for (long k = 0; k <= p.degree(); ++k)
        d.push_back(coefficient(p, k) - coefficient(p, k - 1));
    return d;
}

BigInt binomial(unsigned long n, unsigned long k)
{
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

} // namespace strictq
