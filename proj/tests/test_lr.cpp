#include "doctest.h"

#include "strictq/errors.hpp"
#include "strictq/kronecker.hpp"
#include "strictq/lr.hpp"
#include "strictq/qbinomial.hpp"

#include <algorithm>
#include <functional>

using namespace strictq;

namespace {

Partition merge(const Partition& a, const Partition& b)
{
    std::vector<int> v = a.parts();
    v.insert(v.end(), b.parts().begin(), b.parts().end());
    std::sort(v.begin(), v.end(), std::greater<>());
    return Partition(v);
}

// c^lambda_{alpha beta} as the multiplicity of chi^alpha x chi^beta in the
// restriction of chi^lambda to S_k x S_{n-k}, from character tables only.
BigInt lr_by_characters(const Partition& lambda, const Partition& alpha, const Partition& beta)
{
    const int n = lambda.size(), k = alpha.size();
    if (beta.size() != n - k)
        return 0;
    const CharacterTable tn(n), tk(k), tr(n - k);
    BigInt sum = 0;
    for (std::size_t c1 = 0; c1 < tk.partitions().size(); ++c1)
        for (std::size_t c2 = 0; c2 < tr.partitions().size(); ++c2) {
            const Partition rho = merge(tk.partitions()[c1], tr.partitions()[c2]);
            BigInt term = tk.class_size(c1) * tr.class_size(c2);
            term *= static_cast<long>(tn.value(lambda, rho));
            term *= static_cast<long>(tk.value(alpha, tk.partitions()[c1]));
            term *= static_cast<long>(tr.value(beta, tr.partitions()[c2]));
            sum += term;
        }
    const BigInt order = tk.group_order() * tr.group_order();
    REQUIRE(sum % order == 0);
    return sum / order;
}

} // namespace

TEST_CASE("lr examples")
{
    CHECK(lr({{2, 2}, {1}, {2, 1}}) == 1);
    CHECK(lr({{2, 2}, {2}, {1, 1}}) == 0);
    CHECK(lr({{4, 2}, {2, 1}, {2, 1}}) == 1);
    CHECK(lr({{3, 2, 1}, {2, 1}, {2, 1}}) == 2);
    CHECK(lr({{3}, {1}, {1}}) == 0); // size mismatch
    CHECK(lr({{2, 1}, {3}, {}}) == 0); // alpha not inside lambda
    CHECK(lr({{2, 1}, {}, {2, 1}}) == 1);
    CHECK(lr({{}, {}, {}}) == 1);
}

TEST_CASE("lr guard")
{
    const Partition big = rectangle(Box(8, 8));
    CHECK_THROWS_AS(lr({big, {1}, {}}), BoundExceeded);
    CHECK(lr({big, rectangle(Box(4, 8)), rectangle(Box(4, 8))}, 64) == 1);
}

TEST_CASE("lr agrees with the character-restriction oracle, |lambda| <= 7")
{
    for (int n = 0; n <= 7; ++n)
        for (const auto& lambda : partitions_of(n))
            for (int k = 0; k <= n; ++k)
                for (const auto& alpha : partitions_of(k))
                    for (const auto& beta : partitions_of(n - k))
                        CHECK_MESSAGE(BigInt(static_cast<long>(lr({lambda, alpha, beta}))) ==
                                          lr_by_characters(lambda, alpha, beta),
                                      lambda << " " << alpha << " " << beta);
}

TEST_CASE("lr symmetry in alpha and beta, |lambda| <= 10")
{
    for (int n = 0; n <= 10; ++n)
        for (const auto& lambda : partitions_of(n))
            for (int k = 0; 2 * k <= n; ++k)
                for (const auto& alpha : partitions_of(k))
                    for (const auto& beta : partitions_of(n - k))
                        CHECK(lr({lambda, alpha, beta}) == lr({lambda, beta, alpha}));
}

TEST_CASE("lr_rectangle")
{
    CHECK(lr_rectangle(Box(2, 2), {1}, {2, 1}) == 1);
    CHECK(lr_rectangle(Box(2, 2), {1}, {1, 1, 1}) == 0);
    CHECK(lr_rectangle(Box(3, 3), {3, 1}, {3, 2}) == 1);
    CHECK(lr_rectangle(Box(2, 2), {3}, {1}) == 0);

    SUBCASE("agrees with general lr for boxes up to 4x4")
    {
        for (int r = 1; r <= 4; ++r)
            for (int c = 1; c <= 4; ++c) {
                const Box box(r, c);
                const Partition rect = rectangle(box);
                for (int k = 0; k <= box.area(); ++k)
                    for (const auto& alpha : partitions_of(k))
                        for (const auto& beta : partitions_of(box.area() - k))
                            CHECK(lr_rectangle(box, alpha, beta) == lr({rect, alpha, beta}));
            }
    }
}

TEST_CASE("sum of squared rectangle coefficients counts box partitions")
{
    for (int l = 1; l <= 5; ++l)
        for (int m = 1; m <= 5; ++m) {
            const Box box(l, m);
            const Partition rect = rectangle(box);
            const QPolynomial p = gaussian(l, m);
            for (int k = 0; k <= box.area(); ++k) {
                long sum = 0;
                for (const auto& alpha : enumerate_in_box(box, k))
                    for (const auto& beta : enumerate_in_box(box, box.area() - k)) {
                        const auto c = lr({rect, alpha, beta});
                        sum += c * c;
                    }
                CHECK(BigInt(sum) == coefficient(p, k));
            }
        }
}
