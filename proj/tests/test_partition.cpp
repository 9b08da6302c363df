#include "doctest.h"

#include "strictq/errors.hpp"
#include "strictq/partition.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

using namespace strictq;

namespace {

// Independent enumeration: every length-l vector with entries in [0, m],
// filtered for monotonicity and size.
std::set<std::vector<int>> brute_box(int rows, int cols, int k)
{
    std::set<std::vector<int>> out;
    std::vector<int> v(rows, 0);
    std::function<void(int)> rec = [&](int i) {
        if (i == rows) {
            int sum = 0;
            bool mono = true;
            for (int j = 0; j < rows; ++j) {
                sum += v[j];
                if (j > 0 && v[j] > v[j - 1])
                    mono = false;
            }
            if (mono && sum == k) {
                auto w = v;
                while (!w.empty() && w.back() == 0)
                    w.pop_back();
                out.insert(w);
            }
            return;
        }
        for (int x = 0; x <= cols; ++x) {
            v[i] = x;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

Partition random_partition(std::mt19937& rng, int max_len, int max_part)
{
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<int> part(1, max_part);
    std::vector<int> v(len(rng));
    for (int& x : v)
        x = part(rng);
    std::sort(v.begin(), v.end(), std::greater<>());
    return Partition(v);
}

} // namespace

TEST_CASE("partition construction and invariants")
{
    Partition p{4, 2, 1};
    CHECK(p.size() == 7);
    CHECK(p.length() == 3);
    CHECK(p[5] == 0);
    CHECK(Partition{}.size() == 0);
    CHECK(Partition::from_padded(std::vector<int>{3, 1, 0, 0}) == Partition{3, 1});
    CHECK_THROWS_AS(Partition({1, 2}), UsageError);
    CHECK_THROWS_AS(Partition({2, 0}), UsageError);
    CHECK(Partition{3, 1}.conjugate() == Partition{2, 1, 1});
}

TEST_CASE("textual syntax")
{
    CHECK(Partition::parse("[4,2,1]") == Partition{4, 2, 1});
    CHECK(Partition::parse(" [ 4, 2 ] ") == Partition{4, 2});
    CHECK(Partition::parse("[]").empty());
    CHECK(Partition{4, 2, 1}.to_string() == "[4,2,1]");
    CHECK(Partition{}.to_string() == "[]");
    CHECK_THROWS_AS(Partition::parse("4,2"), UsageError);
    CHECK_THROWS_AS(Partition::parse("[4,,2]"), UsageError);
    CHECK_THROWS_AS(Partition::parse("[4,x]"), UsageError);
    CHECK_THROWS_AS(Partition::parse("[1,2]"), UsageError);
}

TEST_CASE("rectangle")
{
    CHECK(rectangle(Box(2, 2)) == Partition{2, 2});
    CHECK(rectangle(Box(1, 5)) == Partition{5});
    CHECK(rectangle(Box(3, 2)) == Partition{2, 2, 2});
    CHECK_THROWS_AS(Box(0, 3), UsageError);
}

TEST_CASE("fits_in_box")
{
    CHECK(fits_in_box({2, 1}, Box(2, 2)));
    CHECK_FALSE(fits_in_box({3}, Box(2, 2)));
    CHECK_FALSE(fits_in_box({1, 1, 1}, Box(2, 2)));
    CHECK(fits_in_box({}, Box(1, 1)));
}

TEST_CASE("complement_in_box")
{
    CHECK(complement_in_box({1}, Box(2, 2)) == Partition{2, 1});
    CHECK(complement_in_box({2, 2}, Box(2, 2)).empty());
    CHECK(complement_in_box({3, 1}, Box(3, 4)) == Partition{4, 3, 1});
    CHECK_THROWS_AS(complement_in_box({3}, Box(2, 2)), UsageError);

    SUBCASE("involution and sizes, exhaustive up to 5x5")
    {
        for (int r = 1; r <= 5; ++r)
            for (int c = 1; c <= 5; ++c) {
                const Box box(r, c);
                for (int k = 0; k <= box.area(); ++k)
                    for (const auto& p : enumerate_in_box(box, k)) {
                        const Partition q = complement_in_box(p, box);
                        CHECK(q.size() + p.size() == box.area());
                        CHECK(complement_in_box(q, box) == p);
                    }
            }
    }
}

TEST_CASE("add")
{
    CHECK(add({2, 2}, {3, 3}) == Partition{5, 5});
    CHECK(add({4, 1}, {}) == Partition{4, 1});
    CHECK(add({3, 1}, {2, 2}) == Partition{5, 3});

    std::mt19937 rng(7);
    for (int i = 0; i < 300; ++i) {
        const Partition a = random_partition(rng, 5, 6);
        const Partition b = random_partition(rng, 5, 6);
        const Partition c = random_partition(rng, 5, 6);
        CHECK(add(a, b) == add(b, a));
        CHECK(add(add(a, b), c) == add(a, add(b, c)));
        CHECK(add(a, {}) == a);
        CHECK(add(a, b).size() == a.size() + b.size());
    }
}

TEST_CASE("enumerate_in_box")
{
    CHECK(enumerate_in_box(Box(2, 2), 2) == std::vector<Partition>{{2}, {1, 1}});
    CHECK(enumerate_in_box(Box(2, 2), 5).empty());
    CHECK(enumerate_in_box(Box(5, 6), 0) == std::vector<Partition>{Partition{}});

    SUBCASE("matches brute force, canonical decreasing order, no duplicates")
    {
        for (int r = 1; r <= 4; ++r)
            for (int c = 1; c <= 4; ++c)
                for (int k = 0; k <= r * c; ++k) {
                    const auto got = enumerate_in_box(Box(r, c), k);
                    std::set<std::vector<int>> seen;
                    for (const auto& p : got)
                        seen.insert(p.parts());
                    CHECK(seen.size() == got.size());
                    CHECK(seen == brute_box(r, c, k));
                    for (std::size_t i = 1; i < got.size(); ++i)
                        CHECK(got[i - 1] > got[i]);
                }
    }

    SUBCASE("conjugation and complement symmetry of counts up to 8x8")
    {
        for (int r = 1; r <= 8; ++r)
            for (int c = r; c <= 8; ++c)
                for (int k = 0; k <= r * c; ++k) {
                    const auto n = enumerate_in_box(Box(r, c), k).size();
                    CHECK(n == enumerate_in_box(Box(c, r), k).size());
                    CHECK(n == enumerate_in_box(Box(r, c), r * c - k).size());
                }
    }
}

TEST_CASE("partitions_of and two_row")
{
    CHECK(partitions_of(0).size() == 1);
    CHECK(partitions_of(5).size() == 7);
    CHECK(partitions_of(10).size() == 42);
    CHECK(partitions_of(4) == std::vector<Partition>{{4}, {3, 1}, {2, 2}, {2, 1, 1}, {1, 1, 1, 1}});
    CHECK(two_row(6, 2) == Partition{4, 2});
    CHECK(two_row(6, 0) == Partition{6});
    CHECK(two_row(0, 0).empty());
    CHECK_THROWS_AS(two_row(6, 4), UsageError);
}
