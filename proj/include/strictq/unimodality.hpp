#pragma once

#include "strictq/qbinomial.hpp"

#include <array>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace strictq {

/// Maximal run [first, last] (first < last) of equal coefficients inside 1..n-1.
struct Plateau {
    long first;
    long last;
    long length() const noexcept { return last - first + 1; }
    friend bool operator==(const Plateau&, const Plateau&) = default;
};

struct UnimodalityReport {
    int ell = 0;
    int m = 0;
    long n = 0;
    bool strict = false;
    std::vector<Plateau> plateaus;
    /// Smallest k >= 2 on the ascent with p_{k-1} >= p_k; otherwise the first
    /// failure of the middle equality or of the descent.
    std::optional<long> first_violation;

    /// Plateaus other than the forced middle pair of an odd degree.
    std::vector<Plateau> nontrivial_plateaus() const;
};

enum class PairClass { StrictSmall, Strict, Exception, EllTwo, EllThreeFour, Trivial };

std::string_view to_string(PairClass c);

/// The nine non-strict pairs with l <= m and both sides >= 5. Used to explain
/// refusals and to seed the base registry, never to answer classify().
const std::array<std::pair<int, int>, 9>& known_exception_pairs();
bool is_known_exception(int ell, int m);

/// Evaluates the strict-unimodality predicate
///   p_1 < ... < p_{floor(n/2)} = p_{ceil(n/2)} > ... > p_{n-1},  n = l*m.
/// Pairs with l = 1 or m = 1 are never reported strict.
UnimodalityReport check_strict(int ell, int m);
UnimodalityReport check_strict(const QPolynomial& poly, int ell, int m);

struct ClassifyOptions {
    /// Pairs with l*m up to this bound are classified from their coefficients;
    /// beyond it, min(l,m) >= 5 pairs go through a verified certificate.
    long direct_budget = 3600;
    unsigned threads = 0;
};

PairClass classify(int ell, int m, const ClassifyOptions& opts = {});

/// Class of a pair given its directly computed report.
PairClass classify_from_report(const UnimodalityReport& report);

struct IntRange {
    int lo;
    int hi;
};

struct ScanEntry {
    int ell;
    int m;
    PairClass cls;
    friend bool operator==(const ScanEntry&, const ScanEntry&) = default;
};

/// Classifies every pair of the Cartesian product, normalized to l <= m,
/// deduplicated and sorted by (l, m).
std::vector<ScanEntry> scan(IntRange ell_range, IntRange m_range, const ClassifyOptions& opts = {});

} // namespace strictq
