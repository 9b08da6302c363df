#include "strictq/unimodality.hpp"

#include "strictq/certify.hpp"
#include "strictq/errors.hpp"
#include "strictq/parallel.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace strictq {

std::string_view to_string(PairClass c)
{
    switch (c) {
    case PairClass::StrictSmall: return "StrictSmall";
    case PairClass::Strict: return "Strict";
    case PairClass::Exception: return "Exception";
    case PairClass::EllTwo: return "EllTwo";
    case PairClass::EllThreeFour: return "EllThreeFour";
    case PairClass::Trivial: return "Trivial";
    }
    return "?";
}

const std::array<std::pair<int, int>, 9>& known_exception_pairs()
{
    static const std::array<std::pair<int, int>, 9> pairs{{
        {5, 6}, {5, 10}, {5, 14}, {6, 6}, {6, 7}, {6, 9}, {6, 11}, {6, 13}, {7, 10},
    }};
    return pairs;
}

bool is_known_exception(int ell, int m)
{
    const std::pair<int, int> key{std::min(ell, m), std::max(ell, m)};
    const auto& list = known_exception_pairs();
    return std::find(list.begin(), list.end(), key) != list.end();
}

std::vector<Plateau> UnimodalityReport::nontrivial_plateaus() const
{
    std::vector<Plateau> out;
    for (const auto& p : plateaus) {
        const bool forced_middle = (n % 2 == 1) && p.first == n / 2 && p.last == n / 2 + 1;
        if (!forced_middle)
            out.push_back(p);
    }
    return out;
}

UnimodalityReport check_strict(int ell, int m)
{
    if (ell < 1 || m < 1)
        throw UsageError("check_strict: ell and m must be positive");
    return check_strict(gaussian(ell, m), ell, m);
}

UnimodalityReport check_strict(const QPolynomial& poly, int ell, int m)
{
    UnimodalityReport r;
    r.ell = ell;
    r.m = m;
    r.n = static_cast<long>(ell) * m;
    if (poly.degree() != r.n)
        throw UsageError("check_strict: polynomial degree does not match l*m");
    const auto& p = poly.coeffs();
    const long n = r.n;

    for (long k = 1; k < n - 1;) {
        long end = k;
        while (end + 1 <= n - 1 && p[end + 1] == p[k])
            ++end;
        if (end > k)
            r.plateaus.push_back({k, end});
        k = end + 1;
    }

    const long lo = n / 2;
    const long hi = (n + 1) / 2;
    for (long k = 2; k <= lo && !r.first_violation; ++k)
        if (p[k - 1] >= p[k])
            r.first_violation = k;
    if (!r.first_violation && lo >= 1 && p[lo] != p[hi])
        r.first_violation = hi;
    for (long k = hi + 1; k <= n - 1 && !r.first_violation; ++k)
        if (p[k - 1] <= p[k])
            r.first_violation = k;

    r.strict = !r.first_violation && std::min(ell, m) > 1;
    return r;
}

PairClass classify_from_report(const UnimodalityReport& report)
{
    const int lo = std::min(report.ell, report.m);
    const int hi = std::max(report.ell, report.m);
    if (lo == 1)
        return PairClass::Trivial;
    PairClass expected;
    if (lo == 2 && hi == 2)
        expected = PairClass::StrictSmall;
    else if (lo == 2)
        expected = PairClass::EllTwo;
    else if (lo <= 4)
        expected = PairClass::EllThreeFour;
    else
        return report.strict ? PairClass::Strict : PairClass::Exception;

    // Small rows have a fixed verdict; a disagreement means broken arithmetic.
    const bool expect_strict = expected == PairClass::StrictSmall;
    if (report.strict != expect_strict)
        throw ConsistencyError("computed strictness of (" + std::to_string(report.ell) + "," +
                               std::to_string(report.m) + ") contradicts its class " +
                               std::string(to_string(expected)));
    return expected;
}

namespace {

PairClass classify_by_certificate(int ell, int m)
{
    const BaseRegistry& registry = default_registry();
    try {
        Certificate cert = certify(ell, m, registry);
        VerifyResult v = verify(cert, registry.recipe());
        if (v.ok)
            return PairClass::Strict;
    } catch (const NotCertifiable&) {
    }
    // No usable certificate: fall back to the coefficients.
    return classify_from_report(check_strict(ell, m));
}

} // namespace

PairClass classify(int ell, int m, const ClassifyOptions& opts)
{
    if (ell < 1 || m < 1)
        throw UsageError("classify: ell and m must be positive");
    const int lo = std::min(ell, m);
    const int hi = std::max(ell, m);
    const long area = static_cast<long>(ell) * m;
    if (lo == 1)
        return PairClass::Trivial;
    if (area <= opts.direct_budget)
        return classify_from_report(check_strict(ell, m));
    if (lo == 2)
        return hi == 2 ? PairClass::StrictSmall : PairClass::EllTwo;
    if (lo <= 4)
        return PairClass::EllThreeFour;
    return classify_by_certificate(ell, m);
}

std::vector<ScanEntry> scan(IntRange ell_range, IntRange m_range, const ClassifyOptions& opts)
{
    if (ell_range.lo > ell_range.hi || m_range.lo > m_range.hi)
        throw UsageError("scan: empty range");
    if (ell_range.lo < 1 || m_range.lo < 1)
        throw UsageError("scan: ranges must be positive");

    std::set<std::pair<int, int>> normalized;
    for (int l = ell_range.lo; l <= ell_range.hi; ++l)
        for (int m = m_range.lo; m <= m_range.hi; ++m)
            normalized.insert({std::min(l, m), std::max(l, m)});

    std::vector<ScanEntry> out;
    out.reserve(normalized.size());
    for (auto [l, m] : normalized)
        out.push_back({l, m, PairClass::Trivial});

    // Pairs inside the direct budget share one rolling Pascal table, grouped
    // by row; the rest are classified independently.
    std::map<int, std::vector<std::size_t>> by_row;
    std::vector<std::size_t> remote;
    int max_m = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (static_cast<long>(out[i].ell) * out[i].m <= opts.direct_budget) {
            by_row[out[i].ell].push_back(i);
            max_m = std::max(max_m, out[i].m);
        } else {
            remote.push_back(i);
        }
    }

    if (!by_row.empty()) {
        GaussianRows rows(max_m);
        for (const auto& [row, indices] : by_row) {
            while (rows.ell() < row)
                rows.advance();
            parallel_for(indices.size(), opts.threads, [&](std::size_t j) {
                ScanEntry& e = out[indices[j]];
                e.cls = classify_from_report(check_strict(rows.row()[e.m], e.ell, e.m));
            });
        }
    }
    parallel_for(remote.size(), opts.threads, [&](std::size_t j) {
        ScanEntry& e = out[remote[j]];
        e.cls = classify(e.ell, e.m, opts);
    });
    return out;
}

} // namespace strictq
