#include "strictq/repro.hpp"

#include "strictq/certify.hpp"
#include "strictq/errors.hpp"
#include "strictq/kronecker.hpp"
#include "strictq/parallel.hpp"
#include "strictq/unimodality.hpp"

#include <algorithm>
#include <mutex>
#include <set>

namespace strictq {

namespace {

std::string pair_text(int l, int m)
{
    return "(" + std::to_string(l) + "," + std::to_string(m) + ")";
}

ReproReport claim_exceptions(const ReproOptions& opts)
{
    ReproReport r;
    ClassifyOptions co;
    co.threads = opts.threads;
    auto entries = scan({5, 7}, {5, 20}, co);
    auto big = scan({8, 15}, {8, 15}, co);
    entries.insert(entries.end(), big.begin(), big.end());

    std::set<std::pair<int, int>> found;
    for (const auto& e : entries)
        if (e.cls != PairClass::Strict)
            found.insert({e.ell, e.m});
    const std::set<std::pair<int, int>> expected(known_exception_pairs().begin(), known_exception_pairs().end());
    for (auto p : found)
        if (!expected.count(p))
            r.failures.push_back("unexpected non-strict pair " + pair_text(p.first, p.second));
    for (auto p : expected)
        if (!found.count(p))
            r.failures.push_back("listed exception " + pair_text(p.first, p.second) + " is strict");

    nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
    for (auto [l, m] : found) {
        const auto rep = check_strict(l, m);
        const auto plateaus = rep.nontrivial_plateaus();
        const long mid = rep.n / 2;
        const bool middle_three = plateaus.size() == 1 && plateaus[0] == Plateau{mid - 1, mid + 1};
        if (!middle_three)
            r.failures.push_back(pair_text(l, m) + " does not fail exactly at the middle three indices");
        pairs.push_back({{"ell", l}, {"m", m}, {"plateau", {mid - 1, mid + 1}}, {"middle_three", middle_three}});
    }
    r.data["scanned"] = entries.size();
    r.data["exceptions"] = std::move(pairs);
    r.summary = std::to_string(found.size()) + " non-strict pairs among " + std::to_string(entries.size()) +
                " scanned";
    return r;
}

ReproReport claim_ell2(const ReproOptions& opts)
{
    ReproReport r;
    const int max_m = opts.max_n > 0 ? opts.max_n : 50;
    long checks = 0;
    for (int m = 1; m <= max_m; ++m) {
        const QPolynomial p = gaussian(2, m);
        const long n = 2L * m;
        for (long i = 0; 4 * i < n; ++i) {
            ++checks;
            if (coefficient(p, 2 * i) != coefficient(p, 2 * i + 1))
                r.failures.push_back("m=" + std::to_string(m) + ": p_" + std::to_string(2 * i) + " != p_" +
                                     std::to_string(2 * i + 1));
        }
    }
    r.data["max_m"] = max_m;
    r.data["equalities_checked"] = checks;
    r.summary = std::to_string(checks) + " equalities p_{2i}(2,m) = p_{2i+1}(2,m), m <= " + std::to_string(max_m);
    return r;
}

ReproReport claim_ell34(const ReproOptions& opts)
{
    ReproReport r;
    const int max_m = opts.max_n > 0 ? opts.max_n : 30;
    int count = 0;
    for (int ell : {3, 4})
        for (int m = 3; m <= max_m; ++m) {
            ++count;
            const auto rep = check_strict(ell, m);
            if (rep.strict || rep.nontrivial_plateaus().empty())
                r.failures.push_back(pair_text(ell, m) + " has no equality beyond the forced middle");
        }
    r.data["pairs"] = count;
    r.summary = std::to_string(count) + " pairs with l in {3,4}, 3 <= m <= " + std::to_string(max_m) +
                " are not strictly unimodal";
    return r;
}

ReproReport claim_lemma12(const ReproOptions& opts)
{
    ReproReport r;
    const int max_area = opts.max_n > 0 ? opts.max_n : 16;
    std::vector<std::pair<int, int>> boxes;
    for (int l = 1; l <= max_area; ++l)
        for (int m = 1; l * m <= max_area; ++m)
            boxes.push_back({l, m});
    const KroneckerOracle oracle(std::max(max_area, kDefaultOracleBound));
    std::vector<Lemma12Result> results(boxes.size());
    parallel_for(boxes.size(), opts.threads,
                 [&](std::size_t i) { results[i] = lemma12_check(boxes[i].first, boxes[i].second, oracle); });
    for (std::size_t i = 0; i < boxes.size(); ++i)
        if (!results[i].ok)
            r.failures.push_back(pair_text(boxes[i].first, boxes[i].second) + " fails at k=" +
                                 std::to_string(*results[i].offending_k) + ": oracle " +
                                 results[i].oracle_value.get_str() + " vs difference " +
                                 results[i].difference_value.get_str());
    r.data["max_area"] = max_area;
    r.data["boxes"] = boxes.size();
    r.summary = std::to_string(boxes.size()) + " boxes with l*m <= " + std::to_string(max_area);
    return r;
}

ReproReport claim_routes(const ReproOptions& opts)
{
    ReproReport r;
    const int max_n = opts.max_n > 0 ? opts.max_n : 10;
    const KroneckerOracle oracle(std::max(max_n, kDefaultOracleBound));
    struct Job {
        Partition lambda;
        int n;
    };
    std::vector<Job> jobs;
    for (int n = 1; n <= max_n; ++n)
        for (const auto& lam : partitions_of(n))
            jobs.push_back({lam, n});
    std::vector<std::vector<std::string>> bad(jobs.size());
    std::vector<long> counts(jobs.size(), 0);
    parallel_for(jobs.size(), opts.threads, [&](std::size_t i) {
        const auto& lam = jobs[i].lambda;
        const int n = jobs[i].n;
        for (const auto& mu : partitions_of(n))
            for (int k = 0; 2 * k <= n; ++k) {
                ++counts[i];
                const BigInt formula = g_two_row(lam, mu, k);
                const BigInt direct = oracle.g(lam, mu, two_row(n, k));
                if (formula != direct)
                    bad[i].push_back("g(" + lam.to_string() + "," + mu.to_string() + "," +
                                     two_row(n, k).to_string() + "): two-row " + formula.get_str() + ", oracle " +
                                     direct.get_str());
            }
    });
    long total = 0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        total += counts[i];
        r.failures.insert(r.failures.end(), bad[i].begin(), bad[i].end());
    }
    r.data["max_n"] = max_n;
    r.data["comparisons"] = total;
    r.summary = std::to_string(total) + " two-row values compared with the character oracle, n <= " +
                std::to_string(max_n);
    return r;
}

ReproReport claim_semigroup(const ReproOptions& opts)
{
    ReproReport r;
    SemigroupSpec spec;
    spec.samples = opts.samples;
    spec.seed = opts.seed;
    spec.max_n = opts.max_n > 0 ? opts.max_n : kDefaultOracleBound;
    const KroneckerOracle oracle(std::max(spec.max_n, kDefaultOracleBound));
    const SemigroupReport rep = semigroup_check(spec, oracle);
    for (const auto& v : rep.violations)
        r.failures.push_back("g(" + add(v.first.lambda, v.second.lambda).to_string() + "," +
                             add(v.first.mu, v.second.mu).to_string() + "," + add(v.first.nu, v.second.nu).to_string() +
                             ") = " + v.g_sum.get_str() + " from " + v.g_first.get_str() + " and " +
                             v.g_second.get_str());
    r.data["samples"] = rep.samples;
    r.data["seed"] = spec.seed;
    r.data["max_n"] = spec.max_n;
    r.data["violations"] = rep.violations.size();
    r.summary = std::to_string(rep.samples) + " paired triples, seed " + std::to_string(spec.seed) +
                ", summed size <= " + std::to_string(spec.max_n);
    return r;
}

ReproReport claim_certify_sweep(const ReproOptions& opts)
{
    ReproReport r;
    const int max_m = opts.max_n > 0 ? opts.max_n : 40;
    const BaseRegistry& registry = default_registry();
    std::vector<std::pair<int, int>> pairs;
    for (int l = 5; l <= max_m; ++l)
        for (int m = l; m <= max_m; ++m)
            pairs.push_back({l, m});
    std::vector<std::string> bad(pairs.size());
    parallel_for(pairs.size(), opts.threads, [&](std::size_t i) {
        const auto [l, m] = pairs[i];
        const CrossValidation cv = cross_validate(l, m, registry);
        const bool exception = is_known_exception(l, m);
        if (exception && (cv.certified || cv.direct_strict))
            bad[i] = pair_text(l, m) + ": exception pair was certified or is strict";
        else if (!exception && !(cv.certified && cv.verified && cv.direct_strict))
            bad[i] = pair_text(l, m) + ": certified=" + std::to_string(cv.certified) +
                     " verified=" + std::to_string(cv.verified) + " strict=" + std::to_string(cv.direct_strict) +
                     (cv.refusal.empty() ? "" : " (" + cv.refusal + ")");
    });
    for (auto& b : bad)
        if (!b.empty())
            r.failures.push_back(std::move(b));
    r.data["max"] = max_m;
    r.data["pairs"] = pairs.size();
    r.data["registry"] = std::string(to_string(registry.recipe()));
    r.summary = std::to_string(pairs.size()) + " pairs 5 <= l <= m <= " + std::to_string(max_m) +
                " cross-validated against direct computation";
    return r;
}

} // namespace

const std::vector<std::string>& repro_claims()
{
    static const std::vector<std::string> ids{"exceptions", "ell2",      "ell34",        "lemma12",
                                              "routes",     "semigroup", "certify-sweep"};
    return ids;
}

ReproReport repro(std::string_view claim, const ReproOptions& opts)
{
    ReproReport r;
    if (claim == "exceptions")
        r = claim_exceptions(opts);
    else if (claim == "ell2")
        r = claim_ell2(opts);
    else if (claim == "ell34")
        r = claim_ell34(opts);
    else if (claim == "lemma12")
        r = claim_lemma12(opts);
    else if (claim == "routes")
        r = claim_routes(opts);
    else if (claim == "semigroup")
        r = claim_semigroup(opts);
    else if (claim == "certify-sweep")
        r = claim_certify_sweep(opts);
    else
        throw UsageError("unknown claim id '" + std::string(claim) + "'");
    r.claim = std::string(claim);
    r.pass = r.failures.empty();
    return r;
}

} // namespace strictq
