#include "strictq/kronecker.hpp"

#include "strictq/errors.hpp"
#include "strictq/lr.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <string>

namespace strictq {

std::string_view to_string(KroneckerRoute r)
{
    return r == KroneckerRoute::TwoRowFormula ? "TwoRowFormula" : "CharacterOracle";
}

namespace {

struct VecHash {
    std::size_t operator()(const std::vector<int>& v) const noexcept
    {
        std::size_t h = 1469598103934665603ull;
        for (int x : v) {
            h ^= static_cast<std::size_t>(x + 1);
            h *= 1099511628211ull;
        }
        return h;
    }
};

// Memoized Murnaghan-Nakayama. The cycle type is consumed from its largest
// part, so the memo key is (remaining shape, remaining suffix of the cycle
// type) and suffixes are shared between classes.
class MNEvaluator {
public:
    std::int64_t eval(const std::vector<int>& shape, const std::vector<int>& cycle, std::size_t pos)
    {
        if (pos == cycle.size())
            return shape.empty() ? 1 : 0;
        std::vector<int> key = shape;
        key.push_back(-1);
        key.insert(key.end(), cycle.begin() + static_cast<long>(pos), cycle.end());
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;

        const int h = cycle[pos];
        const int len = static_cast<int>(shape.size());
        std::vector<int> beta(len);
        for (int i = 0; i < len; ++i)
            beta[i] = shape[i] + (len - 1 - i);

        std::int64_t total = 0;
        for (int i = 0; i < len; ++i) {
            const int target = beta[i] - h;
            if (target < 0 || std::find(beta.begin(), beta.end(), target) != beta.end())
                continue;
            // Height of the removed border strip = beads jumped over.
            int between = 0;
            for (int b : beta)
                if (b > target && b < beta[i])
                    ++between;
            std::vector<int> next = beta;
            next[i] = target;
            std::sort(next.begin(), next.end(), std::greater<>());
            std::vector<int> rest;
            for (int j = 0; j < len; ++j) {
                const int part = next[j] - (len - 1 - j);
                if (part > 0)
                    rest.push_back(part);
            }
            const std::int64_t sub = eval(rest, cycle, pos + 1);
            total += (between % 2 == 0) ? sub : -sub;
        }
        memo_.emplace(std::move(key), total);
        return total;
    }

private:
    std::unordered_map<std::vector<int>, std::int64_t, VecHash> memo_;
};

BigInt factorial(int n)
{
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

} // namespace

std::int64_t murnaghan_nakayama(const Partition& shape, const Partition& cycle_type)
{
    if (shape.size() != cycle_type.size())
        throw UsageError("murnaghan_nakayama: shape and cycle type have different sizes");
    MNEvaluator mn;
    return mn.eval(shape.parts(), cycle_type.parts(), 0);
}

BigInt centralizer_class_size(const Partition& cycle_type)
{
    // z_rho = prod_i i^{m_i} m_i!
    BigInt z = 1;
    std::map<int, int> mult;
    for (int part : cycle_type.parts())
        ++mult[part];
    for (auto [part, count] : mult) {
        BigInt pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(part), static_cast<unsigned long>(count));
        z *= pw * factorial(count);
    }
    return factorial(cycle_type.size()) / z;
}

CharacterTable::CharacterTable(int n)
    : n_(n)
    , partitions_(partitions_of(n))
    , order_(factorial(n))
{
    if (n < 0)
        throw UsageError("character table: n must be non-negative");
    for (std::size_t i = 0; i < partitions_.size(); ++i)
        index_.emplace(partitions_[i], i);
    MNEvaluator mn;
    values_.assign(partitions_.size(), std::vector<std::int64_t>(partitions_.size()));
    for (std::size_t c = 0; c < partitions_.size(); ++c) {
        class_sizes_.push_back(centralizer_class_size(partitions_[c]));
        for (std::size_t r = 0; r < partitions_.size(); ++r)
            values_[r][c] = mn.eval(partitions_[r].parts(), partitions_[c].parts(), 0);
    }
}

std::size_t CharacterTable::index_of(const Partition& p) const
{
    auto it = index_.find(p);
    if (it == index_.end())
        throw UsageError("partition " + p.to_string() + " is not a partition of " + std::to_string(n_));
    return it->second;
}

std::int64_t CharacterTable::value(const Partition& irrep, const Partition& cycle_type) const
{
    return values_[index_of(irrep)][index_of(cycle_type)];
}

struct KroneckerOracle::Cache {
    std::mutex mutex;
    std::map<int, std::shared_ptr<const CharacterTable>> tables;
};

KroneckerOracle::KroneckerOracle(int bound)
    : bound_(bound)
    , cache_(std::make_shared<Cache>())
{
}

std::shared_ptr<const CharacterTable> KroneckerOracle::table(int n) const
{
    if (n > bound_)
        throw BoundExceeded("oracle out of range: n = " + std::to_string(n) + " exceeds bound " +
                            std::to_string(bound_));
    std::lock_guard lock(cache_->mutex);
    auto& slot = cache_->tables[n];
    if (!slot)
        slot = std::make_shared<const CharacterTable>(n);
    return slot;
}

BigInt KroneckerOracle::g(const Partition& lambda, const Partition& mu, const Partition& nu) const
{
    const int n = lambda.size();
    if (mu.size() != n || nu.size() != n)
        throw UsageError("kronecker oracle: partitions must have the same size");
    const auto t = table(n);
    const std::size_t a = t->index_of(lambda);
    const std::size_t b = t->index_of(mu);
    const std::size_t c = t->index_of(nu);
    BigInt sum = 0;
    for (std::size_t cls = 0; cls < t->partitions().size(); ++cls) {
        const std::int64_t x = t->value(a, cls);
        const std::int64_t y = t->value(b, cls);
        const std::int64_t z = t->value(c, cls);
        if (x == 0 || y == 0 || z == 0)
            continue;
        BigInt term = t->class_size(cls);
        term *= static_cast<long>(x);
        term *= static_cast<long>(y);
        term *= static_cast<long>(z);
        sum += term;
    }
    BigInt quotient, remainder;
    mpz_tdiv_qr(quotient.get_mpz_t(), remainder.get_mpz_t(), sum.get_mpz_t(), t->group_order().get_mpz_t());
    if (remainder != 0)
        throw ConsistencyError("kronecker oracle: character sum for " + lambda.to_string() + "," +
                               mu.to_string() + "," + nu.to_string() + " is not divisible by n!");
    if (quotient < 0)
        throw ConsistencyError("kronecker oracle: negative multiplicity");
    return quotient;
}

KroneckerValue KroneckerOracle::value(const Partition& lambda, const Partition& mu, const Partition& nu) const
{
    return {lambda, mu, nu, g(lambda, mu, nu), KroneckerRoute::CharacterOracle};
}

const KroneckerOracle& default_oracle()
{
    static const KroneckerOracle oracle;
    return oracle;
}

BigInt a_k(const Partition& lambda, const Partition& mu, int k)
{
    const int n = lambda.size();
    if (mu.size() != n)
        throw UsageError("a_k: lambda and mu must have the same size");
    if (k < 0 || k > n)
        throw UsageError("a_k: k must lie in [0, n]");
    // alpha and beta both sit inside lambda and inside mu, else a factor is 0.
    std::vector<int> common(std::min(lambda.length(), mu.length()));
    for (std::size_t i = 0; i < common.size(); ++i)
        common[i] = std::min(lambda[i], mu[i]);
    const Partition meet = Partition::from_padded(common);
    if (meet.empty())
        return n == 0 ? 1 : 0;
    const Box box(static_cast<int>(meet.length()), meet[0]);

    const std::vector<Partition> alphas = enumerate_in_box(box, k);
    const std::vector<Partition> betas = enumerate_in_box(box, n - k);
    BigInt total = 0;
    for (const auto& alpha : alphas) {
        if (!contains(meet, alpha))
            continue;
        for (const auto& beta : betas) {
            if (!contains(meet, beta))
                continue;
            const std::int64_t x = lr({lambda, alpha, beta});
            if (x == 0)
                continue;
            const std::int64_t y = lr({mu, alpha, beta});
            total += BigInt(static_cast<long>(x)) * static_cast<long>(y);
        }
    }
    return total;
}

BigInt g_two_row(const Partition& lambda, const Partition& mu, int k)
{
    const int n = lambda.size();
    if (mu.size() != n)
        throw UsageError("g_two_row: lambda and mu must have the same size");
    if (k < 0 || 2 * k > n)
        throw UsageError("g_two_row: k must satisfy 0 <= k <= n/2 so that (n-k,k) is a partition");
    BigInt value = a_k(lambda, mu, k);
    if (k > 0)
        value -= a_k(lambda, mu, k - 1);
    if (value < 0)
        throw ConsistencyError("g_two_row: negative value for " + lambda.to_string() + "," +
                               mu.to_string() + ", k=" + std::to_string(k));
    return value;
}

KroneckerValue g_two_row_value(const Partition& lambda, const Partition& mu, int k)
{
    return {lambda, mu, two_row(lambda.size(), k), g_two_row(lambda, mu, k), KroneckerRoute::TwoRowFormula};
}

Lemma12Result lemma12_check(int ell, int m, const KroneckerOracle& oracle)
{
    if (ell < 1 || m < 1)
        throw UsageError("lemma12_check: ell and m must be positive");
    const int n = ell * m;
    if (n > oracle.bound())
        throw BoundExceeded("lemma12_check: l*m = " + std::to_string(n) + " exceeds the oracle bound " +
                            std::to_string(oracle.bound()));
    const Partition rect = rectangle(Box(ell, m));
    const QPolynomial poly = gaussian(ell, m);
    Lemma12Result result;
    for (int k = 0; 2 * k <= n; ++k) {
        const BigInt g = oracle.g(rect, rect, two_row(n, k));
        const BigInt diff = coefficient(poly, k) - coefficient(poly, k - 1);
        if (g != diff) {
            result.ok = false;
            result.offending_k = k;
            result.oracle_value = g;
            result.difference_value = diff;
            return result;
        }
    }
    return result;
}

SemigroupPairResult semigroup_check_pair(const Triple& first, const Triple& second, const KroneckerOracle& oracle)
{
    SemigroupPairResult r;
    r.g_first = oracle.g(first.lambda, first.mu, first.nu);
    r.g_second = oracle.g(second.lambda, second.mu, second.nu);
    if (r.g_first == 0 || r.g_second == 0)
        return r;
    r.applicable = true;
    r.g_sum = oracle.g(add(first.lambda, second.lambda), add(first.mu, second.mu), add(first.nu, second.nu));
    r.positivity_ok = r.g_sum > 0;
    r.manivel_ok = r.g_sum >= r.g_first && r.g_sum >= r.g_second;
    return r;
}

namespace {

Triple random_positive_triple(int n, std::mt19937_64& rng, const KroneckerOracle& oracle)
{
    const auto t = oracle.table(n);
    const auto& parts = t->partitions();
    std::uniform_int_distribution<std::size_t> pick(0, parts.size() - 1);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        Triple tr{parts[pick(rng)], parts[pick(rng)], parts[pick(rng)]};
        if (oracle.g(tr.lambda, tr.mu, tr.nu) > 0)
            return tr;
    }
    // g(lambda, lambda, (n)) = 1 always.
    const Partition& p = parts[pick(rng)];
    return {p, p, parts.front()};
}

} // namespace

SemigroupReport semigroup_check(const SemigroupSpec& spec, const KroneckerOracle& oracle)
{
    if (spec.max_n < 2)
        throw UsageError("semigroup_check: max_n must be at least 2");
    if (spec.max_n > oracle.bound())
        throw BoundExceeded("semigroup_check: max_n exceeds the oracle bound");
    std::mt19937_64 rng(spec.seed);
    SemigroupReport report;
    for (int s = 0; s < spec.samples; ++s) {
        std::uniform_int_distribution<int> first_size(1, spec.max_n - 1);
        const int n1 = first_size(rng);
        std::uniform_int_distribution<int> second_size(1, spec.max_n - n1);
        const int n2 = second_size(rng);
        Triple first = random_positive_triple(n1, rng, oracle);
        Triple second = random_positive_triple(n2, rng, oracle);
        SemigroupPairResult r = semigroup_check_pair(first, second, oracle);
        ++report.samples;
        if (!r.positivity_ok || !r.manivel_ok)
            report.violations.push_back({std::move(first), std::move(second), r.g_first, r.g_second, r.g_sum,
                                         !r.positivity_ok});
    }
    return report;
}

} // namespace strictq
