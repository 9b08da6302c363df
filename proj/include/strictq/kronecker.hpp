#pragma once

#include "strictq/partition.hpp"
#include "strictq/qbinomial.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace strictq {

enum class KroneckerRoute { TwoRowFormula, CharacterOracle };
std::string_view to_string(KroneckerRoute r);

struct KroneckerValue {
    Partition lambda;
    Partition mu;
    Partition nu;
    BigInt value;
    KroneckerRoute route;
};

/// Integer character table of S_n. Rows (irreducibles) and columns (cycle
/// types) both use the canonical partition order of partitions_of(n).
class CharacterTable {
public:
    /// Murnaghan-Nakayama with memoization on (remaining shape, remaining
    /// cycle type).
    explicit CharacterTable(int n);

    int n() const noexcept { return n_; }
    const std::vector<Partition>& partitions() const noexcept { return partitions_; }
    std::size_t index_of(const Partition& p) const;

    std::int64_t value(const Partition& irrep, const Partition& cycle_type) const;
    std::int64_t value(std::size_t irrep, std::size_t cls) const { return values_[irrep][cls]; }
    const BigInt& class_size(std::size_t cls) const { return class_sizes_[cls]; }
    const BigInt& group_order() const noexcept { return order_; }

private:
    int n_;
    std::vector<Partition> partitions_;
    std::unordered_map<Partition, std::size_t, PartitionHash> index_;
    std::vector<std::vector<std::int64_t>> values_;
    std::vector<BigInt> class_sizes_;
    BigInt order_;
};

/// Character value by border-strip removal (no table, no memo across calls).
std::int64_t murnaghan_nakayama(const Partition& shape, const Partition& cycle_type);

/// n! / z_rho.
BigInt centralizer_class_size(const Partition& cycle_type);

inline constexpr int kDefaultOracleBound = 18;

/// Cache of character tables up to a size bound. Tables are built once per n
/// and shared read-only afterwards.
class KroneckerOracle {
public:
    explicit KroneckerOracle(int bound = kDefaultOracleBound);

    int bound() const noexcept { return bound_; }

    /// Throws BoundExceeded ("oracle out of range") for n > bound.
    std::shared_ptr<const CharacterTable> table(int n) const;

    /// (1/n!) sum_rho |C_rho| chi^lambda chi^mu chi^nu. A non-zero remainder or a
    /// negative result throws ConsistencyError.
    BigInt g(const Partition& lambda, const Partition& mu, const Partition& nu) const;

    KroneckerValue value(const Partition& lambda, const Partition& mu, const Partition& nu) const;

private:
    struct Cache;
    int bound_;
    std::shared_ptr<Cache> cache_;
};

/// Shared oracle with the default bound.
const KroneckerOracle& default_oracle();

/// sum over alpha |- k, beta |- n-k of c^lambda_{alpha beta} c^mu_{alpha beta}.
BigInt a_k(const Partition& lambda, const Partition& mu, int k);

/// g(lambda, mu, (n-k, k)) = a_k - a_{k-1}. Requires 0 <= k <= n/2. A negative
/// difference is impossible for a Kronecker coefficient and raises
/// ConsistencyError.
BigInt g_two_row(const Partition& lambda, const Partition& mu, int k);
KroneckerValue g_two_row_value(const Partition& lambda, const Partition& mu, int k);

struct Lemma12Result {
    bool ok = true;
    std::optional<int> offending_k;
    BigInt oracle_value;
    BigInt difference_value;
};

/// Checks g(m^l, m^l, (n-k, k)) = p_k(l,m) - p_{k-1}(l,m) for all 0 <= k <= n/2,
/// with g from the character oracle.
Lemma12Result lemma12_check(int ell, int m, const KroneckerOracle& oracle = default_oracle());

struct Triple {
    Partition lambda, mu, nu;
};

struct SemigroupSpec {
    int samples = 1000;
    std::uint64_t seed = 0;
    int max_n = kDefaultOracleBound; // bound on the summed size
};

struct SemigroupViolation {
    Triple first;
    Triple second;
    BigInt g_first;
    BigInt g_second;
    BigInt g_sum;
    bool positivity_failed; // g(sum) == 0
};

struct SemigroupReport {
    int samples = 0;
    std::vector<SemigroupViolation> violations;
};

/// Draws `samples` pairs of triples with positive oracle values (sizes n1, n2,
/// n1 + n2 <= max_n) and checks g(sum) > 0 and g(sum) >= max of the two.
SemigroupReport semigroup_check(const SemigroupSpec& spec,
                                const KroneckerOracle& oracle = default_oracle());

struct SemigroupPairResult {
    bool applicable = false; // both input values positive
    BigInt g_first;
    BigInt g_second;
    BigInt g_sum;
    bool positivity_ok = true;
    bool manivel_ok = true;
};

/// Evaluates g on both triples and on their part-wise sum.
SemigroupPairResult semigroup_check_pair(const Triple& first, const Triple& second,
                                         const KroneckerOracle& oracle = default_oracle());

} // namespace strictq
