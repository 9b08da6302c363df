#pragma once

#include "strictq/errors.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace strictq {

struct Pair {
    int ell;
    int m;
    Pair transposed() const noexcept { return {m, ell}; }
    friend bool operator==(const Pair&, const Pair&) = default;
    friend auto operator<=>(const Pair&, const Pair&) = default;
};

/// Which member of {l, m1, m2} discharges a side condition of an Add node.
enum class Witness { Ell, M1, M2 };
std::string_view to_string(Witness w);

struct Certificate;
using CertificatePtr = std::shared_ptr<const Certificate>;

/// Leaf: (ell, m) computed directly.
struct BaseNode {
    int ell;
    int m;
};

/// Additivity step: (ell, m1) and (ell, m2) give (ell, m1 + m2).
struct AddNode {
    int ell;
    CertificatePtr left;
    CertificatePtr right;
    Witness even_witness;
    Witness geq3_witness;
};

/// Derivation tree for strict unimodality of `conclusion`. When `transposed`
/// is set the root node concludes the transpose, and symmetry of the Gaussian
/// binomial carries it over.
struct Certificate {
    Pair conclusion;
    std::variant<BaseNode, AddNode> node;
    bool transposed = false;

    /// Pair concluded by the root node itself.
    Pair node_conclusion() const;
};

// --- base registry ---------------------------------------------------------

enum class BaseRecipe {
    /// {8..15}^2 and {5,6,7} x {5..20} minus exceptions, with transposes.
    Minimal,
    /// Minimal plus the pairs (5,22), (6,21) and transposes. Neither is reachable
    /// by Additivity steps from the minimal set, yet both are strict.
    Supplemented,
};

std::string_view to_string(BaseRecipe r);
BaseRecipe parse_base_recipe(std::string_view name);

/// Candidate region of a recipe, exceptions included (they fail re-checking).
bool in_base_region(Pair p, BaseRecipe recipe);

class BaseRegistry {
public:
    /// Verifies every candidate pair with check_strict; known exceptions must
    /// come out non-strict and are excluded. Any disagreement throws
    /// ConsistencyError naming the pair.
    static BaseRegistry build(BaseRecipe recipe = BaseRecipe::Supplemented, unsigned threads = 0);

    /// Rehydrates a registry from stored content. Rejects (UsageError) a digest
    /// mismatch or a pair outside the recipe region.
    static BaseRegistry restore(BaseRecipe recipe, std::vector<Pair> pairs, std::string_view digest);

    BaseRecipe recipe() const noexcept { return recipe_; }
    const std::vector<Pair>& pairs() const noexcept { return pairs_; }
    const std::string& digest() const noexcept { return digest_; }
    bool contains(Pair p) const;

    /// Re-runs check_strict on every entry; returns the first failing pair.
    std::optional<Pair> reverify(unsigned threads = 0) const;

    nlohmann::ordered_json to_json() const;
    static BaseRegistry from_json(const nlohmann::json& j);

    static std::string compute_digest(BaseRecipe recipe, const std::vector<Pair>& pairs);

private:
    BaseRegistry(BaseRecipe recipe, std::vector<Pair> pairs);

    BaseRecipe recipe_;
    std::vector<Pair> pairs_; // sorted
    std::string digest_;
};

/// Process-wide registry built in memory on first use.
const BaseRegistry& default_registry();

/// Cache directory: $STRICTQ_CACHE_DIR, else $XDG_CACHE_HOME/strictq, else
/// ~/.cache/strictq.
std::filesystem::path registry_cache_dir();

/// Loads the registry from the cache file when its digest checks out,
/// otherwise builds it and rewrites the cache. `use_cache = false` always
/// rebuilds and leaves the cache untouched.
BaseRegistry load_or_build_registry(BaseRecipe recipe, bool use_cache, unsigned threads = 0);

// --- certificates ----------------------------------------------------------

/// Refusal with a human-readable reason.
class NotCertifiable : public UsageError {
public:
    using UsageError::UsageError;
};

/// Derives (ell, m) from the registry. Rows with 8 <= l <= 15 step by 8,
/// rows 5..7 prefer 10 and fall back to other even bases; for min(l,m) >= 16
/// the larger side is held fixed and the leaves are transposed row chains.
Certificate certify(int ell, int m, const BaseRegistry& registry);

struct VerifyResult {
    bool ok = true;
    std::string path;       // location of the first rejected node
    std::string diagnostic; // empty when ok
};

/// Replays a certificate: Base leaves must lie in the recipe's region and are
/// recomputed directly, Add nodes must satisfy the Additivity side conditions
/// (all of l, m1, m2 >= 2, one >= 3, one even) and name valid witnesses.
VerifyResult verify(const Certificate& cert, BaseRecipe recipe = BaseRecipe::Supplemented);

/// Serialized form; field order is fixed so output is byte-stable.
nlohmann::ordered_json certificate_to_json(const Certificate& cert);

/// Parses exactly the certificate schema; malformed input throws
/// CertificateFormatError carrying the JSON path of the offending node.
Certificate certificate_from_json(const nlohmann::json& j);

class CertificateFormatError : public UsageError {
public:
    CertificateFormatError(std::string path, const std::string& what)
        : UsageError(path + ": " + what)
        , path_(std::move(path))
    {
    }
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// Indented human-readable rendering.
std::string render_certificate(const Certificate& cert);

std::size_t count_nodes(const Certificate& cert);

struct CrossValidation {
    bool certified = false;
    bool verified = false;
    bool direct_strict = false;
    std::string refusal; // set when certify refused
    bool agree() const noexcept { return (certified && verified) == direct_strict; }
};

/// Certify + verify versus direct computation. Guard: l*m <= 3600.
CrossValidation cross_validate(int ell, int m, const BaseRegistry& registry);

} // namespace strictq
