#include "strictq/certify.hpp"

#include "strictq/parallel.hpp"
#include "strictq/unimodality.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace strictq {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view to_string(Witness w)
{
    switch (w) {
    case Witness::Ell: return "ell";
    case Witness::M1: return "m1";
    case Witness::M2: return "m2";
    }
    return "?";
}

Pair Certificate::node_conclusion() const
{
    if (const auto* base = std::get_if<BaseNode>(&node))
        return {base->ell, base->m};
    const auto& add = std::get<AddNode>(node);
    return {add.ell, add.left->conclusion.m + add.right->conclusion.m};
}

// --- base region -----------------------------------------------------------

std::string_view to_string(BaseRecipe r)
{
    return r == BaseRecipe::Minimal ? "minimal" : "supplemented";
}

BaseRecipe parse_base_recipe(std::string_view name)
{
    if (name == "minimal")
        return BaseRecipe::Minimal;
    if (name == "supplemented")
        return BaseRecipe::Supplemented;
    throw UsageError("unknown base recipe '" + std::string(name) + "'");
}

bool in_base_region(Pair p, BaseRecipe recipe)
{
    const int lo = std::min(p.ell, p.m);
    const int hi = std::max(p.ell, p.m);
    if (lo >= 8 && hi <= 15)
        return true;
    if (lo >= 5 && lo <= 7 && hi <= 20)
        return true;
    if (recipe == BaseRecipe::Supplemented)
        return (lo == 5 && hi == 22) || (lo == 6 && hi == 21);
    return false;
}

namespace {

std::vector<Pair> region_pairs(BaseRecipe recipe)
{
    std::vector<Pair> out;
    for (int l = 1; l <= 22; ++l)
        for (int m = 1; m <= 22; ++m)
            if (in_base_region({l, m}, recipe))
                out.push_back({l, m});
    return out;
}

std::string pair_text(Pair p)
{
    return "(" + std::to_string(p.ell) + "," + std::to_string(p.m) + ")";
}

} // namespace

BaseRegistry::BaseRegistry(BaseRecipe recipe, std::vector<Pair> pairs)
    : recipe_(recipe)
    , pairs_(std::move(pairs))
{
    std::sort(pairs_.begin(), pairs_.end());
    pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
    digest_ = compute_digest(recipe_, pairs_);
}

std::string BaseRegistry::compute_digest(BaseRecipe recipe, const std::vector<Pair>& pairs)
{
    std::vector<Pair> sorted = pairs;
    std::sort(sorted.begin(), sorted.end());
    std::string canon(to_string(recipe));
    for (const auto& p : sorted)
        canon += ";" + std::to_string(p.ell) + "," + std::to_string(p.m);
    // FNV-1a, 64 bit.
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

BaseRegistry BaseRegistry::build(BaseRecipe recipe, unsigned threads)
{
    const std::vector<Pair> candidates = region_pairs(recipe);
    std::vector<char> keep(candidates.size(), 0);
    parallel_for(candidates.size(), threads, [&](std::size_t i) {
        const Pair p = candidates[i];
        const bool strict = check_strict(p.ell, p.m).strict;
        const bool exception = is_known_exception(p.ell, p.m);
        if (strict == exception)
            throw ConsistencyError("base registry: " + pair_text(p) +
                                   (exception ? " is listed as an exception but is strictly unimodal"
                                              : " is not strictly unimodal"));
        keep[i] = strict ? 1 : 0;
    });
    std::vector<Pair> pairs;
    for (std::size_t i = 0; i < candidates.size(); ++i)
        if (keep[i])
            pairs.push_back(candidates[i]);
    return BaseRegistry(recipe, std::move(pairs));
}

BaseRegistry BaseRegistry::restore(BaseRecipe recipe, std::vector<Pair> pairs, std::string_view digest)
{
    for (const auto& p : pairs)
        if (!in_base_region(p, recipe) || is_known_exception(p.ell, p.m))
            throw UsageError("registry entry " + pair_text(p) + " lies outside the " +
                             std::string(to_string(recipe)) + " base region");
    BaseRegistry reg(recipe, std::move(pairs));
    if (reg.digest_ != digest)
        throw UsageError("registry digest mismatch: stored " + std::string(digest) + ", computed " + reg.digest_);
    return reg;
}

bool BaseRegistry::contains(Pair p) const
{
    return std::binary_search(pairs_.begin(), pairs_.end(), p);
}

std::optional<Pair> BaseRegistry::reverify(unsigned threads) const
{
    std::vector<char> bad(pairs_.size(), 0);
    parallel_for(pairs_.size(), threads, [&](std::size_t i) {
        bad[i] = check_strict(pairs_[i].ell, pairs_[i].m).strict ? 0 : 1;
    });
    for (std::size_t i = 0; i < pairs_.size(); ++i)
        if (bad[i])
            return pairs_[i];
    return std::nullopt;
}

ordered_json BaseRegistry::to_json() const
{
    ordered_json j;
    j["recipe"] = std::string(to_string(recipe_));
    j["digest"] = digest_;
    ordered_json arr = ordered_json::array();
    for (const auto& p : pairs_)
        arr.push_back({p.ell, p.m});
    j["pairs"] = std::move(arr);
    return j;
}

BaseRegistry BaseRegistry::from_json(const json& j)
{
    try {
        const BaseRecipe recipe = parse_base_recipe(j.at("recipe").get<std::string>());
        std::vector<Pair> pairs;
        for (const auto& e : j.at("pairs"))
            pairs.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
        return restore(recipe, std::move(pairs), j.at("digest").get<std::string>());
    } catch (const json::exception& e) {
        throw UsageError(std::string("malformed registry document: ") + e.what());
    }
}

const BaseRegistry& default_registry()
{
    static const BaseRegistry registry = BaseRegistry::build(BaseRecipe::Supplemented);
    return registry;
}

// --- certify ---------------------------------------------------------------

namespace {

bool side_conditions_hold(int ell, int m1, int m2)
{
    const bool all_ge2 = ell >= 2 && m1 >= 2 && m2 >= 2;
    const bool some_ge3 = ell >= 3 || m1 >= 3 || m2 >= 3;
    const bool some_even = ell % 2 == 0 || m1 % 2 == 0 || m2 % 2 == 0;
    return all_ge2 && some_ge3 && some_even;
}

Witness even_witness(int ell, int m1)
{
    if (ell % 2 == 0)
        return Witness::Ell;
    return m1 % 2 == 0 ? Witness::M1 : Witness::M2;
}

Witness geq3_witness(int m1, int m2)
{
    if (m1 >= 3)
        return Witness::M1;
    return m2 >= 3 ? Witness::M2 : Witness::Ell;
}

// Plans derivations in a single row (fixed ell) by dynamic programming over m.
class Engine {
public:
    explicit Engine(const BaseRegistry& registry)
        : registry_(registry)
    {
    }

    // Certificate concluding (row, target) without a top-level transpose,
    // or nullptr when no derivation exists.
    CertificatePtr chain(int row, int target)
    {
        RowPlan& plan = plan_row(row, target);
        if (!plan.derivable(target))
            return nullptr;
        return build(row, target, plan);
    }

private:
    struct Step {
        enum Kind { None, Base, Transposed, Add } kind = None;
        int step = 0; // m2 for Add
    };

    struct RowPlan {
        int limit = 0;
        std::vector<Step> steps; // index m
        std::map<int, CertificatePtr> built;
        bool derivable(int m) const { return m >= 0 && m <= limit && steps[m].kind != Step::None; }
    };

    // Rows >= 16 have no base pairs beyond (row, 5..7); they also accept
    // (row, x), 8 <= x <= 15, as the transpose of the row-x chain to `row`.
    bool transposed_leaf_ok(int row, int x)
    {
        if (row < 16 || x < 8 || x > 15)
            return false;
        RowPlan& inner = plan_row(x, row);
        return inner.derivable(row);
    }

    static int default_step(int row) { return row >= 8 ? 8 : 10; }

    RowPlan& plan_row(int row, int limit)
    {
        RowPlan& plan = plans_[row];
        if (plan.limit >= limit && !plan.steps.empty())
            return plan;
        plan.limit = limit;
        plan.steps.assign(static_cast<std::size_t>(limit) + 1, Step{});
        plan.built.clear();

        std::vector<int> leaves;
        std::vector<Step::Kind> leaf_kind(static_cast<std::size_t>(limit) + 1, Step::None);
        for (int x = 2; x <= limit; ++x) {
            if (registry_.contains({row, x}))
                leaf_kind[x] = Step::Base;
            else if (transposed_leaf_ok(row, x))
                leaf_kind[x] = Step::Transposed;
            if (leaf_kind[x] != Step::None)
                leaves.push_back(x);
        }
        // Preference: the default step, then even leaves, then odd leaves.
        std::vector<int> prefs;
        const int ps = default_step(row);
        if (ps <= limit && leaf_kind[ps] != Step::None)
            prefs.push_back(ps);
        for (int parity : {0, 1})
            for (int x : leaves)
                if (x % 2 == parity && x != ps)
                    prefs.push_back(x);

        for (int m = 2; m <= limit; ++m) {
            if (leaf_kind[m] != Step::None) {
                plan.steps[m] = {leaf_kind[m], 0};
                continue;
            }
            for (int s : prefs) {
                const int m1 = m - s;
                if (m1 < 2 || plan.steps[m1].kind == Step::None)
                    continue;
                if (!side_conditions_hold(row, m1, s))
                    continue;
                plan.steps[m] = {Step::Add, s};
                break;
            }
        }
        return plan;
    }

    CertificatePtr build(int row, int m, RowPlan& plan)
    {
        if (auto it = plan.built.find(m); it != plan.built.end())
            return it->second;
        const Step st = plan.steps[m];
        CertificatePtr out;
        switch (st.kind) {
        case Step::Base:
            out = std::make_shared<const Certificate>(Certificate{{row, m}, BaseNode{row, m}, false});
            break;
        case Step::Transposed: {
            CertificatePtr inner = chain(m, row);
            out = std::make_shared<const Certificate>(Certificate{{row, m}, inner->node, true});
            break;
        }
        case Step::Add: {
            const int m1 = m - st.step;
            const int m2 = st.step;
            CertificatePtr left = build(row, m1, plans_[row]);
            CertificatePtr right = build(row, m2, plans_[row]);
            AddNode add{row, std::move(left), std::move(right), even_witness(row, m1),
                        geq3_witness(m1, m2)};
            out = std::make_shared<const Certificate>(Certificate{{row, m}, std::move(add), false});
            break;
        }
        case Step::None:
            return nullptr;
        }
        plans_[row].built.emplace(m, out);
        return out;
    }

    const BaseRegistry& registry_;
    std::map<int, RowPlan> plans_;
};

} // namespace

Certificate certify(int ell, int m, const BaseRegistry& registry)
{
    if (ell < 1 || m < 1)
        throw UsageError("certify: ell and m must be positive");
    const Pair asked{ell, m};
    const int lo = std::min(ell, m);
    const int hi = std::max(ell, m);
    if (lo == 1)
        throw NotCertifiable("certify " + pair_text(asked) + ": trivial pair (a side equals 1), all coefficients are 1");
    if (lo < 5)
        throw NotCertifiable("certify " + pair_text(asked) + ": small side " + std::to_string(lo) +
                             " < 5, strict unimodality fails for min(l,m) in {2,3,4} except (2,2)");
    if (is_known_exception(ell, m))
        throw NotCertifiable("certify " + pair_text(asked) +
                             ": exception pair, not strictly unimodal");

    Engine engine(registry);
    // Small side <= 15: grow the long side in row `lo`. Otherwise hold the long
    // side fixed and grow the short one.
    const int row = lo <= 15 ? lo : hi;
    const int target = lo <= 15 ? hi : lo;
    CertificatePtr root = engine.chain(row, target);
    if (!root)
        throw NotCertifiable("certify " + pair_text(asked) + ": no Additivity derivation from the " +
                             std::string(to_string(registry.recipe())) + " base registry");
    return Certificate{asked, root->node, root->node_conclusion() != asked};
}

// --- verify ----------------------------------------------------------------

namespace {

class Verifier {
public:
    explicit Verifier(BaseRecipe recipe)
        : recipe_(recipe)
    {
    }

    VerifyResult run(const Certificate& cert, const std::string& path)
    {
        const Pair concluded = cert.node_conclusion();
        const Pair expected = cert.transposed ? concluded.transposed() : concluded;
        if (expected != cert.conclusion)
            return fail(path, "conclusion " + pair_text(cert.conclusion) + " does not match node conclusion " +
                                  pair_text(concluded) + (cert.transposed ? " (transposed)" : ""));

        if (const auto* base = std::get_if<BaseNode>(&cert.node)) {
            const std::string here = path + ".base";
            const Pair p{base->ell, base->m};
            if (p.ell < 1 || p.m < 1)
                return fail(here, "non-positive base pair");
            if (!in_base_region(p, recipe_))
                return fail(here, "base " + pair_text(p) + " lies outside the registered base region");
            if (!base_strict(p))
                return fail(here, "base " + pair_text(p) + " fails direct re-verification (not strictly unimodal)");
            return {};
        }

        const auto& add = std::get<AddNode>(cert.node);
        const std::string here = path + ".add";
        if (!add.left || !add.right)
            return fail(here, "missing child");
        const Pair l = add.left->conclusion;
        const Pair r = add.right->conclusion;
        if (l.ell != add.ell || r.ell != add.ell)
            return fail(here, "children conclude " + pair_text(l) + " and " + pair_text(r) + ", expected ell = " +
                                  std::to_string(add.ell));
        const int ell = add.ell, m1 = l.m, m2 = r.m;
        auto member = [&](Witness w) { return w == Witness::Ell ? ell : (w == Witness::M1 ? m1 : m2); };
        if (ell < 2 || m1 < 2 || m2 < 2)
            return fail(here, "side condition: all of l, m1, m2 must be >= 2");
        if (!(ell % 2 == 0 || m1 % 2 == 0 || m2 % 2 == 0))
            return fail(here, "side condition: none of l=" + std::to_string(ell) + ", m1=" + std::to_string(m1) +
                                  ", m2=" + std::to_string(m2) + " is even");
        if (!(ell >= 3 || m1 >= 3 || m2 >= 3))
            return fail(here, "side condition: none of l, m1, m2 is >= 3");
        if (member(add.even_witness) % 2 != 0)
            return fail(here, "even_witness '" + std::string(to_string(add.even_witness)) + "' is odd");
        if (member(add.geq3_witness) < 3)
            return fail(here, "geq3_witness '" + std::string(to_string(add.geq3_witness)) + "' is < 3");

        if (VerifyResult v = run(*add.left, here + ".left"); !v.ok)
            return v;
        return run(*add.right, here + ".right");
    }

private:
    static VerifyResult fail(const std::string& path, std::string why) { return {false, path, std::move(why)}; }

    bool base_strict(Pair p)
    {
        const Pair key{std::min(p.ell, p.m), std::max(p.ell, p.m)};
        auto it = checked_.find(key);
        if (it == checked_.end())
            it = checked_.emplace(key, check_strict(key.ell, key.m).strict).first;
        return it->second;
    }

    BaseRecipe recipe_;
    std::map<Pair, bool> checked_;
};

} // namespace

VerifyResult verify(const Certificate& cert, BaseRecipe recipe)
{
    return Verifier(recipe).run(cert, "$");
}

// --- serialization ---------------------------------------------------------

namespace {

ordered_json node_to_json(const Certificate& cert);

ordered_json child_to_json(const Certificate& child)
{
    if (!child.transposed)
        return node_to_json(child);
    return certificate_to_json(child);
}

ordered_json node_to_json(const Certificate& cert)
{
    ordered_json j;
    if (const auto* base = std::get_if<BaseNode>(&cert.node)) {
        ordered_json b;
        b["ell"] = base->ell;
        b["m"] = base->m;
        j["base"] = std::move(b);
        return j;
    }
    const auto& add = std::get<AddNode>(cert.node);
    ordered_json a;
    a["ell"] = add.ell;
    a["left"] = child_to_json(*add.left);
    a["right"] = child_to_json(*add.right);
    a["even_witness"] = std::string(to_string(add.even_witness));
    a["geq3_witness"] = std::string(to_string(add.geq3_witness));
    j["add"] = std::move(a);
    return j;
}

void expect_keys(const json& j, const std::string& path, std::initializer_list<const char*> keys)
{
    if (!j.is_object())
        throw CertificateFormatError(path, "expected an object");
    if (j.size() != keys.size())
        throw CertificateFormatError(path, "unexpected set of fields");
    for (const char* k : keys)
        if (!j.contains(k))
            throw CertificateFormatError(path, std::string("missing field '") + k + "'");
}

int positive_int(const json& j, const std::string& path)
{
    if (!j.is_number_integer())
        throw CertificateFormatError(path, "expected an integer");
    const auto v = j.get<long long>();
    if (v < 1 || v > 1'000'000)
        throw CertificateFormatError(path, "integer out of range");
    return static_cast<int>(v);
}

Witness parse_witness(const json& j, const std::string& path)
{
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "ell")
            return Witness::Ell;
        if (s == "m1")
            return Witness::M1;
        if (s == "m2")
            return Witness::M2;
    }
    throw CertificateFormatError(path, "witness must be one of \"ell\", \"m1\", \"m2\"");
}

CertificatePtr parse_child(const json& j, const std::string& path);

std::variant<BaseNode, AddNode> parse_node(const json& j, const std::string& path)
{
    if (!j.is_object() || j.size() != 1)
        throw CertificateFormatError(path, "node must be an object with exactly one of 'base' or 'add'");
    if (j.contains("base")) {
        const std::string p = path + ".base";
        const json& b = j.at("base");
        expect_keys(b, p, {"ell", "m"});
        return BaseNode{positive_int(b.at("ell"), p + ".ell"), positive_int(b.at("m"), p + ".m")};
    }
    if (j.contains("add")) {
        const std::string p = path + ".add";
        const json& a = j.at("add");
        expect_keys(a, p, {"ell", "left", "right", "even_witness", "geq3_witness"});
        return AddNode{positive_int(a.at("ell"), p + ".ell"), parse_child(a.at("left"), p + ".left"),
                       parse_child(a.at("right"), p + ".right"),
                       parse_witness(a.at("even_witness"), p + ".even_witness"),
                       parse_witness(a.at("geq3_witness"), p + ".geq3_witness")};
    }
    throw CertificateFormatError(path, "node must be 'base' or 'add'");
}

Certificate parse_certificate(const json& j, const std::string& path)
{
    expect_keys(j, path, {"conclusion", "node", "transposed"});
    const json& c = j.at("conclusion");
    expect_keys(c, path + ".conclusion", {"ell", "m"});
    if (!j.at("transposed").is_boolean())
        throw CertificateFormatError(path + ".transposed", "expected a boolean");
    Certificate cert{{positive_int(c.at("ell"), path + ".conclusion.ell"), positive_int(c.at("m"), path + ".conclusion.m")},
                     parse_node(j.at("node"), path + ".node"), j.at("transposed").get<bool>()};
    return cert;
}

CertificatePtr parse_child(const json& j, const std::string& path)
{
    if (j.is_object() && j.contains("conclusion"))
        return std::make_shared<const Certificate>(parse_certificate(j, path));
    Certificate cert{{0, 0}, parse_node(j, path), false};
    cert.conclusion = cert.node_conclusion();
    return std::make_shared<const Certificate>(std::move(cert));
}

void render(const Certificate& cert, int depth, std::ostringstream& os)
{
    const std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
    os << indent << pair_text(cert.conclusion);
    if (cert.transposed)
        os << " by symmetry of " << pair_text(cert.node_conclusion());
    if (const auto* base = std::get_if<BaseNode>(&cert.node)) {
        os << " base " << pair_text({base->ell, base->m}) << "\n";
        return;
    }
    const auto& add = std::get<AddNode>(cert.node);
    os << " add [even: " << to_string(add.even_witness) << ", >=3: " << to_string(add.geq3_witness) << "]\n";
    render(*add.left, depth + 1, os);
    render(*add.right, depth + 1, os);
}

} // namespace

ordered_json certificate_to_json(const Certificate& cert)
{
    ordered_json j;
    ordered_json c;
    c["ell"] = cert.conclusion.ell;
    c["m"] = cert.conclusion.m;
    j["conclusion"] = std::move(c);
    j["node"] = node_to_json(cert);
    j["transposed"] = cert.transposed;
    return j;
}

Certificate certificate_from_json(const json& j)
{
    return parse_certificate(j, "$");
}

std::string render_certificate(const Certificate& cert)
{
    std::ostringstream os;
    render(cert, 0, os);
    return os.str();
}

std::size_t count_nodes(const Certificate& cert)
{
    if (std::holds_alternative<BaseNode>(cert.node))
        return 1;
    const auto& add = std::get<AddNode>(cert.node);
    return 1 + count_nodes(*add.left) + count_nodes(*add.right);
}

CrossValidation cross_validate(int ell, int m, const BaseRegistry& registry)
{
    if (ell < 1 || m < 1)
        throw UsageError("cross_validate: ell and m must be positive");
    if (static_cast<long>(ell) * m > 3600)
        throw BoundExceeded("cross_validate: l*m = " + std::to_string(static_cast<long>(ell) * m) +
                            " exceeds the direct-computation budget 3600");
    CrossValidation cv;
    try {
        const Certificate cert = certify(ell, m, registry);
        cv.certified = true;
        cv.verified = verify(cert, registry.recipe()).ok;
    } catch (const NotCertifiable& e) {
        cv.refusal = e.what();
    }
    cv.direct_strict = check_strict(ell, m).strict;
    return cv;
}

} // namespace strictq
