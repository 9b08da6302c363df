#include "strictq/cli.hpp"

#include "strictq/certify.hpp"
#include "strictq/errors.hpp"
#include "strictq/kronecker.hpp"
#include "strictq/lr.hpp"
#include "strictq/qbinomial.hpp"
#include "strictq/repro.hpp"
#include "strictq/unimodality.hpp"

#include "CLI11.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <fstream>
#include <ostream>
#include <string>

namespace strictq {

using nlohmann::ordered_json;

namespace {

IntRange parse_range(const std::string& text)
{
    auto to_int = [&](std::string_view s) {
        int v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc() || p != s.data() + s.size())
            throw UsageError("malformed range '" + text + "': expected A..B or A");
        return v;
    };
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const int v = to_int(text);
        return {v, v};
    }
    return {to_int(std::string_view(text).substr(0, dots)), to_int(std::string_view(text).substr(dots + 2))};
}

ordered_json envelope(const std::string& command, ordered_json params, ordered_json result)
{
    ordered_json j;
    j["command"] = command;
    j["params"] = std::move(params);
    j["result"] = std::move(result);
    j["version"] = kVersion;
    return j;
}

ordered_json report_json(const UnimodalityReport& r)
{
    ordered_json plateaus = ordered_json::array();
    for (const auto& p : r.plateaus)
        plateaus.push_back({p.first, p.last});
    ordered_json j;
    j["ell"] = r.ell;
    j["m"] = r.m;
    j["n"] = r.n;
    j["strict"] = r.strict;
    j["plateaus"] = std::move(plateaus);
    j["first_violation"] = r.first_violation ? ordered_json(*r.first_violation) : ordered_json(nullptr);
    return j;
}

void print_report(std::ostream& out, const UnimodalityReport& r, PairClass cls)
{
    out << "pair (" << r.ell << "," << r.m << "), degree " << r.n << "\n";
    out << "strict: " << (r.strict ? "yes" : "no") << "\n";
    out << "class: " << to_string(cls) << "\n";
    if (r.first_violation)
        out << "first violation: k = " << *r.first_violation << "\n";
    for (const auto& p : r.plateaus) {
        out << "plateau: [" << p.first << "," << p.last << "]";
        const long mid = r.n / 2;
        if (r.n % 2 == 1 && p.first == mid && p.last == mid + 1)
            out << " (forced middle)";
        else if (p == Plateau{mid - 1, mid + 1})
            out << " (middle three)";
        out << "\n";
    }
}

struct Shared {
    std::string format = "plain";
    unsigned threads = 0;
};

void add_format(CLI::App* sub, Shared& s, std::vector<std::string> choices)
{
    sub->add_option("--format", s.format, "Output format")->check(CLI::IsMember(std::move(choices)));
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"strictq: Gaussian binomial coefficients, strict unimodality and its certificates"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    Shared s;
    app.add_option("--threads", s.threads, "Worker threads (0 = hardware concurrency)");

    int ell = 0, m = 0;
    bool diff = false;
    auto* expand = app.add_subcommand("expand", "Coefficients p_0..p_{lm} of binom(l+m, m)_q");
    expand->add_option("--ell", ell, "Rows l")->required()->check(CLI::NonNegativeNumber);
    expand->add_option("--m", m, "Columns m")->required()->check(CLI::NonNegativeNumber);
    expand->add_flag("--diff", diff, "Print the difference profile p_k - p_{k-1} instead");
    add_format(expand, s, {"plain", "csv", "json"});

    auto* check = app.add_subcommand("check", "Strict unimodality report for one pair");
    check->add_option("--ell", ell)->required()->check(CLI::PositiveNumber);
    check->add_option("--m", m)->required()->check(CLI::PositiveNumber);
    add_format(check, s, {"plain", "json"});

    std::string ell_range, m_range;
    long budget = ClassifyOptions{}.direct_budget;
    auto* scan_cmd = app.add_subcommand("scan", "Classify every pair of a range product");
    scan_cmd->add_option("--ell", ell_range, "Range A..B")->required();
    scan_cmd->add_option("--m", m_range, "Range C..D")->required();
    scan_cmd->add_option("--direct-budget", budget, "Largest l*m classified from coefficients");
    add_format(scan_cmd, s, {"plain", "csv", "json"});

    std::string outer, left, right;
    auto* lr_cmd = app.add_subcommand("lr", "Littlewood-Richardson coefficient");
    lr_cmd->add_option("--outer", outer)->required();
    lr_cmd->add_option("--left", left)->required();
    lr_cmd->add_option("--right", right)->required();
    add_format(lr_cmd, s, {"plain", "json"});

    std::string lambda, mu, nu;
    int k = -1;
    bool use_oracle = false;
    int max_n = 0;
    auto* kron = app.add_subcommand("kron", "Kronecker coefficient (two-row formula or character oracle)");
    kron->add_option("--lambda", lambda)->required();
    kron->add_option("--mu", mu)->required();
    auto* k_opt = kron->add_option("--k", k, "Two-row index, nu = (n-k, k)");
    auto* nu_opt = kron->add_option("--nu", nu);
    auto* oracle_flag = kron->add_flag("--oracle", use_oracle, "Use the character-table oracle");
    nu_opt->needs(oracle_flag);
    k_opt->excludes(nu_opt);
    kron->add_option("--max-n", max_n, "Oracle bound (default 18)");
    add_format(kron, s, {"plain", "json"});

    std::string suite;
    std::uint64_t seed = 0;
    int samples = 1000;
    auto* props = app.add_subcommand("props", "Property suites over the Kronecker routes");
    props->add_option("--suite", suite)->required()->check(CLI::IsMember({"lemma12", "semigroup", "routes"}));
    props->add_option("--max-n", max_n);
    props->add_option("--seed", seed);
    props->add_option("--samples", samples);
    add_format(props, s, {"plain", "json"});

    std::string out_file, in_file;
    bool minimal_base = false, no_cache = false;
    auto* cert_cmd = app.add_subcommand("certify", "Additivity derivation for one pair");
    cert_cmd->add_option("--ell", ell)->required()->check(CLI::PositiveNumber);
    cert_cmd->add_option("--m", m)->required()->check(CLI::PositiveNumber);
    cert_cmd->add_option("--out", out_file, "Write the certificate JSON to a file");
    cert_cmd->add_flag("--minimal-base", minimal_base, "Use the minimal base registry (no supplemented pairs)");
    cert_cmd->add_flag("--no-cache", no_cache, "Rebuild the base registry instead of reading the cache");
    add_format(cert_cmd, s, {"plain", "json"});

    auto* verify_cmd = app.add_subcommand("verify", "Replay a certificate file");
    verify_cmd->add_option("--in", in_file)->required();
    verify_cmd->add_flag("--minimal-base", minimal_base, "Accept only base leaves of the minimal registry");
    add_format(verify_cmd, s, {"plain", "json"});

    std::string claim;
    auto* repro_cmd = app.add_subcommand("repro", "Run a reproduction experiment");
    std::vector<std::string> claim_ids = repro_claims();
    claim_ids.push_back("all");
    repro_cmd->add_option("--claim", claim)->required()->check(CLI::IsMember(claim_ids));
    repro_cmd->add_option("--seed", seed);
    repro_cmd->add_option("--samples", samples);
    repro_cmd->add_option("--max-n", max_n, "Claim-specific bound override");
    add_format(repro_cmd, s, {"plain", "json"});

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    const bool json = s.format == "json";
    try {
        if (*expand) {
            const QPolynomial poly = gaussian(ell, m);
            std::vector<BigInt> values = diff ? difference_profile(poly) : poly.coeffs();
            if (json) {
                ordered_json j;
                j["ell"] = ell;
                j["m"] = m;
                ordered_json arr = ordered_json::array();
                for (const auto& c : values)
                    arr.push_back(c.get_str());
                j[diff ? "differences" : "coeffs"] = std::move(arr);
                out << j.dump() << "\n";
            } else {
                for (std::size_t i = 0; i < values.size(); ++i) {
                    if (s.format == "csv")
                        out << i << ",";
                    out << values[i].get_str() << "\n";
                }
            }
        } else if (*check) {
            const auto rep = check_strict(ell, m);
            const PairClass cls = classify_from_report(rep);
            if (json) {
                ordered_json result = report_json(rep);
                result["class"] = std::string(to_string(cls));
                out << envelope("check", {{"ell", ell}, {"m", m}}, std::move(result)).dump() << "\n";
            } else {
                print_report(out, rep, cls);
            }
        } else if (*scan_cmd) {
            ClassifyOptions co;
            co.threads = s.threads;
            co.direct_budget = budget;
            const auto entries = scan(parse_range(ell_range), parse_range(m_range), co);
            if (json) {
                ordered_json arr = ordered_json::array();
                for (const auto& e : entries)
                    arr.push_back({{"ell", e.ell}, {"m", e.m}, {"class", std::string(to_string(e.cls))}});
                out << envelope("scan", {{"ell", ell_range}, {"m", m_range}}, std::move(arr)).dump() << "\n";
            } else {
                if (s.format == "csv")
                    out << "ell,m,class\n";
                for (const auto& e : entries) {
                    if (s.format == "csv")
                        out << e.ell << "," << e.m << "," << to_string(e.cls) << "\n";
                    else
                        out << "(" << e.ell << "," << e.m << ") " << to_string(e.cls) << "\n";
                }
            }
        } else if (*lr_cmd) {
            const Partition o = Partition::parse(outer), a = Partition::parse(left), b = Partition::parse(right);
            const auto c = lr({o, a, b});
            if (json)
                out << envelope("lr", {{"outer", o.to_string()}, {"left", a.to_string()}, {"right", b.to_string()}},
                                {{"coefficient", c}})
                           .dump()
                    << "\n";
            else
                out << c << "\n";
        } else if (*kron) {
            const Partition lam = Partition::parse(lambda), muu = Partition::parse(mu);
            KroneckerValue v;
            if (use_oracle) {
                if (!*nu_opt && !*k_opt)
                    throw UsageError("kron --oracle needs --nu or --k");
                const Partition target = *nu_opt ? Partition::parse(nu) : two_row(lam.size(), k);
                const KroneckerOracle oracle(max_n > 0 ? max_n : kDefaultOracleBound);
                v = oracle.value(lam, muu, target);
            } else {
                if (!*k_opt)
                    throw UsageError("kron needs --k for the two-row formula, or --oracle with --nu");
                v = g_two_row_value(lam, muu, k);
            }
            if (json)
                out << envelope("kron", {{"lambda", lam.to_string()}, {"mu", muu.to_string()}},
                                {{"nu", v.nu.to_string()},
                                 {"value", v.value.get_str()},
                                 {"route", std::string(to_string(v.route))}})
                           .dump()
                    << "\n";
            else
                out << "g(" << v.lambda << "," << v.mu << "," << v.nu << ") = " << v.value.get_str() << "  ["
                    << to_string(v.route) << "]\n";
        } else if (*props || *repro_cmd) {
            ReproOptions ro;
            ro.seed = seed;
            ro.samples = samples;
            ro.threads = s.threads;
            ro.max_n = max_n;
            std::vector<std::string> ids;
            if (*props)
                ids = {suite};
            else if (claim == "all")
                ids = repro_claims();
            else
                ids = {claim};
            bool all_pass = true;
            ordered_json results = ordered_json::array();
            for (const auto& id : ids) {
                const ReproReport rep = repro(id, ro);
                all_pass = all_pass && rep.pass;
                if (json) {
                    results.push_back({{"claim", rep.claim},
                                       {"pass", rep.pass},
                                       {"summary", rep.summary},
                                       {"failures", rep.failures},
                                       {"data", rep.data}});
                } else {
                    out << (rep.pass ? "PASS" : "FAIL") << "  " << rep.claim << ": " << rep.summary << "\n";
                    if (rep.claim == "exceptions")
                        for (const auto& e : rep.data["exceptions"])
                            out << "      (" << e["ell"].get<int>() << "," << e["m"].get<int>() << ")\n";
                    for (const auto& f : rep.failures)
                        out << "      " << f << "\n";
                }
            }
            if (json)
                out << envelope(*props ? "props" : "repro",
                                {{"ids", ids}, {"seed", seed}, {"samples", samples}, {"max_n", max_n}},
                                std::move(results))
                           .dump()
                    << "\n";
            return all_pass ? 0 : 2;
        } else if (*cert_cmd) {
            const BaseRecipe recipe = minimal_base ? BaseRecipe::Minimal : BaseRecipe::Supplemented;
            const BaseRegistry registry = load_or_build_registry(recipe, !no_cache, s.threads);
            const Certificate cert = certify(ell, m, registry);
            const auto doc = certificate_to_json(cert);
            if (!out_file.empty()) {
                std::ofstream f(out_file);
                if (!f)
                    throw UsageError("cannot write '" + out_file + "'");
                f << doc.dump() << "\n";
            }
            if (json)
                out << doc.dump() << "\n";
            else
                out << render_certificate(cert) << count_nodes(cert) << " nodes, registry " << to_string(recipe)
                    << " " << registry.digest() << "\n";
        } else if (*verify_cmd) {
            std::ifstream f(in_file);
            if (!f)
                throw UsageError("cannot read '" + in_file + "'");
            nlohmann::json doc;
            try {
                doc = nlohmann::json::parse(f);
            } catch (const nlohmann::json::exception& e) {
                throw UsageError(std::string("certificate is not valid JSON: ") + e.what());
            }
            const Certificate cert = certificate_from_json(doc);
            const VerifyResult v = verify(cert, minimal_base ? BaseRecipe::Minimal : BaseRecipe::Supplemented);
            if (json)
                out << envelope("verify", {{"in", in_file}},
                                {{"accepted", v.ok},
                                 {"conclusion", {{"ell", cert.conclusion.ell}, {"m", cert.conclusion.m}}},
                                 {"path", v.path},
                                 {"diagnostic", v.diagnostic}})
                           .dump()
                    << "\n";
            else if (v.ok)
                out << "ACCEPTED (" << cert.conclusion.ell << "," << cert.conclusion.m << ")\n";
            else
                out << "REJECTED at " << v.path << ": " << v.diagnostic << "\n";
        }
    } catch (const ConsistencyError& e) {
        err << "internal consistency error: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace strictq
