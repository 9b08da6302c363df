#include "doctest.h"

#include "strictq/certify.hpp"
#include "strictq/unimodality.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>

using namespace strictq;
using nlohmann::json;

namespace {

const BaseRegistry& minimal_registry()
{
    static const BaseRegistry reg = BaseRegistry::build(BaseRecipe::Minimal);
    return reg;
}

CertificatePtr base(int ell, int m)
{
    return std::make_shared<const Certificate>(Certificate{{ell, m}, BaseNode{ell, m}, false});
}

Certificate add(int ell, int m1, int m2, Witness even, Witness geq3)
{
    return Certificate{{ell, m1 + m2}, AddNode{ell, base(ell, m1), base(ell, m2), even, geq3}, false};
}

// Walks every Add node and checks the side conditions independently.
bool side_conditions_hold(const Certificate& cert)
{
    if (std::holds_alternative<BaseNode>(cert.node))
        return true;
    const auto& a = std::get<AddNode>(cert.node);
    const int ell = a.ell;
    const int m1 = a.left->conclusion.m;
    const int m2 = a.right->conclusion.m;
    if (a.left->conclusion.ell != ell || a.right->conclusion.ell != ell)
        return false;
    const bool ok = ell >= 2 && m1 >= 2 && m2 >= 2 && (ell >= 3 || m1 >= 3 || m2 >= 3) &&
                    (ell % 2 == 0 || m1 % 2 == 0 || m2 % 2 == 0);
    return ok && side_conditions_hold(*a.left) && side_conditions_hold(*a.right);
}

} // namespace

TEST_CASE("base region and registry membership")
{
    const auto& sup = default_registry();
    const auto& pap = minimal_registry();
    CHECK(sup.contains({8, 8}));
    CHECK(sup.contains({15, 8}));
    CHECK(sup.contains({5, 20}));
    CHECK(sup.contains({20, 5}));
    CHECK_FALSE(sup.contains({6, 7}));
    CHECK_FALSE(sup.contains({6, 6}));
    CHECK_FALSE(sup.contains({16, 8}));
    CHECK(sup.contains({5, 22}));
    CHECK(sup.contains({21, 6}));
    CHECK_FALSE(pap.contains({5, 22}));
    CHECK_FALSE(pap.contains({6, 21}));

    CHECK(in_base_region({6, 6}, BaseRecipe::Minimal));
    CHECK_FALSE(in_base_region({4, 10}, BaseRecipe::Minimal));
    CHECK_FALSE(in_base_region({5, 21}, BaseRecipe::Supplemented));

    // Every region pair is registered unless it is a known exception.
    for (const auto* reg : {&sup, &pap})
        for (int l = 1; l <= 25; ++l)
            for (int m = 1; m <= 25; ++m)
                CHECK(reg->contains({l, m}) == (in_base_region({l, m}, reg->recipe()) && !is_known_exception(l, m)));

    CHECK(pap.pairs().size() + 4 == sup.pairs().size());
    CHECK(sup.digest() != pap.digest());
    CHECK(sup.digest() == BaseRegistry::compute_digest(sup.recipe(), sup.pairs()));
    CHECK(sup.digest().size() == 16);
    CHECK_FALSE(sup.reverify().has_value());
}

TEST_CASE("registry restore and json")
{
    const auto& sup = default_registry();
    const auto back = BaseRegistry::from_json(json::parse(sup.to_json().dump()));
    CHECK(back.pairs() == sup.pairs());
    CHECK(back.digest() == sup.digest());

    CHECK_THROWS_AS(BaseRegistry::restore(BaseRecipe::Supplemented, sup.pairs(), "0000000000000000"), UsageError);
    auto extra = sup.pairs();
    extra.push_back({30, 30});
    CHECK_THROWS_AS(
        BaseRegistry::restore(BaseRecipe::Supplemented, extra, BaseRegistry::compute_digest(BaseRecipe::Supplemented, extra)),
        UsageError);
    CHECK_THROWS_AS(BaseRegistry::from_json(json{{"recipe", "minimal"}}), UsageError);
    CHECK_THROWS_AS(parse_base_recipe("nope"), UsageError);
}

TEST_CASE("registry disk cache")
{
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "strictq_test_cache";
    fs::remove_all(dir);
    setenv("STRICTQ_CACHE_DIR", dir.c_str(), 1);
    CHECK(registry_cache_dir() == dir);

    const auto built = load_or_build_registry(BaseRecipe::Minimal, true);
    const fs::path file = dir / "base_registry_minimal.json";
    REQUIRE(fs::exists(file));
    const auto loaded = load_or_build_registry(BaseRecipe::Minimal, true);
    CHECK(loaded.pairs() == built.pairs());
    CHECK(loaded.digest() == minimal_registry().digest());

    // Tampered content fails the digest check and is rebuilt.
    {
        auto j = json::parse(std::ifstream(file));
        j["pairs"].erase(0);
        std::ofstream(file) << j.dump();
    }
    const auto rebuilt = load_or_build_registry(BaseRecipe::Minimal, true);
    CHECK(rebuilt.pairs() == built.pairs());
    CHECK(json::parse(std::ifstream(file))["pairs"].size() == built.pairs().size());

    std::ofstream(file) << "{ not json";
    CHECK(load_or_build_registry(BaseRecipe::Minimal, true).digest() == built.digest());

    const auto uncached = load_or_build_registry(BaseRecipe::Supplemented, false);
    CHECK_FALSE(fs::exists(dir / "base_registry_supplemented.json"));
    CHECK(uncached.digest() == default_registry().digest());

    unsetenv("STRICTQ_CACHE_DIR");
    fs::remove_all(dir);
}

TEST_CASE("certify (8,24)")
{
    const auto cert = certify(8, 24, default_registry());
    CHECK(cert.conclusion == Pair{8, 24});
    CHECK_FALSE(cert.transposed);
    REQUIRE(std::holds_alternative<AddNode>(cert.node));
    const auto& root = std::get<AddNode>(cert.node);
    CHECK(root.ell == 8);
    CHECK(root.left->conclusion == Pair{8, 16});
    CHECK(root.right->conclusion == Pair{8, 8});
    CHECK(std::holds_alternative<BaseNode>(root.right->node));
    CHECK(root.even_witness == Witness::Ell);
    CHECK(root.geq3_witness == Witness::M1);
    CHECK(count_nodes(cert) == 5);
    CHECK(verify(cert).ok);
    CHECK(verify(cert, BaseRecipe::Minimal).ok);

    const std::string expected =
        R"({"conclusion":{"ell":8,"m":24},"node":{"add":{"ell":8,"left":{"add":{"ell":8,"left":{"base":{"ell":8,"m":8}},)"
        R"("right":{"base":{"ell":8,"m":8}},"even_witness":"ell","geq3_witness":"m1"}},"right":{"base":{"ell":8,"m":8}},)"
        R"("even_witness":"ell","geq3_witness":"m1"}},"transposed":false})";
    CHECK(certificate_to_json(cert).dump() == expected);
}

TEST_CASE("certify refusals")
{
    const auto& reg = default_registry();
    CHECK_THROWS_AS(certify(6, 6, reg), NotCertifiable);
    CHECK_THROWS_AS(certify(7, 6, reg), NotCertifiable);
    CHECK_THROWS_AS(certify(4, 30, reg), NotCertifiable);
    CHECK_THROWS_AS(certify(1, 30, reg), NotCertifiable);
    CHECK_THROWS_AS(certify(5, 22, minimal_registry()), NotCertifiable);
    CHECK_THROWS_AS(certify(21, 6, minimal_registry()), NotCertifiable);
    CHECK_THROWS_AS(certify(0, 6, reg), UsageError);
}

TEST_CASE("certify small rows and transposed leaves")
{
    const auto& reg = default_registry();
    const auto c = certify(5, 25, reg);
    CHECK(verify(c).ok);
    CHECK(side_conditions_hold(c));

    const auto t = certify(30, 20, reg);
    CHECK(t.conclusion == Pair{30, 20});
    CHECK(verify(t).ok);

    const auto u = certify(20, 30, reg);
    CHECK(verify(u).ok);
    CHECK(certificate_from_json(certificate_to_json(t)).conclusion == Pair{30, 20});
}

TEST_CASE("verify rejects bad certificates")
{
    const auto no_even = add(5, 5, 5, Witness::Ell, Witness::Ell);
    const auto r1 = verify(no_even);
    CHECK_FALSE(r1.ok);
    CHECK(r1.path == "$.add");

    const Certificate exc{{6, 6}, BaseNode{6, 6}, false};
    const auto r2 = verify(exc);
    CHECK_FALSE(r2.ok);
    CHECK(r2.path == "$.base");

    const Certificate outside{{30, 30}, BaseNode{30, 30}, false};
    CHECK_FALSE(verify(outside).ok);

    const Certificate gap{{5, 22}, BaseNode{5, 22}, false};
    CHECK(verify(gap).ok);
    CHECK_FALSE(verify(gap, BaseRecipe::Minimal).ok);

    // Witness naming a member that does not satisfy its condition.
    const auto wrong_witness = add(8, 8, 8, Witness::M1, Witness::Ell);
    CHECK(verify(add(8, 8, 8, Witness::Ell, Witness::M1)).ok);
    CHECK(verify(wrong_witness).ok == true); // m1 = 8 is even as well
    CHECK_FALSE(verify(add(5, 8, 5, Witness::M2, Witness::Ell)).ok);

    // Child rejection carries the child path.
    const Certificate nested{{8, 38}, AddNode{8, base(8, 8), base(8, 30), Witness::Ell, Witness::Ell}, false};
    const auto r3 = verify(nested);
    CHECK_FALSE(r3.ok);
    CHECK(r3.path == "$.add.right.base");

    // Conclusion disagreeing with its node.
    const Certificate mismatch{{8, 9}, BaseNode{8, 8}, false};
    CHECK_FALSE(verify(mismatch).ok);
}

TEST_CASE("certificate json")
{
    const auto cert = certify(11, 29, default_registry());
    const auto text = certificate_to_json(cert).dump();
    const auto back = certificate_from_json(json::parse(text));
    CHECK(certificate_to_json(back).dump() == text);
    CHECK(certificate_to_json(certify(11, 29, default_registry())).dump() == text);

    auto j = json::parse(text);
    j["node"]["add"]["left"] = json{{"base", {{"ell", "x"}, {"m", 3}}}};
    try {
        certificate_from_json(j);
        FAIL("accepted malformed certificate");
    } catch (const CertificateFormatError& e) {
        CHECK(e.path().rfind("$.node.add.left", 0) == 0);
    }
    CHECK_THROWS_AS(certificate_from_json(json::array()), CertificateFormatError);
    auto k = json::parse(text);
    k["node"]["add"]["even_witness"] = "m3";
    CHECK_THROWS_AS(certificate_from_json(k), CertificateFormatError);
    auto e = json::parse(text);
    e["extra"] = 1;
    CHECK_THROWS_AS(certificate_from_json(e), CertificateFormatError);

    CHECK(render_certificate(cert).find("(11,29)") != std::string::npos);
}

TEST_CASE("minimal base leaves exactly two gaps up to 100")
{
    std::set<Pair> gaps;
    for (int l = 5; l <= 100; ++l)
        for (int m = l; m <= 100; ++m) {
            if (is_known_exception(l, m))
                continue;
            try {
                const auto c = certify(l, m, minimal_registry());
                CHECK(verify(c, BaseRecipe::Minimal).ok);
            } catch (const NotCertifiable&) {
                gaps.insert({l, m});
            }
        }
    CHECK(gaps == std::set<Pair>{{5, 22}, {6, 21}});
}

TEST_CASE("supplemented base certifies every non-exception pair up to 100")
{
    for (int l = 5; l <= 100; ++l)
        for (int m = 5; m <= 100; ++m) {
            if (is_known_exception(l, m)) {
                CHECK_THROWS_AS(certify(l, m, default_registry()), NotCertifiable);
                continue;
            }
            const auto c = certify(l, m, default_registry());
            CHECK(c.conclusion == Pair{l, m});
            const auto v = verify(c);
            CHECK_MESSAGE(v.ok, l << "," << m << " " << v.path << " " << v.diagnostic);
            CHECK(side_conditions_hold(c));
        }
}

TEST_CASE("cross validation")
{
    for (Pair p : {Pair{8, 24}, Pair{11, 13}, Pair{5, 14}, Pair{6, 7}, Pair{3, 9}, Pair{40, 41}}) {
        const auto cv = cross_validate(p.ell, p.m, default_registry());
        CHECK(cv.agree());
    }
    const auto exc = cross_validate(5, 14, default_registry());
    CHECK(exc.certified == false);
    CHECK(exc.direct_strict == false);
    CHECK_FALSE(exc.refusal.empty());
    CHECK_THROWS_AS(cross_validate(61, 60, default_registry()), BoundExceeded);
}
