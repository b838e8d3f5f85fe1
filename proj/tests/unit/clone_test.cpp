#include "helpers.hpp"

#include "ubirk/certificate.hpp"
#include "ubirk/errors.hpp"
#include "ubirk/natural_hom.hpp"

#include "../oracles.hpp"

#include <doctest.h>

using namespace ubirk;

namespace {

bool evaluates_to(const Term& t, const FiniteAlgebra& a, std::size_t n,
                  std::span<const Element> table)
{
    auto got = term_table(t, a, n);
    return std::equal(got.begin(), got.end(), table.begin(), table.end());
}

// f|_E = g|_E implies phi(f)|_F = phi(g)|_F, over all member pairs.
bool implication_by_pairs(const NaturalHom& hom, const CloneEntourage& e,
                          const CloneEntourage& f)
{
    const std::size_t m = hom.sourceLevel.size();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            bool agreeE = true, agreeF = true;
            for (const auto& t : e.support) {
                auto x = oracle::encode(t, hom.source->size());
                agreeE = agreeE && hom.sourceLevel.member(i)[x] == hom.sourceLevel.member(j)[x];
            }
            for (const auto& t : f.support) {
                auto x = oracle::encode(t, hom.target->size());
                agreeF = agreeF && hom.image(i)[x] == hom.image(j)[x];
            }
            if (agreeE && !agreeF)
                return false;
        }
    return true;
}

} // namespace

TEST_SUITE("clone")
{
    TEST_CASE("level sizes")
    {
        auto none = data_algebra("set2.alg");
        auto join = data_algebra("semilattice.alg");
        auto z2 = data_algebra("z2.alg");
        CHECK(clone_generate(none, 2).size() == 2);
        CHECK(clone_generate(join, 2).size() == 3);
        CHECK(clone_generate(join, 3).size() == 7);
        CHECK(clone_generate(z2, 3).size() == 8);
        CHECK(clone_generate(data_algebra("boolean_lattice.alg"), 3).size() == 18);
        CHECK_THROWS_AS(clone_generate(z2, 0), InvalidArgument);
    }

    TEST_CASE("level invariants")
    {
        for (const char* name : {"semilattice.alg", "z3.alg", "z4.alg", "chain3.alg"}) {
            auto a = data_algebra(name);
            for (std::size_t n = 1; n <= 2; ++n) {
                CloneLevel level = clone_generate(a, n);
                REQUIRE(level.complete());
                for (std::size_t i = 1; i <= n; ++i) {
                    auto p = level.find(projection_table(a->size(), n, i));
                    REQUIRE(p);
                    CHECK(*p == level.projection(i));
                    CHECK(level.witness(*p) == Term::var(i));
                }
                for (std::size_t i = 0; i < level.size(); ++i) {
                    CHECK(evaluates_to(level.witness(i), *a, n, level.member(i)));
                    if (i > 0)
                        CHECK(level.table(i - 1) < level.table(i));
                }
                CHECK_FALSE(check_composition_closed(level));
                auto expected = oracle::term_saturation(*a, n);
                CHECK(level.size() == expected.size());
            }
        }
    }

    TEST_CASE("caps leave an incomplete level")
    {
        Caps caps;
        caps.cloneMembers = 2;
        CloneLevel level = clone_generate(data_algebra("z3.alg"), 2, caps);
        CHECK_FALSE(level.complete());
        CHECK(level.size() == 2);
        CHECK_THROWS_AS(free_algebra(level), IncompleteLevel);

        Caps bytes;
        bytes.tableBytes = 16;
        CHECK_THROWS_AS(clone_generate(data_algebra("z3.alg"), 2, bytes), CapExceeded);
    }

    TEST_CASE("constants join every level")
    {
        FiniteAlgebra a(Signature({{"c", 0}, {"s", 1}}), 3, {{2}, {1, 2, 0}}, "C");
        CloneLevel level = clone_generate(share(a), 1);
        CHECK(level.size() == 6);
        auto constant = level.find(std::vector<Element>{2, 2, 2});
        REQUIRE(constant);
        CHECK(print_term(level.witness(*constant)) == "(c)");
    }

    TEST_CASE("free algebras")
    {
        FreeAlgebra f = free_algebra(data_algebra("semilattice.alg"), 2);
        REQUIRE(f.algebra.size() == 3);
        CHECK(f.generators.size() == 2);
        const FiniteAlgebra& l = f.algebra;
        for (Element x = 0; x < 3; ++x) {
            CHECK(l.apply(0, {x, x}) == x);
            for (Element y = 0; y < 3; ++y) {
                CHECK(l.apply(0, {x, y}) == l.apply(0, {y, x}));
                for (Element z = 0; z < 3; ++z)
                    CHECK(l.apply(0, {l.apply(0, {x, y}), z}) == l.apply(0, {x, l.apply(0, {y, z})}));
            }
        }
        CHECK(l.apply(0, {f.generators[0], f.generators[1]}) != f.generators[0]);

        FreeAlgebra z = free_algebra(data_algebra("z2.alg"), 1);
        CHECK(z.algebra.size() == 2);
        CloneLevel level = clone_generate(data_algebra("z2.alg"), 1);
        CHECK(z.generators == std::vector<Element>{static_cast<Element>(level.projection(1))});
    }

    TEST_CASE("natural homomorphisms")
    {
        auto z4 = data_algebra("z4.alg");
        auto z3 = data_algebra("z3.alg");
        auto z2 = data_algebra("z2.alg");

        auto self = natural_hom(z4, z4, 2);
        REQUIRE(std::holds_alternative<NaturalHom>(self));
        const NaturalHom& id = std::get<NaturalHom>(self);
        for (std::size_t i = 0; i < id.sourceLevel.size(); ++i)
            CHECK(id.graph[i] == i);

        auto mod2 = natural_hom(z4, z2, 1);
        REQUIRE(std::holds_alternative<NaturalHom>(mod2));
        CHECK_FALSE(check_clone_hom_laws(std::get<NaturalHom>(mod2)));

        auto fails = natural_hom(z4, z3, 1);
        REQUIRE(std::holds_alternative<IdentityCounterexample>(fails));
        const auto& c = std::get<IdentityCounterexample>(fails);
        CHECK(term_table(c.left, *z4, 1) == term_table(c.right, *z4, 1));
        CHECK(term_table(c.left, *z3, 1) != term_table(c.right, *z3, 1));

        CHECK_THROWS_AS(natural_hom(z4, data_algebra("semilattice.alg"), 1), SignatureMismatch);
        Caps caps;
        caps.cloneMembers = 2;
        CHECK_THROWS_AS(natural_hom(z4, z2, 2, caps), CapExceeded);
    }

    TEST_CASE("membership verdicts")
    {
        auto z4 = data_algebra("z4.alg");
        auto z2 = data_algebra("z2.alg");
        auto sub = share(restrict_to(*z4, std::vector<Element>{0, 2}).algebra);
        CHECK(hsp_membership(z4, sub).member);

        HspVerdict lattice =
            hsp_membership(data_algebra("boolean_lattice.alg"), data_algebra("chain3.alg"));
        REQUIRE(lattice.member);
        REQUIRE(lattice.evaluation);
        CHECK_FALSE(check_homomorphism(*lattice.evaluation));
        CHECK(is_surjective(lattice.evaluation->map, 3));

        HspVerdict no = hsp_membership(z2, z4);
        CHECK_FALSE(no.member);
        REQUIRE(no.counterexample);
        CHECK(term_table(no.counterexample->left, *z2, 1) ==
              term_table(no.counterexample->right, *z2, 1));
        CHECK(term_table(no.counterexample->left, *z4, 1) !=
              term_table(no.counterexample->right, *z4, 1));

        HspVerdict explicitGens = hsp_membership(z4, z2, std::vector<Element>{0, 1});
        CHECK(explicitGens.member);
        CHECK(explicitGens.generators == std::vector<Element>{0, 1});
        CHECK_THROWS_AS(hsp_membership(z4, z2, std::vector<Element>{0}), InvalidArgument);
    }

    TEST_CASE("uniform continuity witnesses")
    {
        auto z4 = data_algebra("z4.alg");
        auto z2 = data_algebra("z2.alg");
        const NaturalHom id = std::get<NaturalHom>(natural_hom(z4, z4, 1));
        CloneEntourage f{1, {{3}}};
        CloneEntourage e = uc_witness(id, f);
        CHECK(implication_by_pairs(id, e, f));
        CHECK(uc_implication_holds(id, f, f));
        CHECK(e.support.size() == 1);

        const NaturalHom mod2 = std::get<NaturalHom>(natural_hom(z4, z2, 1));
        CloneEntourage one{1, {{1}}};
        CloneEntourage w = uc_witness(mod2, one);
        CHECK(w.support.size() == 1);
        CHECK(implication_by_pairs(mod2, w, one));

        const NaturalHom pairs = std::get<NaturalHom>(natural_hom(z4, z2, 2));
        for (Element x = 0; x < 2; ++x)
            for (Element y = 0; y < 2; ++y) {
                CloneEntourage g{2, {{x, y}}};
                CloneEntourage v = uc_witness(pairs, g);
                CHECK_FALSE(v.support.empty());
                CHECK(implication_by_pairs(pairs, v, g));
                CHECK(uc_implication_holds(pairs, v, g));
            }
    }

    TEST_CASE("certificates")
    {
        auto z4 = data_algebra("z4.alg");
        auto z2 = data_algebra("z2.alg");

        auto selfResult = hspfin_certificate(z4, z4, {2});
        REQUIRE(std::holds_alternative<HspFinCertificate>(selfResult));
        const auto& self = std::get<HspFinCertificate>(selfResult);
        CHECK(self.support.size() == 1);
        CHECK(self.domain.size() == 4);
        Homomorphism h = certificate_homomorphism(self);
        CHECK_FALSE(check_homomorphism(h));
        CHECK(h.map.size() == self.domain.size());
        CHECK(h.target->size() == 2);
        CHECK(is_surjective(h.map, h.target->size()));

        auto modResult = hspfin_certificate(z4, z2, {1});
        REQUIRE(std::holds_alternative<HspFinCertificate>(modResult));
        const auto& mod = std::get<HspFinCertificate>(modResult);
        CHECK(mod.support.size() <= 4);
        VerifyReport ok = verify_certificate(mod);
        CHECK(ok.valid);
        CHECK(ok.checksRun > 0);

        auto fail = hspfin_certificate(z2, z4, {1});
        REQUIRE(std::holds_alternative<CertificateFailure>(fail));
        CHECK(std::get<CertificateFailure>(fail).counterexample.has_value());
    }

    TEST_CASE("certificate mutations and text form")
    {
        auto bl = data_algebra("boolean_lattice.alg");
        auto chain = data_algebra("chain3.alg");
        auto cert = std::get<HspFinCertificate>(hspfin_certificate(bl, chain, {0, 1, 2}));
        REQUIRE(verify_certificate(cert).valid);

        auto perturbed = cert;
        perturbed.map[0].second = (perturbed.map[0].second + 1) % 3;
        CHECK_FALSE(verify_certificate(perturbed).valid);

        auto missing = cert;
        missing.domain.pop_back();
        VerifyReport r = verify_certificate(missing);
        CHECK_FALSE(r.valid);
        CHECK(r.violation.find("domain") != std::string::npos);

        std::string text = format_certificate(cert);
        auto back = parse_certificate(text);
        CHECK(back.domain == cert.domain);
        CHECK(back.map == cert.map);
        CHECK(*back.a == *cert.a);
        CHECK(format_certificate(back) == text);

        CHECK_THROWS_AS(parse_certificate("hspfin-certificate 2\n"), ParseError);
        std::string truncated = text.substr(0, text.size() / 2);
        CHECK_THROWS_AS(parse_certificate(truncated), ParseError);
    }
}
