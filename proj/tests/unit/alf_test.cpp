#include "helpers.hpp"

#include "ubirk/alf.hpp"
#include "ubirk/errors.hpp"

#include "../oracles.hpp"

#include <doctest.h>

using namespace ubirk;

namespace {

AlgebraPtr no_symbols(std::size_t size)
{
    return share(FiniteAlgebra(Signature(std::vector<Symbol>{}), size, {}, "set"));
}

} // namespace

TEST_SUITE("alf")
{
    TEST_CASE("unary group examples")
    {
        CHECK(unary_group(data_algebra("semilattice.alg")).elements == std::vector<Perm>{{0, 1}});
        CHECK(unary_group(share(cyclic(4))).elements == std::vector<Perm>{{0, 1, 2, 3}, {0, 3, 2, 1}});
        CHECK(unary_group(no_symbols(3)).elements == std::vector<Perm>{{0, 1, 2}});
        CHECK(unary_group(share(cyclic(5))).elements.size() == 4);
    }

    TEST_CASE("unary group is a group of members")
    {
        for (const char* name : {"z2.alg", "z3.alg", "z4.alg", "boolean_lattice.alg", "chain3.alg"}) {
            AlgebraPtr a = data_algebra(name);
            UnaryGroup g = unary_group(a);
            auto unary = oracle::term_saturation(*a, 1);
            std::set<Perm> elements(g.elements.begin(), g.elements.end());
            CHECK(elements.count(identity_perm(a->size())) == 1);
            for (const Perm& p : g.elements) {
                CHECK(is_permutation(p));
                CHECK(unary.count(p) == 1);
                CHECK(elements.count(inverse_perm(p)) == 1);
                for (const Perm& q : g.elements)
                    CHECK(elements.count(compose_perms(p, q)) == 1);
            }
            std::size_t expected = 0;
            for (const auto& t : unary)
                if (is_permutation(t) && unary.count(inverse_perm(t)))
                    ++expected;
            CHECK(g.elements.size() == expected);
        }
    }

    TEST_CASE("unary group needs a complete level")
    {
        Caps caps;
        caps.cloneMembers = 2;
        CHECK_THROWS_AS(unary_group(share(cyclic(4)), caps), IncompleteLevel);
    }

    TEST_CASE("local finiteness samples")
    {
        AlgebraPtr z4 = share(cyclic(4));
        auto samples = locally_finite_check(z4, {{2}, {1}, {2, 2}, {0, 2}});
        REQUIRE(samples.size() == 4);
        for (const auto& s : samples)
            CHECK(s.imageMatches);
        CHECK(samples[0].subalgebraSize == 2);
        CHECK(samples[1].subalgebraSize == 4);
        CHECK(samples[0].cloneSize == 4);
        CHECK(samples[3].subalgebraSize == 2);

        AlgebraPtr lat = data_algebra("boolean_lattice.alg");
        for (const auto& s : locally_finite_check(lat, sample_generator_tuples(lat->size(), 2))) {
            CHECK(s.imageMatches);
            CHECK(s.subalgebraSize == oracle::subuniverse(*lat, s.generators).size());
        }
    }

    TEST_CASE("orbit counts on clone levels")
    {
        AlfReport z4 = alf_orbit_counts(share(cyclic(4)), 2);
        REQUIRE(z4.arities.size() == 2);
        CHECK(z4.arities[0].cloneSize == 4);
        CHECK(z4.arities[0].orbitCount == 3);
        CHECK(z4.arities[1].cloneSize == 16);
        CHECK_FALSE(z4.assumption.empty());

        AlfReport semi = alf_orbit_counts(data_algebra("semilattice.alg"), 3);
        for (const auto& a : semi.arities)
            CHECK(a.orbitCount == a.cloneSize);
        CHECK(semi.arities[2].cloneSize == oracle::term_saturation(*data_algebra("semilattice.alg"), 3).size());

        Caps caps;
        caps.productSize = 8;
        CHECK_THROWS_AS(alf_orbit_counts(share(cyclic(4)), 2, 1, caps), CapExceeded);
    }

    TEST_CASE("orbits of a finitely generated power subalgebra")
    {
        AlgebraPtr z4 = share(cyclic(4));
        UnaryGroup g = unary_group(z4);
        FgOrbitResult r = fg_power_orbit_check(z4, g, 2, {{1, 2}});
        auto expected = oracle::power_subuniverse(*z4, {{1, 2}}, 2);
        CHECK(r.subalgebra.size() == expected.size());
        CHECK(std::set<std::vector<Element>>(r.subalgebra.begin(), r.subalgebra.end()) == expected);
        // (x,2x) and (3x,2x) share orbits in pairs except the fixed points.
        CHECK(r.orbitCount == 3);
        CHECK(r.representatives.front() == std::vector<Element>{0, 0});
        CHECK_THROWS_AS(fg_power_orbit_check(z4, g, 2, {{1}}), InvalidArgument);
    }

    TEST_CASE("oligomorphicity on generated subalgebras")
    {
        auto z4 = oligo_on_fg_subalgebras(share(cyclic(4)), 3);
        bool sawHalf = false;
        for (const auto& e : z4)
            if (e.subalgebra == std::vector<Element>{0, 2}) {
                sawHalf = true;
                CHECK(e.profile == std::vector<std::size_t>{2, 4, 8});
            }
        CHECK(sawHalf);

        AlgebraPtr semi = data_algebra("semilattice.alg");
        auto s = oligo_on_fg_subalgebras(semi, 3, 2);
        for (const auto& e : s)
            if (e.subalgebra.size() == 2)
                CHECK(e.profile == std::vector<std::size_t>{2, 4, 8});
    }

    TEST_CASE("canonical generator tuples")
    {
        auto t = sample_generator_tuples(2, 2);
        std::vector<std::vector<Element>> expected{{0}, {1}, {0, 0}, {0, 1}, {1, 0}, {1, 1}};
        CHECK(t == expected);
        CHECK(sample_generator_tuples(3, 1).size() == 3);
    }
}
