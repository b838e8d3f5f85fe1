#include "helpers.hpp"

#include "ubirk/entourage.hpp"
#include "ubirk/errors.hpp"
#include "ubirk/orbits.hpp"

#include "../oracles.hpp"

#include <doctest.h>

#include <sstream>

using namespace ubirk;

TEST_SUITE("group-actions")
{
    TEST_CASE("permutations and group files")
    {
        CHECK(parse_perm("perm 3: 2 0 1") == Perm{2, 0, 1});
        CHECK(format_perm({2, 0, 1}) == "perm 3: 2 0 1");
        CHECK_THROWS_AS(parse_perm("perm 3: 0 0 1"), ParseError);
        CHECK_THROWS_AS(parse_perm("perm 3: 0 1"), ParseError);
        CHECK_THROWS_AS(parse_perm("perm 2: 0 2"), ParseError);
        CHECK_THROWS_AS(parse_perm("perm x: 0"), ParseError);

        PermGroup g = parse_group("# Sym(3)\n\nperm 3: 1 0 2\nperm 3: 1 2 0\n");
        CHECK(g.degree() == 3);
        CHECK(g.generators().size() == 2);
        std::ostringstream out;
        write_group(out, g);
        CHECK(parse_group(out.str()).generators() == g.generators());
        CHECK_THROWS_AS(parse_group("perm 3: 0 1 2\nperm 2: 0 1\n"), ParseError);
        CHECK_THROWS_AS(parse_group("# nothing\n"), ParseError);

        CHECK_THROWS_AS(PermGroup(3, {}), InvalidArgument);
        CHECK_THROWS_AS(PermGroup(3, {{0, 0, 1}}), InvalidArgument);
        CHECK(compose_perms({1, 2, 0}, inverse_perm({1, 2, 0})) == identity_perm(3));
        CHECK(compose_perms({1, 0, 2}, {0, 2, 1}) == Perm{1, 2, 0});
        CHECK(load_group(data_path("sym4.grp")).degree() == 4);
    }

    TEST_CASE("orbit examples")
    {
        OrbitPartition t = orbits(trivial_group(3), PowerSpace{3, 1});
        CHECK(t.count() == 3);
        CHECK(orbits(symmetric_group(4), PowerSpace{4, 2}).count() == 2);
        CHECK(orbits(symmetric_group(4), PowerSpace{4, 5}).count() == 51);

        OrbitPartition p = orbits(PermGroup(4, {{1, 0, 2, 3}}));
        CHECK(p.orbitIndex == std::vector<std::uint32_t>{0, 0, 1, 2});
        CHECK(p.representatives == std::vector<std::uint32_t>{0, 2, 3});
    }

    TEST_CASE("backends agree and partitions are invariant")
    {
        std::mt19937 rng(23);
        for (int i = 0; i < 50; ++i) {
            std::size_t d = 1 + oracle::draw(rng, 5), n = 1 + oracle::draw(rng, 3);
            std::vector<Perm> gens;
            for (std::size_t k = 0; k <= oracle::draw(rng, 3); ++k)
                gens.push_back(oracle::random_perm(rng, d));
            PermGroup g(d, gens);
            PowerSpace space{d, n};
            PermGroup action = induced_action(g, space);
            OrbitPartition bfs = orbits(action, OrbitBackend::Bfs);
            OrbitPartition uf = orbits(action, OrbitBackend::UnionFind);
            CHECK(bfs == uf);
            for (const Perm& p : action.generators())
                for (std::size_t x = 0; x < bfs.space_size(); ++x)
                    CHECK(bfs.orbitIndex[p[x]] == bfs.orbitIndex[x]);
            CHECK(bfs.orbitIndex == oracle::orbit_ids(oracle::group_elements(gens, d), d, n));
        }
    }

    TEST_CASE("oligomorphicity profiles")
    {
        CHECK(oligo_profile(symmetric_group(4), 5) == std::vector<std::size_t>{1, 2, 5, 15, 51});
        CHECK(oligo_profile(trivial_group(2), 4) == std::vector<std::size_t>{2, 4, 8, 16});
        auto aut = oligo_profile(equivalence_automorphisms({0, 0, 1, 1}), 4);
        auto sym = oligo_profile(symmetric_group(4), 4);
        CHECK(aut[0] == 1);
        for (std::size_t n = 1; n < 4; ++n)
            CHECK(aut[n] > sym[n]);
        for (std::size_t n = 1; n <= 5; ++n)
            CHECK(oligo_profile(symmetric_group(3), 5)[n - 1] == oracle::partitions_at_most(n, 3));
        Caps caps;
        caps.spacePoints = 100;
        CHECK_THROWS_AS(oligo_profile(symmetric_group(4), 4, caps), CapExceeded);
    }

    TEST_CASE("equivalence automorphisms")
    {
        auto elements = oracle::group_elements(equivalence_automorphisms({0, 0, 1, 1}).generators(), 4);
        CHECK(elements.size() == 8);
        auto uneven = oracle::group_elements(equivalence_automorphisms({0, 1, 1, 2}).generators(), 4);
        CHECK(uneven.size() == 4);
    }

    TEST_CASE("entourage invariance")
    {
        PowerSpace space{3, 2};
        PermGroup action = induced_action(symmetric_group(3), space);
        CHECK_FALSE(invariance_check(action, SpaceEntourage::kernel(space, {0})));
        CHECK_FALSE(invariance_check(action, SpaceEntourage::kernel(space, {})));
        CHECK_FALSE(invariance_check(action, SpaceEntourage::diagonal(9)));

        // (0,0) ~ (1,0) only: swapping 0 and 2 moves the pair outside.
        SpaceEntourage odd(9, {{0, 3}, {3, 0}});
        auto v = invariance_check(action, odd);
        REQUIRE(v);
        CHECK(odd.contains(v->x, v->y));
        CHECK_FALSE(invariance_check(induced_action(trivial_group(3), space), odd));
        CHECK_THROWS_AS(SpaceEntourage(4, {{0, 4}}), InvalidArgument);
        CHECK_THROWS_AS(SpaceEntourage::kernel(space, {2}), InvalidArgument);
    }

    TEST_CASE("quotient entourages")
    {
        PowerSpace space{4, 2};
        PermGroup action = induced_action(symmetric_group(4), space);
        OrbitPartition part = orbits(action);
        QuotientEntourage full = quotient_entourage(part, SpaceEntourage::full(16));
        CHECK(std::all_of(full.related.begin(), full.related.end(), [](bool b) { return b; }));
        QuotientEntourage diag = quotient_entourage(part, SpaceEntourage::diagonal(16));
        for (std::size_t p = 0; p < part.count(); ++p)
            for (std::size_t q = 0; q < part.count(); ++q)
                CHECK(diag.contains(p, q) == (p == q));

        SpaceEntourage first = SpaceEntourage::kernel(space, {0});
        QuotientEntourage q = quotient_entourage(part, first);
        CHECK(q.reflexive);
        CHECK(q.symmetric);
        std::vector<bool> scan(part.count() * part.count(), false);
        for (std::size_t x = 0; x < 16; ++x)
            for (std::size_t y = 0; y < 16; ++y)
                if (x / 4 == y / 4)
                    scan[part.orbitIndex[x] * part.count() + part.orbitIndex[y]] = true;
        CHECK(q.related == scan);
    }

    TEST_CASE("openness of the orbit map")
    {
        PowerSpace space{3, 2};
        PermGroup trivialAction = induced_action(trivial_group(3), space);
        OrbitPartition discrete = orbits(trivialAction);
        CHECK(pi_open_check(trivialAction, discrete, SpaceEntourage::kernel(space, {1})).holds);

        PermGroup action = induced_action(symmetric_group(3), space);
        OrbitPartition part = orbits(action);
        OpennessReport r = pi_open_check(action, part, SpaceEntourage::diagonal(9));
        CHECK(r.holds);
        CHECK(r.pointsChecked == 9);
        CHECK(pi_open_check(action, part, SpaceEntourage::kernel(space, {0}), {4}).pointsChecked == 1);

        // A non-invariant relation breaks the identity somewhere.
        SpaceEntourage odd(9, {{0, 3}, {3, 0}, {0, 0}, {3, 3}});
        CHECK_FALSE(pi_open_check(action, part, odd).holds);
    }

    TEST_CASE("closed-orbit classes")
    {
        PowerSpace space{3, 2};
        PermGroup action = induced_action(PermGroup(3, {{1, 0, 2}}), space);
        OrbitPartition part = orbits(action);
        std::vector<SpaceEntourage> full{SpaceEntourage::kernel(space, {0, 1}),
                                         SpaceEntourage::kernel(space, {0}),
                                         SpaceEntourage::kernel(space, {1})};
        HausdorffClasses c = hausdorff_classes(part, full);
        CHECK(c.classCount == part.count());

        std::vector<SpaceEntourage> coarse{SpaceEntourage::kernel(space, {0})};
        HausdorffClasses k = hausdorff_classes(part, coarse);
        CHECK(k.classCount < part.count());
        // Orbits related through the first coordinate, closed transitively.
        QuotientEntourage q = quotient_entourage(part, coarse[0]);
        for (std::size_t p = 0; p < part.count(); ++p)
            for (std::size_t r = 0; r < part.count(); ++r)
                if (q.contains(p, r))
                    CHECK(k.classOfOrbit[p] == k.classOfOrbit[r]);

        PermGroup trivialAction = induced_action(trivial_group(2), PowerSpace{2, 2});
        HausdorffClasses d = hausdorff_classes(orbits(trivialAction),
                                               {SpaceEntourage::diagonal(4)});
        CHECK(d.classCount == 4);
        CHECK(hausdorff_classes(part, {}).classCount == 1);
    }

    TEST_CASE("precompactness probe")
    {
        ProbeReport sym = precompactness_probe(symmetric_group(4), {1, 2, 3, 4, 5});
        std::vector<std::size_t> counts;
        for (const auto& l : sym.levels)
            counts.push_back(l.orbitCount);
        CHECK(counts == std::vector<std::size_t>{1, 2, 5, 15, 51});
        CHECK_FALSE(sym.horizonReached);
        CHECK(sym.note.find("evidence at depth 5") != std::string::npos);

        ProbeReport triv = precompactness_probe(trivial_group(2), {1, 2, 3, 4, 5});
        CHECK(triv.levels.back().orbitCount == 32);
        CHECK(triv.levels[0].growth == 0.0);
        CHECK(triv.levels[3].growth == doctest::Approx(2.0));

        Caps caps;
        caps.spacePoints = 64;
        ProbeReport cut = precompactness_probe(symmetric_group(4), {1, 2, 3, 4}, caps);
        CHECK(cut.horizonReached);
        CHECK(cut.horizon == 4);
        CHECK(cut.levels.size() == 3);
    }
}
