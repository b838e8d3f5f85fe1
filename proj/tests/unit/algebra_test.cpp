#include "helpers.hpp"

#include "ubirk/errors.hpp"
#include "ubirk/homomorphism.hpp"

#include "../corpus.hpp"
#include "../oracles.hpp"

#include <doctest.h>

#include <sstream>

using namespace ubirk;

namespace {

std::size_t parse_error_line(const std::string& text)
{
    try {
        parse_algebra(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

// Every map src -> dst, tried exhaustively.
bool has_surjective_hom_exhaustive(const FiniteAlgebra& src, const FiniteAlgebra& dst)
{
    const std::size_t maps = oracle::ipow(dst.size(), src.size());
    for (std::size_t m = 0; m < maps; ++m) {
        auto map = oracle::decode(m, dst.size(), src.size());
        if (!is_surjective(map, dst.size()))
            continue;
        if (!check_homomorphism(src, dst, map))
            return true;
    }
    return false;
}

} // namespace

TEST_SUITE("algebra")
{
    TEST_CASE("construction is validated")
    {
        Signature sig({{"f", 2}});
        CHECK_THROWS_AS(FiniteAlgebra(sig, 0, {{}}), InvalidArgument);
        CHECK_THROWS_AS(FiniteAlgebra(sig, 2, {{0, 1, 1}}), InvalidArgument);
        CHECK_THROWS_AS(FiniteAlgebra(sig, 2, {{0, 1, 1, 2}}), InvalidArgument);
        CHECK_THROWS_AS(FiniteAlgebra(sig, 2, {}), InvalidArgument);
        FiniteAlgebra ok(sig, 2, {{0, 1, 1, 0}});
        const Element args[] = {1, 0};
        CHECK(ok.apply(0, args) == 1);
    }

    TEST_CASE("text format round trip and errors")
    {
        auto z4 = data_algebra("z4.alg");
        CHECK(z4->size() == 4);
        CHECK(z4->label() == "Z4");
        CHECK(parse_algebra(format_algebra(*z4)) == *z4);

        // Table entries are a token stream, so a short table fails at end of input.
        CHECK(parse_error_line("algebra A size 2\nop f arity 2\n0 1 1\n") == 4);
        CHECK(parse_error_line("algebra A size 2\nop f arity 1\n0 2\n") == 3);
        CHECK(parse_error_line("algebra A size 0\n") == 1);
        CHECK(parse_error_line("algebra A size 2\nop f arity 1\n0 1\nop f arity 1\n0 1\n") == 4);
        CHECK(parse_error_line("# comment\nalgebra A\n") >= 2);
        CHECK(parse_error_line("algebra A size 2\nop 9f arity 1\n0 1\n") == 2);
        CHECK(parse_error_line("algebra A size 2 # trailing comment\nop c arity 0\n1\n") == 0);
        CHECK_THROWS_AS(load_algebra(data_path("no-such-file.alg")), Error);
    }

    TEST_CASE("products and powers")
    {
        auto join = data_algebra("semilattice.alg");
        FiniteAlgebra one = product(std::span<const FiniteAlgebra>(join.get(), 1));
        CHECK(one.size() == 2);
        CHECK(std::equal(one.table(0).begin(), one.table(0).end(), join->table(0).begin()));

        std::vector<FiniteAlgebra> two{*join, *join};
        FiniteAlgebra sq = product(two);
        CHECK(sq.size() == 4);
        for (Element x = 0; x < 4; ++x)
            for (Element y = 0; y < 4; ++y) {
                const Element args[] = {x, y};
                CHECK(sq.apply(0, args) == (x | y));
            }

        auto z3 = data_algebra("z3.alg");
        std::vector<FiniteAlgebra> mixed{*join, *z3};
        CHECK_THROWS_AS(product(mixed), SignatureMismatch);
        std::vector<FiniteAlgebra> zz{*z3, cyclic(2)};
        FiniteAlgebra z6 = product(zz);
        CHECK(z6.size() == 6);

        CHECK(same_structure(power(*join, 1), *join));
        FiniteAlgebra cube = power(*join, 3);
        CHECK(cube.size() == 8);
        const std::size_t sizes[] = {2, 2, 2};
        for (std::size_t c = 0; c < 3; ++c) {
            std::vector<Element> proj(8);
            for (Element e = 0; e < 8; ++e)
                proj[e] = product_coordinates(e, sizes)[c];
            CHECK_FALSE(check_homomorphism(cube, *join, proj));
        }

        Caps caps;
        caps.productSize = 7;
        CHECK_THROWS_AS(power(*join, 3, caps), CapExceeded);
    }

    TEST_CASE("generated subalgebras")
    {
        auto join = data_algebra("semilattice.alg");
        auto z4 = data_algebra("z4.alg");
        const Element one[] = {1}, two[] = {2};
        CHECK(generate_subalgebra(*join, one) == std::vector<Element>{1});
        CHECK(generate_subalgebra(*z4, one) == std::vector<Element>{0, 1, 2, 3});
        CHECK(generate_subalgebra(*z4, two) == std::vector<Element>{0, 2});
        CHECK(is_subuniverse(*z4, std::vector<Element>{2, 0}));
        CHECK_FALSE(is_subuniverse(*z4, std::vector<Element>{1}));

        Subalgebra s = restrict_to(*z4, std::vector<Element>{0, 2});
        CHECK(s.algebra.size() == 2);
        CHECK(s.carrier == std::vector<Element>{0, 2});
        CHECK(same_structure(s.algebra, cyclic(2)));
        CHECK_THROWS_AS(restrict_to(*z4, std::vector<Element>{1}), InvalidArgument);
    }

    TEST_CASE("subalgebra generation is a closure operator")
    {
        std::mt19937 rng(5);
        for (int i = 0; i < 60; ++i) {
            Signature sig = corpus::random_signature(rng);
            FiniteAlgebra a = corpus::random_algebra(rng, sig, 1 + oracle::draw(rng, 5), "R");
            std::vector<Element> x, y;
            for (Element e = 0; e < a.size(); ++e) {
                bool inX = oracle::draw(rng, 2) == 0;
                if (inX)
                    x.push_back(e);
                if (inX || oracle::draw(rng, 2) == 0)
                    y.push_back(e);
            }
            if (x.empty()) {
                x.push_back(0);
                y.insert(y.begin(), 0);
                y.erase(std::unique(y.begin(), y.end()), y.end());
            }
            auto cx = generate_subalgebra(a, x);
            auto cy = generate_subalgebra(a, y);
            auto expected = oracle::subuniverse(a, x);
            CHECK(std::vector<Element>(expected.begin(), expected.end()) == cx);
            CHECK(std::includes(cx.begin(), cx.end(), x.begin(), x.end()));
            CHECK(std::includes(cy.begin(), cy.end(), cx.begin(), cx.end()));
            CHECK(generate_subalgebra(a, cx) == cx);
            CHECK(is_subuniverse(a, cx));
        }
    }

    TEST_CASE("homomorphism checks")
    {
        auto z4 = data_algebra("z4.alg");
        auto z2 = data_algebra("z2.alg");
        CHECK_FALSE(check_homomorphism(*z4, *z4, std::vector<Element>{0, 1, 2, 3}));
        CHECK_FALSE(check_homomorphism(*z4, *z2, std::vector<Element>{0, 1, 0, 1}));
        auto bad = check_homomorphism(*z4, *z2, std::vector<Element>{0, 0, 1, 1});
        REQUIRE(bad);
        CHECK(bad->args == std::vector<Element>{1, 1});
        CHECK_THROWS(check_homomorphism(*z4, *z2, std::vector<Element>{0, 1}));
        CHECK_THROWS(check_homomorphism(*z4, *z2, std::vector<Element>{0, 1, 2, 3}));

        // Composites of homomorphisms are homomorphisms.
        std::vector<Element> z4z4{0, 3, 2, 1}, z4z2{0, 1, 0, 1}, composite(4);
        for (Element e = 0; e < 4; ++e)
            composite[e] = z4z2[z4z4[e]];
        CHECK_FALSE(check_homomorphism(*z4, *z4, z4z4));
        CHECK_FALSE(check_homomorphism(*z4, *z2, composite));
    }

    TEST_CASE("surjective homomorphism search")
    {
        auto z4 = data_algebra("z4.alg");
        auto z3 = data_algebra("z3.alg");
        auto z2 = data_algebra("z2.alg");
        auto trivial = share(cyclic(1));

        auto toTrivial = find_surjective_homomorphism(z4, trivial);
        REQUIRE(toTrivial);
        CHECK(toTrivial->map == std::vector<Element>{0, 0, 0, 0});

        auto mod2 = find_surjective_homomorphism(z4, z2);
        REQUIRE(mod2);
        CHECK(mod2->map == std::vector<Element>{0, 1, 0, 1});
        CHECK_FALSE(check_homomorphism(*mod2));

        CHECK_FALSE(find_surjective_homomorphism(z3, z2));

        const Pin pin[] = {{1, 0}};
        CHECK_FALSE(find_surjective_homomorphism(z4, z2, pin));
        const Pin auto3[] = {{1, 3}};
        auto tripled = find_surjective_homomorphism(z4, z4, auto3);
        REQUIRE(tripled);
        CHECK(tripled->map == std::vector<Element>{0, 3, 2, 1});
    }

    TEST_CASE("search agrees with exhaustive enumeration")
    {
        std::mt19937 rng(17);
        std::size_t found = 0;
        for (int i = 0; i < 150; ++i) {
            Signature sig = corpus::random_signature(rng);
            FiniteAlgebra src = corpus::random_algebra(rng, sig, 1 + oracle::draw(rng, 4), "S");
            FiniteAlgebra dst = corpus::random_algebra(rng, sig, 1 + oracle::draw(rng, 3), "D");
            if (i % 3 == 0)
                dst = corpus::quotient(src, static_cast<Element>(oracle::draw(rng, src.size())),
                                       static_cast<Element>(oracle::draw(rng, src.size())));
            auto h = find_surjective_homomorphism(share(src), share(dst));
            CHECK(h.has_value() == has_surjective_hom_exhaustive(src, dst));
            if (h) {
                ++found;
                CHECK_FALSE(check_homomorphism(*h));
                CHECK(is_surjective(h->map, dst.size()));
            }
        }
        CHECK(found > 0);
    }

    TEST_CASE("minimal generators")
    {
        CHECK(minimal_generators(*data_algebra("z4.alg")) == std::vector<Element>{1});
        CHECK(minimal_generators(*data_algebra("chain3.alg")) == std::vector<Element>{0, 1, 2});
        CHECK(minimal_generators(*data_algebra("set2.alg")) == std::vector<Element>{0, 1});
        FiniteAlgebra constant(Signature({{"c", 0}}), 1, {{0}});
        CHECK(minimal_generators(constant).empty());
        std::mt19937 rng(3);
        for (int i = 0; i < 40; ++i) {
            FiniteAlgebra a = corpus::random_algebra(rng, corpus::random_signature(rng),
                                                     1 + oracle::draw(rng, 4), "R");
            auto gens = minimal_generators(a);
            CHECK(gens.size() == oracle::min_generator_count(a));
            CHECK(generate_subalgebra(a, gens).size() == a.size());
        }
    }

    TEST_CASE("chain colimits")
    {
        auto z4 = data_algebra("z4.alg");
        ChainColimit single = colimit_of_chain({z4, {{0, 2}}});
        CHECK(same_structure(single.algebra, cyclic(2)));
        CHECK(single.carrier == std::vector<Element>{0, 2});

        ChainColimit top = colimit_of_chain({z4, {{0}, {0, 2}, {0, 1, 2, 3}}});
        CHECK(top.algebra.size() == 4);
        CHECK(top.firstLevel == std::vector<std::size_t>{0, 2, 1, 2});
        const Element args[] = {3, 3};
        CHECK(top.algebra.apply(0, args) == 2);

        CHECK_THROWS_AS(colimit_of_chain({z4, {{0, 2}, {0}}}), InvalidArgument);
        CHECK_THROWS_AS(colimit_of_chain({z4, {{1}}}), InvalidArgument);
        CHECK_THROWS_AS(colimit_of_chain({z4, {}}), InvalidArgument);
    }
}
