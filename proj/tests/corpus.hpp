#pragma once

// Fixed pseudo-random corpus of algebra pairs over small signatures.

#include "oracles.hpp"

#include "ubirk/algebra.hpp"

#include <numeric>
#include <string>

namespace corpus {

using ubirk::AlgebraPtr;
using ubirk::Element;
using ubirk::FiniteAlgebra;
using ubirk::Signature;

inline Signature random_signature(std::mt19937& rng)
{
    std::vector<ubirk::Symbol> symbols;
    std::size_t count = 1 + oracle::draw(rng, 2);
    const char* names[] = {"f", "g"};
    for (std::size_t i = 0; i < count; ++i)
        symbols.push_back({names[i], oracle::draw(rng, 3)});
    return Signature(symbols);
}

inline FiniteAlgebra random_algebra(std::mt19937& rng, const Signature& sig, std::size_t size,
                                    const std::string& label)
{
    std::vector<std::vector<Element>> tables;
    for (const auto& s : sig.symbols()) {
        std::vector<Element> t(oracle::ipow(size, s.arity));
        for (auto& v : t)
            v = static_cast<Element>(oracle::draw(rng, size));
        tables.push_back(std::move(t));
    }
    return FiniteAlgebra(sig, size, std::move(tables), label);
}

/// Quotient by the congruence generated by identifying x and y.
inline FiniteAlgebra quotient(const FiniteAlgebra& a, Element x, Element y)
{
    std::vector<std::size_t> cls(a.size());
    std::iota(cls.begin(), cls.end(), std::size_t{0});
    auto merge = [&](std::size_t p, std::size_t q) {
        std::size_t from = std::max(cls[p], cls[q]), to = std::min(cls[p], cls[q]);
        if (from == to)
            return false;
        for (auto& c : cls)
            if (c == from)
                c = to;
        return true;
    };
    merge(x, y);
    const Signature& sig = a.signature();
    for (bool grew = true; grew;) {
        grew = false;
        for (std::size_t s = 0; s < sig.size(); ++s) {
            std::size_t k = sig[s].arity;
            for (std::size_t c = 0; c < oracle::ipow(a.size(), k); ++c) {
                auto args = oracle::decode(c, a.size(), k);
                for (std::size_t j = 0; j < k; ++j)
                    for (Element e = 0; e < a.size(); ++e) {
                        if (cls[e] != cls[args[j]])
                            continue;
                        auto other = args;
                        other[j] = e;
                        grew |= merge(oracle::op(a, s, args), oracle::op(a, s, other));
                    }
            }
        }
    }
    std::vector<Element> id(a.size()), rep;
    for (std::size_t e = 0; e < a.size(); ++e)
        if (cls[e] == e) {
            id[e] = static_cast<Element>(rep.size());
            rep.push_back(static_cast<Element>(e));
        }
    std::vector<std::vector<Element>> tables;
    for (std::size_t s = 0; s < sig.size(); ++s) {
        std::size_t k = sig[s].arity;
        std::vector<Element> t(oracle::ipow(rep.size(), k));
        for (std::size_t c = 0; c < t.size(); ++c) {
            auto args = oracle::decode(c, rep.size(), k);
            for (auto& v : args)
                v = rep[v];
            t[c] = id[cls[oracle::op(a, s, args)]];
        }
        tables.push_back(std::move(t));
    }
    return FiniteAlgebra(sig, rep.size(), std::move(tables), "Q");
}

/// Restriction to the subuniverse generated by gens, relabelled ascending.
inline FiniteAlgebra subalgebra(const FiniteAlgebra& a, const std::vector<Element>& gens)
{
    auto carrier = oracle::subuniverse(a, gens);
    std::vector<Element> rep(carrier.begin(), carrier.end());
    std::vector<Element> id(a.size(), 0);
    for (std::size_t i = 0; i < rep.size(); ++i)
        id[rep[i]] = static_cast<Element>(i);
    std::vector<std::vector<Element>> tables;
    const Signature& sig = a.signature();
    for (std::size_t s = 0; s < sig.size(); ++s) {
        std::size_t k = sig[s].arity;
        std::vector<Element> t(oracle::ipow(rep.size(), k));
        for (std::size_t c = 0; c < t.size(); ++c) {
            auto args = oracle::decode(c, rep.size(), k);
            for (auto& v : args)
                v = rep[v];
            t[c] = id[oracle::op(a, s, args)];
        }
        tables.push_back(std::move(t));
    }
    return FiniteAlgebra(sig, rep.size(), std::move(tables), "S");
}

inline FiniteAlgebra relabel(const FiniteAlgebra& a, const oracle::Perm& p)
{
    oracle::Perm inv(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        inv[p[i]] = static_cast<Element>(i);
    std::vector<std::vector<Element>> tables;
    const Signature& sig = a.signature();
    for (std::size_t s = 0; s < sig.size(); ++s) {
        std::size_t k = sig[s].arity;
        std::vector<Element> t(oracle::ipow(a.size(), k));
        for (std::size_t c = 0; c < t.size(); ++c) {
            auto args = oracle::decode(c, a.size(), k);
            for (auto& v : args)
                v = inv[v];
            t[c] = p[oracle::op(a, s, args)];
        }
        tables.push_back(std::move(t));
    }
    return FiniteAlgebra(sig, a.size(), std::move(tables), "I");
}

struct Pair {
    AlgebraPtr a;
    AlgebraPtr b;
    std::string kind;  // how B was drawn
    bool oracleMember = false;
};

/// Draws candidates until `count` pairs are accepted. A candidate is kept when
/// the oracle's paired closure finishes within `budget` pairs at the oracle's
/// own generator count, and also at arity 2 when the identities transfer.
inline std::vector<Pair> birkhoff_corpus(std::size_t count, std::uint32_t seed,
                                         std::size_t budget = 1500)
{
    std::mt19937 rng(seed);
    std::vector<Pair> out;
    for (std::size_t candidate = 0; out.size() < count; ++candidate) {
        Signature sig = random_signature(rng);
        FiniteAlgebra a = random_algebra(rng, sig, 1 + oracle::draw(rng, 3), "A");
        Pair p;
        switch (candidate % 5) {
        case 0:
        case 4:
            p.kind = "random";
            p.b = ubirk::share(random_algebra(rng, sig, 1 + oracle::draw(rng, 3), "B"));
            break;
        case 1: {
            p.kind = "subalgebra";
            std::vector<Element> gens{static_cast<Element>(oracle::draw(rng, a.size()))};
            p.b = ubirk::share(subalgebra(a, gens));
            break;
        }
        case 2: {
            p.kind = "quotient";
            Element x = static_cast<Element>(oracle::draw(rng, a.size()));
            Element y = static_cast<Element>(oracle::draw(rng, a.size()));
            p.b = ubirk::share(quotient(a, x, y));
            break;
        }
        default:
            p.kind = "isomorphic";
            p.b = ubirk::share(relabel(a, oracle::random_perm(rng, a.size())));
            break;
        }
        p.a = ubirk::share(std::move(a));
        std::size_t m = std::max<std::size_t>(1, oracle::min_generator_count(*p.b));
        auto verdict = oracle::identities_transfer(*p.a, *p.b, m, budget);
        if (verdict == oracle::Transfer::Budget)
            continue;
        if (verdict == oracle::Transfer::Valid &&
            oracle::identities_transfer(*p.a, *p.b, 2, budget) == oracle::Transfer::Budget)
            continue;
        p.oracleMember = verdict == oracle::Transfer::Valid;
        out.push_back(std::move(p));
    }
    return out;
}

} // namespace corpus
