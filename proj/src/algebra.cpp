#include "ubirk/algebra.hpp"

#include "ubirk/errors.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace ubirk {

FiniteAlgebra::FiniteAlgebra(Signature sig, std::size_t size,
                             std::vector<std::vector<Element>> tables, std::string label)
    : sig_(std::move(sig)), size_(size), tables_(std::move(tables)), label_(std::move(label))
{
    if (size_ == 0)
        throw InvalidArgument("algebras must have a nonempty carrier");
    if (tables_.size() != sig_.size())
        throw InvalidArgument("expected " + std::to_string(sig_.size()) + " operation tables, got " +
                              std::to_string(tables_.size()));
    for (std::size_t s = 0; s < sig_.size(); ++s) {
        std::size_t expected = checked_pow(size_, sig_[s].arity, std::size_t{1} << 40);
        if (expected == 0 || tables_[s].size() != expected)
            throw InvalidArgument("table of '" + sig_[s].name + "' must have " +
                                  std::to_string(size_) + "^" + std::to_string(sig_[s].arity) +
                                  " entries");
        for (Element v : tables_[s])
            if (v >= size_)
                throw InvalidArgument("table of '" + sig_[s].name + "' has value " +
                                      std::to_string(v) + " outside the carrier");
    }
}

void require_same_signature(const FiniteAlgebra& a, const FiniteAlgebra& b)
{
    if (!(a.signature() == b.signature()))
        throw SignatureMismatch("algebras '" + a.label() + "' and '" + b.label() +
                                "' have different signatures");
}

std::vector<Element> product_coordinates(Element e, std::span<const std::size_t> factorSizes)
{
    std::vector<Element> coords(factorSizes.size());
    std::size_t rest = e;
    for (std::size_t i = factorSizes.size(); i-- > 0;) {
        coords[i] = static_cast<Element>(rest % factorSizes[i]);
        rest /= factorSizes[i];
    }
    return coords;
}

namespace {

FiniteAlgebra product_impl(std::span<const FiniteAlgebra> algs, const Caps& caps,
                           std::string label)
{
    if (algs.empty())
        throw InvalidArgument("product of an empty family");
    std::size_t size = 1;
    std::vector<std::size_t> sizes;
    for (const auto& a : algs) {
        require_same_signature(algs.front(), a);
        if (size > caps.productSize / a.size())
            throw CapExceeded("product carrier exceeds the product size cap of " +
                              std::to_string(caps.productSize));
        size *= a.size();
        sizes.push_back(a.size());
    }
    const Signature& sig = algs.front().signature();
    std::vector<std::vector<Element>> tables;
    std::vector<std::vector<Element>> coords(size);
    for (std::size_t e = 0; e < size; ++e)
        coords[e] = product_coordinates(static_cast<Element>(e), sizes);
    for (std::size_t s = 0; s < sig.size(); ++s) {
        std::size_t arity = sig[s].arity;
        std::size_t entries = checked_pow(size, arity, caps.tableBytes / sizeof(Element));
        if (entries == 0)
            throw CapExceeded("product table of '" + sig[s].name + "' exceeds the table byte cap");
        std::vector<Element> table(entries);
        std::vector<Element> args(arity, 0);
        std::vector<Element> factorArgs(arity);
        for (std::size_t idx = 0; idx < entries; ++idx) {
            std::size_t result = 0;
            for (std::size_t f = 0; f < algs.size(); ++f) {
                for (std::size_t j = 0; j < arity; ++j)
                    factorArgs[j] = coords[args[j]][f];
                result = result * sizes[f] + algs[f].apply(s, factorArgs);
            }
            table[idx] = static_cast<Element>(result);
            tuple_next(args, size);
        }
        tables.push_back(std::move(table));
    }
    return FiniteAlgebra(sig, size, std::move(tables), std::move(label));
}

} // namespace

FiniteAlgebra product(std::span<const FiniteAlgebra> algs, const Caps& caps)
{
    std::string label;
    for (const auto& a : algs)
        label += (label.empty() ? "" : "x") + a.label();
    return product_impl(algs, caps, std::move(label));
}

FiniteAlgebra power(const FiniteAlgebra& alg, std::size_t exponent, const Caps& caps)
{
    if (exponent == 0)
        throw InvalidArgument("power exponent must be at least 1");
    if (checked_pow(alg.size(), exponent, caps.productSize) == 0)
        throw CapExceeded("power carrier exceeds the product size cap of " +
                          std::to_string(caps.productSize));
    std::vector<FiniteAlgebra> copies(exponent, alg);
    return product_impl(copies, caps, alg.label() + "^" + std::to_string(exponent));
}

namespace {

// Visits every tuple over `members` using at least one member at index >= fresh.
// The first such position p splits the ranges: old before p, new at p, any after.
template <class Fn>
void for_each_new_tuple(std::size_t arity, const std::vector<Element>& members, std::size_t fresh,
                        Fn&& fn)
{
    std::size_t count = members.size();
    std::vector<std::size_t> idx(arity);
    std::vector<Element> args(arity);
    for (std::size_t p = 0; p < arity && fresh < count; ++p) {
        if (p > 0 && fresh == 0)
            break;
        auto low = [&](std::size_t j) { return j == p ? fresh : 0; };
        auto high = [&](std::size_t j) { return j < p ? fresh : count; };
        for (std::size_t j = 0; j < arity; ++j)
            idx[j] = low(j);
        for (;;) {
            for (std::size_t j = 0; j < arity; ++j)
                args[j] = members[idx[j]];
            fn(args);
            std::size_t j = arity;
            while (j-- > 0) {
                if (++idx[j] < high(j))
                    break;
                idx[j] = low(j);
            }
            if (j == static_cast<std::size_t>(-1))
                break;
        }
    }
}

} // namespace

std::vector<Element> generate_subalgebra(const FiniteAlgebra& alg, std::span<const Element> gens)
{
    const Signature& sig = alg.signature();
    bool hasConstant = std::any_of(sig.symbols().begin(), sig.symbols().end(),
                                   [](const Symbol& s) { return s.arity == 0; });
    if (gens.empty() && !hasConstant)
        throw InvalidArgument("empty generating set over a signature without constants");
    std::vector<bool> in(alg.size(), false);
    std::vector<Element> members;
    auto add = [&](Element e) {
        if (e >= alg.size())
            throw InvalidArgument("generator " + std::to_string(e) + " outside the carrier");
        if (!in[e]) {
            in[e] = true;
            members.push_back(e);
        }
    };
    for (Element g : gens)
        add(g);
    for (std::size_t s = 0; s < sig.size(); ++s)
        if (sig[s].arity == 0)
            add(alg.table(s)[0]);
    std::size_t fresh = 0;
    while (fresh < members.size()) {
        std::size_t end = members.size();
        std::vector<Element> snapshot(members.begin(), members.begin() + end);
        for (std::size_t s = 0; s < sig.size(); ++s) {
            if (sig[s].arity == 0)
                continue;
            for_each_new_tuple(sig[s].arity, snapshot, fresh,
                               [&](const std::vector<Element>& args) { add(alg.apply(s, args)); });
        }
        fresh = end;
    }
    std::sort(members.begin(), members.end());
    return members;
}

bool is_subuniverse(const FiniteAlgebra& alg, std::span<const Element> subset)
{
    std::vector<bool> in(alg.size(), false);
    std::vector<Element> members;
    for (Element e : subset) {
        if (e >= alg.size())
            return false;
        if (!in[e]) {
            in[e] = true;
            members.push_back(e);
        }
    }
    const Signature& sig = alg.signature();
    for (std::size_t s = 0; s < sig.size(); ++s) {
        std::size_t arity = sig[s].arity;
        if (arity == 0) {
            if (!in[alg.table(s)[0]])
                return false;
            continue;
        }
        if (members.empty())
            continue;
        std::vector<std::size_t> idx(arity, 0);
        std::vector<Element> args(arity);
        for (;;) {
            for (std::size_t j = 0; j < arity; ++j)
                args[j] = members[idx[j]];
            if (!in[alg.apply(s, args)])
                return false;
            std::size_t j = arity;
            for (; j-- > 0;) {
                if (++idx[j] < members.size())
                    break;
                idx[j] = 0;
            }
            if (j == static_cast<std::size_t>(-1))
                break;
        }
    }
    return true;
}

Subalgebra restrict_to(const FiniteAlgebra& alg, std::span<const Element> subset)
{
    std::vector<Element> carrier(subset.begin(), subset.end());
    std::sort(carrier.begin(), carrier.end());
    carrier.erase(std::unique(carrier.begin(), carrier.end()), carrier.end());
    if (carrier.empty())
        throw InvalidArgument("cannot restrict to an empty subset");
    if (!is_subuniverse(alg, carrier))
        throw InvalidArgument("subset is not closed under the operations of '" + alg.label() + "'");
    std::vector<Element> local(alg.size(), 0);
    for (std::size_t i = 0; i < carrier.size(); ++i)
        local[carrier[i]] = static_cast<Element>(i);
    const Signature& sig = alg.signature();
    std::vector<std::vector<Element>> tables;
    for (std::size_t s = 0; s < sig.size(); ++s) {
        std::size_t arity = sig[s].arity;
        std::size_t entries = checked_pow(carrier.size(), arity, std::size_t{1} << 32);
        if (entries == 0)
            throw CapExceeded("restricted table too large");
        std::vector<Element> table(entries);
        std::vector<Element> args(arity, 0), ambient(arity);
        for (std::size_t idx = 0; idx < entries; ++idx) {
            for (std::size_t j = 0; j < arity; ++j)
                ambient[j] = carrier[args[j]];
            table[idx] = local[alg.apply(s, ambient)];
            tuple_next(args, carrier.size());
        }
        tables.push_back(std::move(table));
    }
    return {FiniteAlgebra(sig, carrier.size(), std::move(tables), alg.label() + "|sub"),
            std::move(carrier)};
}

std::vector<Element> minimal_generators(const FiniteAlgebra& alg)
{
    std::size_t k = alg.size();
    auto generates = [&](const std::vector<Element>& gens) {
        const Signature& sig = alg.signature();
        bool hasConstant = std::any_of(sig.symbols().begin(), sig.symbols().end(),
                                       [](const Symbol& s) { return s.arity == 0; });
        if (gens.empty() && !hasConstant)
            return false;
        return generate_subalgebra(alg, gens).size() == k;
    };
    if (k <= 20) {
        for (std::size_t size = 0; size <= k; ++size) {
            // combinations of `size` elements in lexicographic order
            std::vector<Element> comb(size);
            std::iota(comb.begin(), comb.end(), Element{0});
            for (;;) {
                if (generates(comb))
                    return comb;
                std::size_t i = size;
                while (i-- > 0) {
                    if (comb[i] < k - size + i) {
                        ++comb[i];
                        for (std::size_t j = i + 1; j < size; ++j)
                            comb[j] = comb[j - 1] + 1;
                        break;
                    }
                }
                if (i == static_cast<std::size_t>(-1))
                    break;
            }
        }
    }
    // Greedy: add the least element not yet generated.
    std::vector<Element> gens;
    std::vector<Element> reached;
    while (reached.size() < k) {
        std::vector<bool> in(k, false);
        for (Element e : reached)
            in[e] = true;
        Element next = 0;
        while (in[next])
            ++next;
        gens.push_back(next);
        reached = generate_subalgebra(alg, gens);
    }
    return gens;
}

ChainColimit colimit_of_chain(const SubalgebraChain& chain)
{
    if (!chain.ambient)
        throw InvalidArgument("chain without ambient algebra");
    if (chain.levels.empty())
        throw InvalidArgument("colimit of an empty chain");
    const FiniteAlgebra& ambient = *chain.ambient;
    std::vector<std::size_t> first(ambient.size(), chain.levels.size());
    for (std::size_t lvl = 0; lvl < chain.levels.size(); ++lvl) {
        const auto& level = chain.levels[lvl];
        if (level.empty())
            throw InvalidArgument("chain level " + std::to_string(lvl) + " is empty");
        if (!is_subuniverse(ambient, level))
            throw InvalidArgument("chain level " + std::to_string(lvl) +
                                  " is not closed under the operations");
        std::vector<bool> in(ambient.size(), false);
        for (Element e : level)
            in[e] = true;
        for (std::size_t e = 0; e < ambient.size(); ++e) {
            if (first[e] < lvl && !in[e])
                throw InvalidArgument("chain level " + std::to_string(lvl) +
                                      " does not contain level " + std::to_string(lvl - 1));
            if (in[e] && first[e] > lvl)
                first[e] = lvl;
        }
    }
    Subalgebra top = restrict_to(ambient, chain.levels.back());
    std::vector<std::size_t> provenance;
    for (Element e : top.carrier)
        provenance.push_back(first[e]);
    return {std::move(top.algebra), std::move(top.carrier), std::move(provenance)};
}

} // namespace ubirk
