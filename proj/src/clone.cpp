#include "ubirk/clone.hpp"

#include "ubirk/errors.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace ubirk {

CloneLevel::CloneLevel(AlgebraPtr algebra, std::size_t arity, std::vector<Element> rows,
                       std::vector<Term> witnesses, bool complete)
    : algebra_(std::move(algebra)), arity_(arity), complete_(complete)
{
    if (!algebra_)
        throw InvalidArgument("clone level without algebra");
    if (arity_ == 0)
        throw InvalidArgument("clone levels start at arity 1");
    length_ = checked_pow(algebra_->size(), arity_, std::numeric_limits<std::size_t>::max() / 2);
    if (length_ == 0 || rows.size() != witnesses.size() * length_)
        throw InvalidArgument("clone level rows do not match the witness count");
    std::vector<std::size_t> order(witnesses.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto rowOf = [&](std::size_t i) {
        return std::span<const Element>(rows.data() + i * length_, length_);
    };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        auto a = rowOf(x), b = rowOf(y);
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    });
    rows_.reserve(rows.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        auto r = rowOf(order[k]);
        if (k > 0 && std::equal(r.begin(), r.end(), rowOf(order[k - 1]).begin()))
            continue;
        rows_.insert(rows_.end(), r.begin(), r.end());
        witnesses_.push_back(std::move(witnesses[order[k]]));
    }
}

OperationTable CloneLevel::table(std::size_t i) const
{
    auto m = member(i);
    return {arity_, algebra_->size(), std::vector<Element>(m.begin(), m.end())};
}

std::optional<std::size_t> CloneLevel::find(std::span<const Element> table) const
{
    if (table.size() != length_)
        return std::nullopt;
    std::size_t lo = 0, hi = size();
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        auto m = member(mid);
        if (std::lexicographical_compare(m.begin(), m.end(), table.begin(), table.end()))
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo < size() && std::equal(table.begin(), table.end(), member(lo).begin()))
        return lo;
    return std::nullopt;
}

std::size_t CloneLevel::projection(std::size_t i) const
{
    auto idx = find(projection_table(algebra_->size(), arity_, i));
    if (!idx)
        throw InternalConsistency("projection x" + std::to_string(i) + " missing from clone level");
    return *idx;
}

std::vector<Element> projection_table(std::size_t base, std::size_t arity, std::size_t i)
{
    if (i == 0 || i > arity)
        throw InvalidArgument("projection index out of range");
    std::size_t length = checked_pow(base, arity, std::numeric_limits<std::size_t>::max() / 2);
    std::vector<Element> table(length);
    std::size_t stride = checked_pow(base, arity - i, length);
    for (std::size_t idx = 0; idx < length; ++idx)
        table[idx] = static_cast<Element>((idx / stride) % base);
    return table;
}

std::vector<Term> derivation_terms(const Signature& sig, const ClosureResult& result,
                                   std::span<const Term> seedTerms)
{
    std::vector<Term> terms;
    terms.reserve(result.count());
    for (const Derivation& d : result.derivations) {
        if (d.symbol == Derivation::kSeed) {
            terms.push_back(seedTerms[d.seed]);
            continue;
        }
        std::vector<Term> children;
        for (auto p : d.parents)
            children.push_back(terms[p]);
        terms.push_back(Term::app(sig, d.symbol, std::move(children)));
    }
    return terms;
}

namespace {

std::size_t level_table_length(const FiniteAlgebra& alg, std::size_t arity, const Caps& caps)
{
    if (arity == 0)
        throw InvalidArgument("clone levels start at arity 1");
    std::size_t length = checked_pow(alg.size(), arity, caps.tableBytes / sizeof(Element));
    if (length == 0)
        throw CapExceeded("a table of arity " + std::to_string(arity) + " over " +
                          std::to_string(alg.size()) + " elements exceeds the table byte cap");
    return length;
}

} // namespace

CloneLevel clone_generate(const AlgebraPtr& alg, std::size_t arity, const Caps& caps)
{
    std::size_t length = level_table_length(*alg, arity, caps);
    std::vector<std::vector<Element>> seeds;
    std::vector<Term> seedTerms;
    for (std::size_t i = 1; i <= arity; ++i) {
        seeds.push_back(projection_table(alg->size(), arity, i));
        seedTerms.push_back(Term::var(i));
    }
    Block block{alg.get(), length};
    ClosureResult closure =
        close_rows({&block, 1}, seeds, {caps.cloneMembers, caps.tableBytes});
    auto witnesses = derivation_terms(alg->signature(), closure, seedTerms);
    bool complete = closure.complete();
    return CloneLevel(alg, arity, std::move(closure.rows), std::move(witnesses), complete);
}

std::optional<CompositionViolation> check_composition_closed(const CloneLevel& level)
{
    const FiniteAlgebra& alg = *level.algebra();
    const Signature& sig = alg.signature();
    Block block{&alg, level.table_length()};
    std::vector<Element> out(level.table_length());
    for (std::size_t s = 0; s < sig.size(); ++s) {
        std::size_t arity = sig[s].arity;
        std::vector<std::size_t> idx(arity, 0);
        std::vector<std::span<const Element>> args(arity);
        if (arity > 0 && level.size() == 0)
            continue;
        for (;;) {
            for (std::size_t j = 0; j < arity; ++j)
                args[j] = level.member(idx[j]);
            compose_rows({&block, 1}, s, args, out);
            if (!level.find(out))
                return CompositionViolation{s, idx};
            std::size_t j = arity;
            while (j-- > 0) {
                if (++idx[j] < level.size())
                    break;
                idx[j] = 0;
            }
            if (j == static_cast<std::size_t>(-1))
                break;
        }
    }
    return std::nullopt;
}

FreeAlgebra free_algebra(const CloneLevel& level, const Caps& caps)
{
    if (!level.complete())
        throw IncompleteLevel("free algebra needs a complete clone level");
    if (level.size() > caps.productSize)
        throw CapExceeded("free algebra with " + std::to_string(level.size()) +
                          " elements exceeds the product size cap of " +
                          std::to_string(caps.productSize));
    const FiniteAlgebra& alg = *level.algebra();
    const Signature& sig = alg.signature();
    Block block{&alg, level.table_length()};
    std::vector<Element> out(level.table_length());
    std::vector<std::vector<Element>> tables;
    for (std::size_t s = 0; s < sig.size(); ++s) {
        std::size_t arity = sig[s].arity;
        std::size_t entries = checked_pow(level.size(), arity, caps.tableBytes / sizeof(Element));
        if (entries == 0)
            throw CapExceeded("free algebra table of '" + sig[s].name + "' exceeds the byte cap");
        std::vector<Element> table(entries);
        std::vector<Element> idx(arity, 0);
        std::vector<std::span<const Element>> args(arity);
        for (std::size_t e = 0; e < entries; ++e) {
            for (std::size_t j = 0; j < arity; ++j)
                args[j] = level.member(idx[j]);
            compose_rows({&block, 1}, s, args, out);
            auto found = level.find(out);
            if (!found)
                throw InternalConsistency("complete clone level is not closed under '" +
                                          sig[s].name + "'");
            table[e] = static_cast<Element>(*found);
            tuple_next(idx, level.size());
        }
        tables.push_back(std::move(table));
    }
    std::vector<Element> gens;
    for (std::size_t i = 1; i <= level.arity(); ++i)
        gens.push_back(static_cast<Element>(level.projection(i)));
    std::string label = "F" + std::to_string(level.arity()) + "_" +
                        (is_identifier(alg.label()) ? alg.label() : std::string("A"));
    return {FiniteAlgebra(sig, level.size(), std::move(tables), label), std::move(gens)};
}

FreeAlgebra free_algebra(const AlgebraPtr& alg, std::size_t arity, const Caps& caps)
{
    return free_algebra(clone_generate(alg, arity, caps), caps);
}

} // namespace ubirk
