#include "ubirk/natural_hom.hpp"

#include "ubirk/errors.hpp"

#include <algorithm>
#include <unordered_map>

namespace ubirk {

namespace {

struct RowHash {
    std::size_t operator()(const std::vector<Element>& row) const noexcept
    {
        std::uint64_t h = 1469598103934665603ULL;
        for (Element e : row) {
            h ^= e;
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

std::size_t level_length(const FiniteAlgebra& alg, std::size_t arity, const Caps& caps)
{
    std::size_t length = checked_pow(alg.size(), arity, caps.tableBytes / sizeof(Element));
    if (length == 0)
        throw CapExceeded("tables of arity " + std::to_string(arity) + " over '" + alg.label() +
                          "' exceed the table byte cap");
    return length;
}

std::string describe(const std::vector<std::size_t>& idx)
{
    std::string s;
    for (auto i : idx)
        s += (s.empty() ? "" : " ") + std::to_string(i);
    return s;
}

} // namespace

NaturalHomResult natural_hom(const AlgebraPtr& a, const AlgebraPtr& b, std::size_t arity,
                             const Caps& caps)
{
    require_same_signature(*a, *b);
    if (arity == 0)
        throw InvalidArgument("clone levels start at arity 1");
    const std::size_t lenA = level_length(*a, arity, caps);
    const std::size_t lenB = level_length(*b, arity, caps);

    std::vector<std::vector<Element>> seeds;
    std::vector<Term> seedTerms;
    for (std::size_t i = 1; i <= arity; ++i) {
        auto row = projection_table(a->size(), arity, i);
        auto rowB = projection_table(b->size(), arity, i);
        row.insert(row.end(), rowB.begin(), rowB.end());
        seeds.push_back(std::move(row));
        seedTerms.push_back(Term::var(i));
    }

    // First pair seen for each A-component; a second pair with the same
    // A-component and a different B-component refutes functionality.
    std::unordered_map<std::vector<Element>, std::size_t, RowHash> firstByA;
    std::optional<std::pair<std::size_t, std::size_t>> conflict;
    auto observer = [&](std::size_t index, std::span<const Element> row) {
        std::vector<Element> key(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(lenA));
        auto [it, inserted] = firstByA.emplace(std::move(key), index);
        if (!inserted) {
            conflict = std::make_pair(it->second, index);
            return false;
        }
        return true;
    };

    const Block blocks[] = {{a.get(), lenA}, {b.get(), lenB}};
    ClosureResult closure =
        close_rows(blocks, seeds, {caps.cloneMembers, caps.tableBytes}, observer);
    auto terms = derivation_terms(a->signature(), closure, seedTerms);

    if (conflict)
        return IdentityCounterexample{arity, terms[conflict->first], terms[conflict->second]};
    if (!closure.complete())
        throw CapExceeded("paired clone closure at arity " + std::to_string(arity) +
                          " stopped at the member cap of " + std::to_string(caps.cloneMembers));

    std::vector<Element> rowsA, rowsB;
    rowsA.reserve(closure.count() * lenA);
    rowsB.reserve(closure.count() * lenB);
    for (std::size_t i = 0; i < closure.count(); ++i) {
        auto r = closure.row(i);
        rowsA.insert(rowsA.end(), r.begin(), r.begin() + static_cast<std::ptrdiff_t>(lenA));
        rowsB.insert(rowsB.end(), r.begin() + static_cast<std::ptrdiff_t>(lenA), r.end());
    }
    NaturalHom hom;
    hom.source = a;
    hom.target = b;
    hom.arity = arity;
    hom.sourceLevel = CloneLevel(a, arity, rowsA, terms, true);
    hom.targetLevel = CloneLevel(b, arity, rowsB, terms, true);
    hom.graph.assign(hom.sourceLevel.size(), 0);
    for (std::size_t i = 0; i < closure.count(); ++i) {
        auto r = closure.row(i);
        auto src = hom.sourceLevel.find(r.first(lenA));
        auto dst = hom.targetLevel.find(r.subspan(lenA));
        if (!src || !dst)
            throw InternalConsistency("paired closure row missing from its projections");
        hom.graph[*src] = static_cast<std::uint32_t>(*dst);
    }
    for (std::size_t i = 1; i <= arity; ++i)
        hom.generatorImages.push_back(hom.graph[hom.sourceLevel.projection(i)]);
    return hom;
}

std::optional<std::string> check_clone_hom_laws(const NaturalHom& hom)
{
    const CloneLevel& src = hom.sourceLevel;
    const CloneLevel& dst = hom.targetLevel;
    if (hom.graph.size() != src.size())
        return "graph is not total on the source level";
    for (std::size_t i = 1; i <= hom.arity; ++i)
        if (hom.graph[src.projection(i)] != dst.projection(i))
            return "projection x" + std::to_string(i) + " is not mapped to x" + std::to_string(i);

    const Signature& sig = hom.source->signature();
    Block blockA{hom.source.get(), src.table_length()};
    Block blockB{hom.target.get(), dst.table_length()};
    std::vector<Element> outA(src.table_length()), outB(dst.table_length());
    for (std::size_t s = 0; s < sig.size(); ++s) {
        std::size_t arity = sig[s].arity;
        std::vector<std::size_t> idx(arity, 0);
        std::vector<std::span<const Element>> argsA(arity), argsB(arity);
        for (;;) {
            for (std::size_t j = 0; j < arity; ++j) {
                argsA[j] = src.member(idx[j]);
                argsB[j] = hom.image(idx[j]);
            }
            compose_rows({&blockA, 1}, s, argsA, outA);
            compose_rows({&blockB, 1}, s, argsB, outB);
            auto c = src.find(outA);
            if (!c)
                return "source level not closed under '" + sig[s].name + "' at members " +
                       describe(idx);
            auto image = hom.image(*c);
            if (!std::equal(outB.begin(), outB.end(), image.begin()))
                return "composition law fails for '" + sig[s].name + "' at members " +
                       describe(idx);
            std::size_t j = arity;
            while (j-- > 0) {
                if (++idx[j] < src.size())
                    break;
                idx[j] = 0;
            }
            if (j == static_cast<std::size_t>(-1))
                break;
        }
    }
    return std::nullopt;
}

HspVerdict hsp_membership(const AlgebraPtr& a, const AlgebraPtr& b,
                          std::optional<std::vector<Element>> generators, const Caps& caps)
{
    require_same_signature(*a, *b);
    HspVerdict verdict;
    verdict.generators = generators ? *generators : minimal_generators(*b);
    // Constants alone may generate B; any single element still generates it.
    if (verdict.generators.empty())
        verdict.generators.push_back(0);
    if (generate_subalgebra(*b, verdict.generators).size() != b->size())
        throw InvalidArgument("the given elements do not generate '" + b->label() + "'");

    const std::size_t n = verdict.generators.size();
    auto result = natural_hom(a, b, n, caps);
    if (auto* cx = std::get_if<IdentityCounterexample>(&result)) {
        verdict.counterexample = std::move(*cx);
        return verdict;
    }
    verdict.member = true;
    verdict.hom = std::move(std::get<NaturalHom>(result));
    const NaturalHom& hom = *verdict.hom;
    if (hom.sourceLevel.size() <= caps.productSize) {
        FreeAlgebra free = free_algebra(hom.sourceLevel, caps);
        std::size_t point = tuple_index(verdict.generators, b->size());
        std::vector<Element> map(free.algebra.size());
        for (std::size_t m = 0; m < map.size(); ++m)
            map[m] = hom.image(m)[point];
        Homomorphism eval{share(std::move(free.algebra)), b, std::move(map)};
        if (check_homomorphism(eval) || !is_surjective(eval.map, b->size()))
            throw InternalConsistency("evaluation map from the free algebra is not an onto homomorphism");
        verdict.evaluation = std::move(eval);
    }
    return verdict;
}

namespace {

std::vector<std::size_t> support_indices(const CloneEntourage& e, std::size_t base,
                                         std::size_t arity, const char* side)
{
    if (e.arity != arity)
        throw InvalidArgument(std::string(side) + " entourage has arity " +
                              std::to_string(e.arity) + ", expected " + std::to_string(arity));
    std::vector<std::size_t> out;
    for (const auto& t : e.support) {
        if (t.size() != arity)
            throw InvalidArgument(std::string(side) + " support tuple of wrong length");
        for (Element x : t)
            if (x >= base)
                throw InvalidArgument(std::string(side) + " support tuple outside the carrier");
        out.push_back(tuple_index(t, base));
    }
    return out;
}

bool implication_holds(const NaturalHom& hom, const std::vector<std::size_t>& source,
                       const std::vector<std::size_t>& target)
{
    std::unordered_map<std::vector<Element>, std::vector<Element>, RowHash> seen;
    seen.reserve(hom.sourceLevel.size());
    std::vector<Element> key(source.size()), value(target.size());
    for (std::size_t m = 0; m < hom.sourceLevel.size(); ++m) {
        auto f = hom.sourceLevel.member(m);
        auto g = hom.image(m);
        for (std::size_t i = 0; i < source.size(); ++i)
            key[i] = f[source[i]];
        for (std::size_t i = 0; i < target.size(); ++i)
            value[i] = g[target[i]];
        auto [it, inserted] = seen.emplace(key, value);
        if (!inserted && it->second != value)
            return false;
    }
    return true;
}

} // namespace

bool uc_implication_holds(const NaturalHom& hom, const CloneEntourage& sourceSupport,
                          const CloneEntourage& targetSupport)
{
    return implication_holds(
        hom, support_indices(sourceSupport, hom.source->size(), hom.arity, "source"),
        support_indices(targetSupport, hom.target->size(), hom.arity, "target"));
}

CloneEntourage uc_witness(const NaturalHom& hom, const CloneEntourage& alpha)
{
    if (alpha.support.empty())
        throw InvalidArgument("entourage support must be nonempty");
    auto target = support_indices(alpha, hom.target->size(), hom.arity, "target");
    const std::size_t total = hom.sourceLevel.table_length();
    std::vector<std::size_t> kept(total);
    for (std::size_t i = 0; i < total; ++i)
        kept[i] = i;
    if (!implication_holds(hom, kept, target))
        throw InternalConsistency("full support fails the uniform continuity implication");
    for (std::size_t t = 0; t < total; ++t) {
        if (kept.size() == 1)
            break;
        std::vector<std::size_t> trial;
        trial.reserve(kept.size() - 1);
        for (auto k : kept)
            if (k != t)
                trial.push_back(k);
        if (implication_holds(hom, trial, target))
            kept = std::move(trial);
    }
    CloneEntourage e;
    e.arity = hom.arity;
    for (auto k : kept)
        e.support.push_back(tuple_decode(k, hom.source->size(), hom.arity));
    return e;
}

} // namespace ubirk
