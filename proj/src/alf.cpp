#include "ubirk/alf.hpp"

#include "ubirk/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ubirk {

namespace {

constexpr const char* kAssumption =
    "finite carrier: the closed unary clone is Clo_1(A), so G(A) is read off Clo_1(A)";

CloneLevel complete_level(const AlgebraPtr& alg, std::size_t arity, const Caps& caps)
{
    CloneLevel level = clone_generate(alg, arity, caps);
    if (!level.complete())
        throw CapExceeded("Clo_" + std::to_string(arity) + " did not reach its fixpoint within " +
                          std::to_string(caps.cloneMembers) + " members");
    return level;
}

std::optional<std::size_t> find_row(const std::vector<std::vector<Element>>& sorted,
                                    const std::vector<Element>& row)
{
    auto it = std::lower_bound(sorted.begin(), sorted.end(), row);
    if (it == sorted.end() || *it != row)
        return std::nullopt;
    return static_cast<std::size_t>(it - sorted.begin());
}

// Orbits of G acting coordinatewise on a G-invariant set of sorted tuples.
OrbitPartition coordinatewise_orbits(const std::vector<Perm>& group,
                                     const std::vector<std::vector<Element>>& points)
{
    std::vector<Perm> induced;
    for (const Perm& g : group) {
        Perm p(points.size());
        std::vector<Element> image;
        for (std::size_t i = 0; i < points.size(); ++i) {
            image.clear();
            for (Element e : points[i])
                image.push_back(g[e]);
            auto j = find_row(points, image);
            if (!j)
                throw InternalConsistency("unary group element leaves a subuniverse");
            p[i] = static_cast<Element>(*j);
        }
        induced.push_back(std::move(p));
    }
    return orbits(PermGroup(points.size(), std::move(induced)));
}

FgOrbitResult fg_power_orbit_check_with(const AlgebraPtr& alg, const UnaryGroup& group,
                                        const CloneLevel& level, std::size_t power,
                                        const std::vector<std::vector<Element>>& generators,
                                        const Caps& caps)
{
    const std::size_t m = generators.size();
    FgOrbitResult out;
    out.power = power;
    out.generators = generators;

    Block block{alg.get(), power};
    ClosureResult closure = close_rows(std::span<const Block>(&block, 1), generators,
                                       ClosureLimits{caps.cloneMembers, caps.tableBytes});
    if (!closure.complete())
        throw CapExceeded("subalgebra of A^" + std::to_string(power) + " exceeds the member cap");
    out.subalgebra = sorted_rows(closure);

    // p(f)(j) = f(a_1(j), ..., a_m(j)) over Clo_m(A).
    std::vector<std::size_t> columnIndex(power);
    std::vector<Element> column(m);
    for (std::size_t j = 0; j < power; ++j) {
        for (std::size_t i = 0; i < m; ++i)
            column[i] = generators[i][j];
        columnIndex[j] = tuple_index(column, alg->size());
    }
    std::set<std::vector<Element>> image;
    std::vector<Element> row(power);
    for (std::size_t f = 0; f < level.size(); ++f) {
        auto table = level.member(f);
        for (std::size_t j = 0; j < power; ++j)
            row[j] = table[columnIndex[j]];
        image.insert(row);
    }
    if (!std::equal(image.begin(), image.end(), out.subalgebra.begin(), out.subalgebra.end()))
        throw InternalConsistency("p(Clo_" + std::to_string(m) +
                                  "(A)) differs from the generated subalgebra of A^" +
                                  std::to_string(power));

    if (out.subalgebra.empty())
        return out;
    OrbitPartition part = coordinatewise_orbits(group.elements, out.subalgebra);
    out.orbitCount = part.count();
    for (std::uint32_t r : part.representatives)
        out.representatives.push_back(out.subalgebra[r]);
    return out;
}

void check_generators(const FiniteAlgebra& alg, std::size_t power,
                      const std::vector<std::vector<Element>>& generators)
{
    if (power == 0)
        throw InvalidArgument("power must be at least 1");
    if (generators.empty())
        throw InvalidArgument("at least one generator is required");
    for (const auto& g : generators) {
        if (g.size() != power)
            throw InvalidArgument("generator of length " + std::to_string(g.size()) +
                                  " in A^" + std::to_string(power));
        for (Element e : g)
            if (e >= alg.size())
                throw InvalidArgument("element " + std::to_string(e) + " outside the carrier");
    }
}

} // namespace

PermGroup UnaryGroup::as_group() const
{
    return PermGroup(algebra->size(), elements);
}

UnaryGroup unary_group(const CloneLevel& unaryLevel)
{
    if (unaryLevel.arity() != 1)
        throw InvalidArgument("unary group needs the arity-1 clone level");
    if (!unaryLevel.complete())
        throw IncompleteLevel("Clo_1 is incomplete");
    UnaryGroup out;
    out.algebra = unaryLevel.algebra();
    for (std::size_t i = 0; i < unaryLevel.size(); ++i) {
        Perm f(unaryLevel.member(i).begin(), unaryLevel.member(i).end());
        if (!is_permutation(f))
            continue;
        if (unaryLevel.find(inverse_perm(f)))
            out.elements.push_back(std::move(f));
    }
    return out;
}

UnaryGroup unary_group(const AlgebraPtr& alg, const Caps& caps)
{
    CloneLevel level = clone_generate(alg, 1, caps);
    if (!level.complete())
        throw IncompleteLevel("Clo_1 did not reach its fixpoint within the caps");
    return unary_group(level);
}

std::vector<LocalFinitenessSample> locally_finite_check(
    const AlgebraPtr& alg, const std::vector<std::vector<Element>>& samples, const Caps& caps)
{
    std::map<std::size_t, CloneLevel> levels;
    std::vector<LocalFinitenessSample> out;
    for (const auto& a : samples) {
        if (a.empty())
            throw InvalidArgument("empty generator sample");
        for (Element e : a)
            if (e >= alg->size())
                throw InvalidArgument("element " + std::to_string(e) + " outside the carrier");
        auto it = levels.find(a.size());
        if (it == levels.end())
            it = levels.emplace(a.size(), complete_level(alg, a.size(), caps)).first;
        const CloneLevel& level = it->second;

        const std::size_t at = tuple_index(a, alg->size());
        std::vector<Element> image;
        for (std::size_t f = 0; f < level.size(); ++f)
            image.push_back(level.member(f)[at]);
        std::sort(image.begin(), image.end());
        image.erase(std::unique(image.begin(), image.end()), image.end());

        std::vector<Element> generated = generate_subalgebra(*alg, a);
        LocalFinitenessSample s;
        s.generators = a;
        s.subalgebraSize = generated.size();
        s.cloneSize = level.size();
        s.imageMatches = image == generated;
        out.push_back(std::move(s));
    }
    return out;
}

FgOrbitResult fg_power_orbit_check(const AlgebraPtr& alg, const UnaryGroup& group,
                                   std::size_t power,
                                   const std::vector<std::vector<Element>>& generators,
                                   const Caps& caps)
{
    check_generators(*alg, power, generators);
    if (group.algebra && group.algebra->size() != alg->size())
        throw InvalidArgument("unary group belongs to a different carrier");
    CloneLevel level = complete_level(alg, generators.size(), caps);
    return fg_power_orbit_check_with(alg, group, level, power, generators, caps);
}

AlfReport alf_orbit_counts(const AlgebraPtr& alg, std::size_t maxArity,
                           std::size_t sampleGenerators, const Caps& caps)
{
    if (maxArity == 0)
        throw InvalidArgument("maximum arity must be at least 1");
    if (sampleGenerators == 0)
        throw InvalidArgument("sample generator count must be at least 1");
    AlfReport report;
    report.assumption = kAssumption;
    UnaryGroup group = unary_group(alg, caps);
    report.unaryGroup = group.elements;

    std::map<std::size_t, CloneLevel> levels;
    auto level_of = [&](std::size_t n) -> const CloneLevel& {
        auto it = levels.find(n);
        if (it == levels.end())
            it = levels.emplace(n, complete_level(alg, n, caps)).first;
        return it->second;
    };

    for (std::size_t n = 1; n <= maxArity; ++n) {
        const CloneLevel& level = level_of(n);
        // g . f = g o f as a permutation of member indices.
        std::vector<Perm> induced;
        std::vector<Element> composed(level.table_length());
        for (const Perm& g : group.elements) {
            Perm p(level.size());
            for (std::size_t f = 0; f < level.size(); ++f) {
                auto table = level.member(f);
                for (std::size_t x = 0; x < table.size(); ++x)
                    composed[x] = g[table[x]];
                auto j = level.find(composed);
                if (!j)
                    throw InternalConsistency("g o f left Clo_" + std::to_string(n));
                p[f] = static_cast<Element>(*j);
            }
            induced.push_back(std::move(p));
        }
        AlfArity entry;
        entry.arity = n;
        entry.cloneSize = level.size();
        entry.orbitCount = orbits(PermGroup(level.size(), std::move(induced))).count();
        report.arities.push_back(entry);
    }

    // Subalgebras of A^n generated by up to sampleGenerators distinct elements,
    // one entry per distinct subalgebra.
    for (std::size_t n = 1; n <= maxArity; ++n) {
        const std::size_t points = checked_pow(alg->size(), n, caps.productSize);
        if (points == 0)
            throw CapExceeded("A^" + std::to_string(n) + " exceeds the product size cap");
        std::set<std::vector<std::vector<Element>>> seen;
        for (std::size_t m = 1; m <= std::min(sampleGenerators, points); ++m) {
            const CloneLevel& level = level_of(m);
            std::vector<std::size_t> pick(m);
            for (std::size_t i = 0; i < m; ++i)
                pick[i] = i;
            while (true) {
                std::vector<std::vector<Element>> gens;
                for (std::size_t i : pick)
                    gens.push_back(tuple_decode(i, alg->size(), n));
                FgOrbitResult r = fg_power_orbit_check_with(alg, group, level, n, gens, caps);
                if (seen.insert(r.subalgebra).second)
                    report.subalgebras.push_back(std::move(r));
                // Next strictly increasing index list.
                std::size_t i = m;
                while (i > 0 && pick[i - 1] == points - m + i - 1)
                    --i;
                if (i == 0)
                    break;
                ++pick[i - 1];
                for (std::size_t j = i; j < m; ++j)
                    pick[j] = pick[j - 1] + 1;
            }
        }
    }
    return report;
}

std::vector<FgOligoEntry> oligo_on_fg_subalgebras(const AlgebraPtr& alg, std::size_t maxArity,
                                                  std::size_t sampleGenerators, const Caps& caps)
{
    UnaryGroup group = unary_group(alg, caps);
    std::vector<FgOligoEntry> out;
    std::set<std::vector<Element>> seen;
    for (const auto& gens : sample_generator_tuples(alg->size(), sampleGenerators)) {
        std::vector<Element> sub = generate_subalgebra(*alg, gens);
        if (!seen.insert(sub).second)
            continue;
        std::vector<Perm> restricted;
        for (const Perm& g : group.elements) {
            Perm p(sub.size());
            for (std::size_t i = 0; i < sub.size(); ++i) {
                auto it = std::lower_bound(sub.begin(), sub.end(), g[sub[i]]);
                if (it == sub.end() || *it != g[sub[i]])
                    throw InternalConsistency("unary group element leaves a subuniverse");
                p[i] = static_cast<Element>(it - sub.begin());
            }
            restricted.push_back(std::move(p));
        }
        FgOligoEntry entry;
        entry.generators = gens;
        entry.subalgebra = sub;
        entry.profile = oligo_profile(PermGroup(sub.size(), std::move(restricted)), maxArity, caps);
        out.push_back(std::move(entry));
    }
    return out;
}

std::vector<std::vector<Element>> sample_generator_tuples(std::size_t carrier, std::size_t count)
{
    std::vector<std::vector<Element>> out;
    for (std::size_t len = 1; len <= count; ++len) {
        std::vector<Element> t(len, 0);
        do
            out.push_back(t);
        while (tuple_next(t, carrier));
    }
    return out;
}

} // namespace ubirk
