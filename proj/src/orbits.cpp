#include "ubirk/orbits.hpp"

#include "ubirk/errors.hpp"

#include <numeric>

namespace ubirk {

std::size_t PowerSpace::points(const Caps& caps) const
{
    if (degree == 0)
        throw InvalidArgument("power space over an empty set");
    std::size_t n = checked_pow(degree, length, caps.spacePoints);
    if (n == 0)
        throw CapExceeded(std::to_string(degree) + "^" + std::to_string(length) +
                          " points exceed the space cap of " + std::to_string(caps.spacePoints));
    return n;
}

PermGroup induced_action(const PermGroup& group, const PowerSpace& space, const Caps& caps)
{
    if (space.degree != group.degree())
        throw InvalidArgument("space degree " + std::to_string(space.degree) +
                              " differs from group degree " + std::to_string(group.degree()));
    const std::size_t points = space.points(caps);
    std::vector<Perm> gens;
    std::vector<Element> tuple(space.length);
    for (const Perm& g : group.generators()) {
        Perm induced(points);
        std::fill(tuple.begin(), tuple.end(), 0);
        for (std::size_t x = 0; x < points; ++x) {
            std::size_t image = 0;
            for (Element t : tuple)
                image = image * space.degree + g[t];
            induced[x] = static_cast<Element>(image);
            tuple_next(tuple, space.degree);
        }
        gens.push_back(std::move(induced));
    }
    return PermGroup(points, std::move(gens));
}

namespace {

OrbitPartition orbits_bfs(const PermGroup& group)
{
    const std::size_t n = group.degree();
    constexpr std::uint32_t kNone = 0xffffffffu;
    OrbitPartition part;
    part.orbitIndex.assign(n, kNone);
    std::vector<std::uint32_t> queue;
    for (std::size_t start = 0; start < n; ++start) {
        if (part.orbitIndex[start] != kNone)
            continue;
        auto id = static_cast<std::uint32_t>(part.representatives.size());
        part.representatives.push_back(static_cast<std::uint32_t>(start));
        part.orbitIndex[start] = id;
        queue.assign(1, static_cast<std::uint32_t>(start));
        for (std::size_t head = 0; head < queue.size(); ++head) {
            std::uint32_t x = queue[head];
            for (const Perm& g : group.generators()) {
                std::uint32_t y = g[x];
                if (part.orbitIndex[y] == kNone) {
                    part.orbitIndex[y] = id;
                    queue.push_back(y);
                }
            }
        }
    }
    return part;
}

std::uint32_t find_root(std::vector<std::uint32_t>& parent, std::uint32_t x)
{
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

OrbitPartition orbits_union_find(const PermGroup& group)
{
    const std::size_t n = group.degree();
    std::vector<std::uint32_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0u);
    for (const Perm& g : group.generators())
        for (std::size_t x = 0; x < n; ++x) {
            std::uint32_t a = find_root(parent, static_cast<std::uint32_t>(x));
            std::uint32_t b = find_root(parent, g[x]);
            // Keep the smaller root so roots are least points.
            if (a < b)
                parent[b] = a;
            else if (b < a)
                parent[a] = b;
        }
    OrbitPartition part;
    part.orbitIndex.assign(n, 0);
    std::vector<std::uint32_t> idOfRoot(n, 0xffffffffu);
    for (std::size_t x = 0; x < n; ++x) {
        std::uint32_t r = find_root(parent, static_cast<std::uint32_t>(x));
        if (idOfRoot[r] == 0xffffffffu) {
            idOfRoot[r] = static_cast<std::uint32_t>(part.representatives.size());
            part.representatives.push_back(r);
        }
        part.orbitIndex[x] = idOfRoot[r];
    }
    return part;
}

} // namespace

OrbitPartition orbits(const PermGroup& group, OrbitBackend backend)
{
    return backend == OrbitBackend::Bfs ? orbits_bfs(group) : orbits_union_find(group);
}

OrbitPartition orbits(const PermGroup& group, const PowerSpace& space, const Caps& caps,
                      OrbitBackend backend)
{
    return orbits(induced_action(group, space, caps), backend);
}

std::vector<std::size_t> oligo_profile(const PermGroup& group, std::size_t maxArity,
                                       const Caps& caps)
{
    std::vector<std::size_t> counts;
    for (std::size_t n = 1; n <= maxArity; ++n)
        counts.push_back(orbits(group, PowerSpace{group.degree(), n}, caps).count());
    return counts;
}

ProbeReport precompactness_probe(const PermGroup& group, const std::vector<std::size_t>& schedule,
                                 const Caps& caps)
{
    ProbeReport report;
    for (std::size_t truncation : schedule) {
        PowerSpace space{group.degree(), truncation};
        std::size_t points = checked_pow(space.degree, space.length, caps.spacePoints);
        if (points == 0) {
            report.horizonReached = true;
            report.horizon = truncation;
            break;
        }
        ProbeLevel level;
        level.truncation = truncation;
        level.points = points;
        level.orbitCount = orbits(group, space, caps).count();
        if (!report.levels.empty() && report.levels.back().orbitCount > 0)
            level.growth = static_cast<double>(level.orbitCount) /
                           static_cast<double>(report.levels.back().orbitCount);
        report.levels.push_back(level);
    }
    std::size_t depth = report.levels.empty() ? 0 : report.levels.back().truncation;
    report.note = "evidence at depth " + std::to_string(depth) +
                  ": every probed truncation has finitely many orbits";
    return report;
}

} // namespace ubirk
