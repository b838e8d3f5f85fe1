#include "ubirk/entourage.hpp"

#include "ubirk/errors.hpp"

#include <algorithm>
#include <numeric>

namespace ubirk {

SpaceEntourage::SpaceEntourage(std::size_t points) : points_(points), bits_(points * points, false)
{
}

SpaceEntourage::SpaceEntourage(std::size_t points,
                               std::vector<std::pair<std::size_t, std::size_t>> pairs)
    : SpaceEntourage(points)
{
    for (auto [x, y] : pairs) {
        if (x >= points || y >= points)
            throw InvalidArgument("entourage pair (" + std::to_string(x) + ", " +
                                  std::to_string(y) + ") outside " + std::to_string(points) +
                                  " points");
        bits_[x * points + y] = true;
    }
}

SpaceEntourage SpaceEntourage::kernel(const PowerSpace& space,
                                      const std::vector<std::size_t>& support, const Caps& caps)
{
    const std::size_t n = space.points(caps);
    if (n > caps.spacePoints / n)
        throw CapExceeded("entourage on " + std::to_string(n) + " points exceeds the space cap");
    for (std::size_t s : support)
        if (s >= space.length)
            throw InvalidArgument("support index " + std::to_string(s) + " outside truncation of length " +
                                  std::to_string(space.length));
    // Key each point by its restriction to the support; equal keys are related.
    std::vector<std::size_t> key(n);
    std::vector<Element> tuple(space.length, 0);
    for (std::size_t x = 0; x < n; ++x) {
        std::size_t k = 0;
        for (std::size_t s : support)
            k = k * space.degree + tuple[s];
        key[x] = k;
        tuple_next(tuple, space.degree);
    }
    SpaceEntourage e(n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (key[x] == key[y])
                e.bits_[x * n + y] = true;
    return e;
}

SpaceEntourage SpaceEntourage::diagonal(std::size_t points)
{
    SpaceEntourage e(points);
    for (std::size_t x = 0; x < points; ++x)
        e.bits_[x * points + x] = true;
    return e;
}

SpaceEntourage SpaceEntourage::full(std::size_t points)
{
    SpaceEntourage e(points);
    e.bits_.assign(points * points, true);
    return e;
}

std::vector<std::size_t> SpaceEntourage::ball(std::size_t x) const
{
    std::vector<std::size_t> out;
    for (std::size_t y = 0; y < points_; ++y)
        if (contains(x, y))
            out.push_back(y);
    return out;
}

std::optional<InvarianceViolation> invariance_check(const PermGroup& pointAction,
                                                    const SpaceEntourage& alpha)
{
    if (pointAction.degree() != alpha.points())
        throw InvalidArgument("group degree differs from entourage space");
    const std::size_t n = alpha.points();
    const auto& gens = pointAction.generators();
    for (std::size_t g = 0; g < gens.size(); ++g)
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                if (alpha.contains(x, y) && !alpha.contains(gens[g][x], gens[g][y]))
                    return InvarianceViolation{g, x, y};
    return std::nullopt;
}

QuotientEntourage quotient_entourage(const OrbitPartition& part, const SpaceEntourage& alpha)
{
    if (part.space_size() != alpha.points())
        throw InvalidArgument("orbit partition and entourage live on different spaces");
    QuotientEntourage q;
    q.orbitCount = part.count();
    q.related.assign(q.orbitCount * q.orbitCount, false);
    const std::size_t n = alpha.points();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (alpha.contains(x, y))
                q.related[part.orbitIndex[x] * q.orbitCount + part.orbitIndex[y]] = true;
    q.reflexive = true;
    q.symmetric = true;
    for (std::size_t p = 0; p < q.orbitCount; ++p) {
        q.reflexive = q.reflexive && q.contains(p, p);
        for (std::size_t r = 0; r < q.orbitCount; ++r)
            q.symmetric = q.symmetric && q.contains(p, r) == q.contains(r, p);
    }
    return q;
}

OpennessReport pi_open_check(const PermGroup& pointAction, const OrbitPartition& part,
                             const SpaceEntourage& alpha, std::vector<std::size_t> sample)
{
    const std::size_t n = alpha.points();
    if (pointAction.degree() != n || part.space_size() != n)
        throw InvalidArgument("group, partition and entourage live on different spaces");
    if (sample.empty()) {
        sample.resize(n);
        std::iota(sample.begin(), sample.end(), std::size_t{0});
    }
    const QuotientEntourage quotient = quotient_entourage(part, alpha);

    OpennessReport report;
    for (std::size_t x : sample) {
        if (x >= n)
            throw InvalidArgument("sample point " + std::to_string(x) + " outside the space");
        ++report.pointsChecked;

        // GU by closing U = B_alpha(x) under the generators.
        std::vector<bool> saturated(n, false);
        std::vector<std::size_t> queue = alpha.ball(x);
        for (std::size_t u : queue)
            saturated[u] = true;
        for (std::size_t head = 0; head < queue.size(); ++head)
            for (const Perm& g : pointAction.generators()) {
                std::size_t v = g[queue[head]];
                if (!saturated[v]) {
                    saturated[v] = true;
                    queue.push_back(v);
                }
            }

        std::vector<bool> orbitHit(part.count(), false);
        for (std::size_t u : alpha.ball(x))
            orbitHit[part.orbitIndex[u]] = true;

        const std::uint32_t px = part.orbitIndex[x];
        std::vector<bool> ballOfOrbit(n, false);
        for (std::size_t z = 0; z < n; ++z)
            if (part.orbitIndex[z] == px)
                for (std::size_t y = 0; y < n; ++y)
                    if (alpha.contains(z, y))
                        ballOfOrbit[y] = true;

        bool same = true;
        for (std::size_t y = 0; y < n && same; ++y) {
            bool preimage = orbitHit[part.orbitIndex[y]];
            bool quotientBall = quotient.contains(px, part.orbitIndex[y]);
            same = saturated[y] == preimage && preimage == ballOfOrbit[y] &&
                   ballOfOrbit[y] == quotientBall;
        }
        if (!same) {
            report.holds = false;
            report.failingPoint = x;
            break;
        }
    }
    return report;
}

HausdorffClasses hausdorff_classes(const OrbitPartition& part,
                                   const std::vector<SpaceEntourage>& base)
{
    const std::size_t m = part.count();
    std::vector<bool> related(m * m, true);
    for (const SpaceEntourage& alpha : base) {
        QuotientEntourage q = quotient_entourage(part, alpha);
        for (std::size_t i = 0; i < m * m; ++i)
            related[i] = related[i] && q.related[i];
    }

    std::vector<std::uint32_t> parent(m);
    std::iota(parent.begin(), parent.end(), 0u);
    auto root = [&](std::uint32_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::uint32_t p = 0; p < m; ++p)
        for (std::uint32_t q = 0; q < m; ++q)
            if (related[p * m + q]) {
                std::uint32_t a = root(p), b = root(q);
                if (a != b)
                    parent[std::max(a, b)] = std::min(a, b);
            }

    HausdorffClasses out;
    out.classOfOrbit.assign(m, 0);
    std::vector<std::uint32_t> idOfRoot(m, 0xffffffffu);
    for (std::uint32_t p = 0; p < m; ++p) {
        std::uint32_t r = root(p);
        if (idOfRoot[r] == 0xffffffffu)
            idOfRoot[r] = static_cast<std::uint32_t>(out.classCount++);
        out.classOfOrbit[p] = idOfRoot[r];
    }
    for (std::size_t p = 0; p < m && out.intersectionTransitive; ++p)
        for (std::size_t q = 0; q < m; ++q)
            if (out.classOfOrbit[p] == out.classOfOrbit[q] && !related[p * m + q]) {
                out.intersectionTransitive = false;
                break;
            }
    return out;
}

} // namespace ubirk
