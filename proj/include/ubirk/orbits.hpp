#pragma once

#include "ubirk/caps.hpp"
#include "ubirk/perm_group.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace ubirk {

/// All functions F -> X for a formal index list F of the given length,
/// indexed lexicographically. X^n is the case length = n. The group acts
/// canonically: (g f)(y) = g(f(y)).
struct PowerSpace {
    std::size_t degree = 0;
    std::size_t length = 0;

    /// Number of points; throws CapExceeded above caps.spacePoints.
    std::size_t points(const Caps& caps = {}) const;
};

/// The action of each generator on the points of the space.
PermGroup induced_action(const PermGroup& group, const PowerSpace& space, const Caps& caps = {});

struct OrbitPartition {
    std::vector<std::uint32_t> orbitIndex;        // point -> orbit id
    std::vector<std::uint32_t> representatives;   // orbit id -> least point

    std::size_t space_size() const noexcept { return orbitIndex.size(); }
    std::size_t count() const noexcept { return representatives.size(); }

    friend bool operator==(const OrbitPartition&, const OrbitPartition&) = default;
};

enum class OrbitBackend { Bfs, UnionFind };

/// Orbits of the group on its own points. Orbit ids ascend with their least
/// point, so both backends return identical partitions.
OrbitPartition orbits(const PermGroup& group, OrbitBackend backend = OrbitBackend::Bfs);

OrbitPartition orbits(const PermGroup& group, const PowerSpace& space, const Caps& caps = {},
                      OrbitBackend backend = OrbitBackend::Bfs);

/// Orbit counts of X^n / G for n = 1..maxArity.
std::vector<std::size_t> oligo_profile(const PermGroup& group, std::size_t maxArity,
                                       const Caps& caps = {});

struct ProbeLevel {
    std::size_t truncation = 0;
    std::size_t points = 0;
    std::size_t orbitCount = 0;
    double growth = 0.0;  // orbitCount / previous orbitCount; 0 for the first level
};

/// Orbit counts of pr_F(X^Y)/G for growing |F|. Evidence at the probed depth
/// only; a cap hit ends the probe and is recorded as its horizon.
struct ProbeReport {
    std::vector<ProbeLevel> levels;
    bool horizonReached = false;
    std::size_t horizon = 0;  // first truncation not probed, when horizonReached
    std::string note;
};

ProbeReport precompactness_probe(const PermGroup& group, const std::vector<std::size_t>& schedule,
                                 const Caps& caps = {});

} // namespace ubirk
