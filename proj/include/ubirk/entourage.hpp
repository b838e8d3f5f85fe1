#pragma once

#include "ubirk/orbits.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace ubirk {

/// A relation on the points of a finite space, stored densely.
class SpaceEntourage {
public:
    SpaceEntourage(std::size_t points, std::vector<std::pair<std::size_t, std::size_t>> pairs);

    /// ker pr_S on a power space: functions agreeing on the index positions S.
    static SpaceEntourage kernel(const PowerSpace& space, const std::vector<std::size_t>& support,
                                 const Caps& caps = {});
    static SpaceEntourage diagonal(std::size_t points);
    static SpaceEntourage full(std::size_t points);

    std::size_t points() const noexcept { return points_; }
    bool contains(std::size_t x, std::size_t y) const { return bits_[x * points_ + y]; }
    /// B_alpha(x) in ascending order.
    std::vector<std::size_t> ball(std::size_t x) const;

private:
    explicit SpaceEntourage(std::size_t points);

    std::size_t points_;
    std::vector<bool> bits_;
};

struct InvarianceViolation {
    std::size_t generator = 0;
    std::size_t x = 0;
    std::size_t y = 0;
};

/// (gx, gy) in alpha for every generator g of the point action and (x, y) in alpha.
std::optional<InvarianceViolation> invariance_check(const PermGroup& pointAction,
                                                    const SpaceEntourage& alpha);

/// alpha/G: orbit pairs (P, Q) with (P x Q) meeting alpha.
struct QuotientEntourage {
    std::size_t orbitCount = 0;
    std::vector<bool> related;  // orbitCount x orbitCount
    bool reflexive = false;
    bool symmetric = false;

    bool contains(std::size_t p, std::size_t q) const { return related[p * orbitCount + q]; }
};

QuotientEntourage quotient_entourage(const OrbitPartition& part, const SpaceEntourage& alpha);

struct OpennessReport {
    bool holds = true;
    std::size_t pointsChecked = 0;
    std::optional<std::size_t> failingPoint;
};

/// For each sampled x, with U = B_alpha(x): the saturation GU (closed under
/// generators), pi^-1(pi(U)), B_alpha(Gx), and the preimage of the quotient
/// ball B_{alpha/G}(Gx) all coincide. Empty sample means every point.
OpennessReport pi_open_check(const PermGroup& pointAction, const OrbitPartition& part,
                             const SpaceEntourage& alpha, std::vector<std::size_t> sample = {});

struct HausdorffClasses {
    std::vector<std::uint32_t> classOfOrbit;  // orbit id -> class id (by least orbit)
    std::size_t classCount = 0;
    bool intersectionTransitive = true;       // raw intersection needed no closure
};

/// Orbits related by alpha/G for every alpha in the base, closed transitively.
HausdorffClasses hausdorff_classes(const OrbitPartition& part,
                                   const std::vector<SpaceEntourage>& base);

} // namespace ubirk
