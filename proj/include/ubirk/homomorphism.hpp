#pragma once

#include "ubirk/algebra.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace ubirk {

struct Homomorphism {
    AlgebraPtr source;
    AlgebraPtr target;
    std::vector<Element> map;
};

struct HomViolation {
    std::size_t symbol = 0;
    std::vector<Element> args;
};

/// Exhaustive check of the homomorphism law. Returns the first violation in
/// (symbol, tuple) order, or nullopt when h is a homomorphism.
/// Throws on mismatched signatures or an ill-sized/out-of-range map.
std::optional<HomViolation> check_homomorphism(const FiniteAlgebra& source,
                                               const FiniteAlgebra& target,
                                               std::span<const Element> map);

inline std::optional<HomViolation> check_homomorphism(const Homomorphism& h)
{
    return check_homomorphism(*h.source, *h.target, h.map);
}

bool is_surjective(std::span<const Element> map, std::size_t targetSize);

/// A partial assignment source element -> target element.
struct Pin {
    Element source;
    Element target;
};

/// Backtracking search for a surjective homomorphism consistent with pins.
/// Variables: pinned sources first, then ascending; values ascending.
std::optional<Homomorphism> find_surjective_homomorphism(const AlgebraPtr& source,
                                                         const AlgebraPtr& target,
                                                         std::span<const Pin> pins = {});

} // namespace ubirk
