#pragma once

#include "ubirk/algebra.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace ubirk {

/// One factor of an implicit product: `length` coordinates, each ranging over `algebra`.
struct Block {
    const FiniteAlgebra* algebra = nullptr;
    std::size_t length = 0;
};

/// How a row entered the closure.
struct Derivation {
    static constexpr std::size_t kSeed = std::numeric_limits<std::size_t>::max();

    std::size_t symbol = kSeed;           // kSeed for seeds
    std::size_t seed = 0;                 // seed position, for seeds
    std::vector<std::uint32_t> parents;   // discovery indices, for compositions
};

enum class ClosureStop { Fixpoint, FullSpace, MemberCap, ByteCap, Aborted };

/// Rows in discovery (breadth-first) order.
struct ClosureResult {
    std::size_t rowLength = 0;
    std::vector<Element> rows;
    std::vector<Derivation> derivations;
    ClosureStop stop = ClosureStop::Fixpoint;

    std::size_t count() const noexcept { return derivations.size(); }
    std::span<const Element> row(std::size_t i) const
    {
        return {rows.data() + i * rowLength, rowLength};
    }
    bool complete() const noexcept
    {
        return stop == ClosureStop::Fixpoint || stop == ClosureStop::FullSpace;
    }
};

struct ClosureLimits {
    std::size_t members = std::numeric_limits<std::size_t>::max();
    std::size_t bytes = std::numeric_limits<std::size_t>::max();
};

/// Called once per new row with its discovery index; returning false aborts.
using RowObserver = std::function<bool(std::size_t, std::span<const Element>)>;

/// Subuniverse of the product of the blocks generated by `seeds`, by a
/// semi-naive breadth-first worklist. All blocks share one signature.
/// Round r composes argument tuples with at least one row found in round r-1;
/// within a round, symbols go in signature order. Duplicate seeds are dropped.
ClosureResult close_rows(std::span<const Block> blocks,
                         std::span<const std::vector<Element>> seeds,
                         const ClosureLimits& limits = {},
                         const RowObserver& observer = {});

/// Componentwise application of `symbol` to rows of the block product.
void compose_rows(std::span<const Block> blocks, std::size_t symbol,
                  std::span<const std::span<const Element>> args, std::span<Element> out);

/// Sorted, deduplicated copy of a set of rows.
std::vector<std::vector<Element>> sorted_rows(const ClosureResult& result);

} // namespace ubirk
