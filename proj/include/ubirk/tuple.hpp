#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ubirk {

/// Carrier elements are 0-based indices.
using Element = std::uint32_t;

/// Row-major index of a tuple over {0..base-1}; the first coordinate is most significant.
inline std::size_t tuple_index(std::span<const Element> tuple, std::size_t base)
{
    std::size_t index = 0;
    for (Element e : tuple)
        index = index * base + e;
    return index;
}

/// Inverse of tuple_index; writes `out.size()` coordinates.
inline void tuple_decode(std::size_t index, std::size_t base, std::span<Element> out)
{
    for (std::size_t i = out.size(); i-- > 0;) {
        out[i] = static_cast<Element>(index % base);
        index /= base;
    }
}

inline std::vector<Element> tuple_decode(std::size_t index, std::size_t base, std::size_t length)
{
    std::vector<Element> out(length);
    tuple_decode(index, base, out);
    return out;
}

/// Advances `tuple` to its lexicographic successor over {0..base-1}; false after the last one.
inline bool tuple_next(std::span<Element> tuple, std::size_t base)
{
    for (std::size_t i = tuple.size(); i-- > 0;) {
        if (++tuple[i] < base)
            return true;
        tuple[i] = 0;
    }
    return false;
}

} // namespace ubirk
