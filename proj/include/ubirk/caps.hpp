#pragma once

#include <cstddef>
#include <cstdint>

namespace ubirk {

/// Size limits shared by all constructions. Exceeding one is a reported error.
struct Caps {
    std::size_t cloneMembers = 1'000'000;
    std::size_t tableBytes = std::size_t{1} << 28;
    std::size_t productSize = 4096;
    std::size_t spacePoints = std::size_t{1} << 22;
};

/// base^exponent if it does not exceed `limit`, otherwise 0.
inline std::size_t checked_pow(std::size_t base, std::size_t exponent, std::size_t limit)
{
    std::size_t result = 1;
    for (std::size_t i = 0; i < exponent; ++i) {
        if (base != 0 && result > limit / base)
            return 0;
        result *= base;
    }
    return result > limit ? 0 : result;
}

} // namespace ubirk
