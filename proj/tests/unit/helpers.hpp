#pragma once

#include "ubirk/algebra_io.hpp"

#include <algorithm>
#include <string>

#ifndef UBIRK_DATA_DIR
#error "UBIRK_DATA_DIR must point at the data directory"
#endif

inline std::string data_path(const std::string& name)
{
    return std::string(UBIRK_DATA_DIR) + "/" + name;
}

inline ubirk::AlgebraPtr data_algebra(const std::string& name)
{
    return ubirk::share(ubirk::load_algebra(data_path(name)));
}

/// Integers mod n under addition.
inline ubirk::FiniteAlgebra cyclic(std::size_t n)
{
    std::vector<ubirk::Element> add(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            add[a * n + b] = static_cast<ubirk::Element>((a + b) % n);
    return ubirk::FiniteAlgebra(ubirk::Signature({{"add", 2}}), n, {add},
                                "Z" + std::to_string(n));
}

/// Same signature, carrier and tables; labels are ignored.
inline bool same_structure(const ubirk::FiniteAlgebra& a, const ubirk::FiniteAlgebra& b)
{
    if (a.signature() != b.signature() || a.size() != b.size())
        return false;
    for (std::size_t s = 0; s < a.signature().size(); ++s)
        if (!std::equal(a.table(s).begin(), a.table(s).end(), b.table(s).begin(), b.table(s).end()))
            return false;
    return true;
}
