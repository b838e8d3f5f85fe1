#pragma once

#include "ubirk/clone.hpp"
#include "ubirk/orbits.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace ubirk::app {

/// Hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);

/// On-disk store of completed clone levels and orbit partitions. Entries are
/// keyed by a digest of their inputs and carry a digest of their own body;
/// unreadable or corrupt entries count as misses. Without a directory every
/// lookup misses and stores are dropped.
class Cache {
public:
    explicit Cache(std::optional<std::filesystem::path> dir = std::nullopt);

    bool enabled() const noexcept { return dir_.has_value(); }

    std::optional<CloneLevel> load_level(const AlgebraPtr& alg, std::string_view algebraBytes,
                                         std::size_t arity) const;
    void store_level(std::string_view algebraBytes, const CloneLevel& level) const;

    std::optional<OrbitPartition> load_orbits(std::string_view groupBytes,
                                              std::size_t length) const;
    void store_orbits(std::string_view groupBytes, std::size_t length,
                      const OrbitPartition& part) const;

private:
    std::optional<std::string> load(const std::string& key, std::string_view kind) const;
    void store(const std::string& key, std::string_view kind, const std::string& body) const;

    std::optional<std::filesystem::path> dir_;
};

} // namespace ubirk::app
