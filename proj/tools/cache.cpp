#include "cache.hpp"

#include "ubirk/errors.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <sstream>
#include <unistd.h>
#include <unordered_map>

namespace ubirk::app {

std::string sha256_hex(std::string_view bytes)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1)
        throw Error("SHA-256 digest failed");
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < length; ++i) {
        out.push_back(kHex[digest[i] >> 4]);
        out.push_back(kHex[digest[i] & 15]);
    }
    return out;
}

namespace {

constexpr std::string_view kMagic = "ubirk-cache 1";

std::string level_key(std::string_view algebraBytes, std::size_t arity)
{
    std::string input = "clone-level\n";
    input += std::to_string(arity);
    input += '\n';
    input += algebraBytes;
    return sha256_hex(input);
}

std::string orbit_key(std::string_view groupBytes, std::size_t length)
{
    std::string input = "orbits\n";
    input += std::to_string(length);
    input += '\n';
    input += groupBytes;
    return sha256_hex(input);
}

// Witness terms are written as a node list so shared subterms stay shared.
std::string encode_level(const CloneLevel& level)
{
    std::ostringstream nodes;
    std::unordered_map<const void*, std::size_t> ids;
    std::size_t next = 0;
    auto visit = [&](auto& self, const Term& t) -> std::size_t {
        if (auto it = ids.find(t.node_id()); it != ids.end())
            return it->second;
        std::vector<std::size_t> children;
        for (const Term& c : t.children())
            children.push_back(self(self, c));
        if (t.is_var()) {
            nodes << "v " << t.var_index() << '\n';
        } else {
            nodes << "a " << t.symbol();
            for (std::size_t c : children)
                nodes << ' ' << c;
            nodes << '\n';
        }
        ids.emplace(t.node_id(), next);
        return next++;
    };
    std::vector<std::size_t> roots;
    for (std::size_t i = 0; i < level.size(); ++i)
        roots.push_back(visit(visit, level.witness(i)));

    std::ostringstream body;
    body << "arity " << level.arity() << '\n'
         << "members " << level.size() << '\n'
         << "nodes " << next << '\n'
         << nodes.str();
    for (std::size_t i = 0; i < level.size(); ++i) {
        body << roots[i];
        for (Element e : level.member(i))
            body << ' ' << e;
        body << '\n';
    }
    return body.str();
}

std::optional<CloneLevel> decode_level(const AlgebraPtr& alg, std::size_t arity,
                                       const std::string& body)
{
    std::istringstream in(body);
    std::string word;
    std::size_t storedArity = 0, members = 0, nodeCount = 0;
    if (!(in >> word >> storedArity) || word != "arity" || storedArity != arity)
        return std::nullopt;
    if (!(in >> word >> members) || word != "members")
        return std::nullopt;
    if (!(in >> word >> nodeCount) || word != "nodes")
        return std::nullopt;
    const Signature& sig = alg->signature();
    std::vector<Term> nodes;
    nodes.reserve(nodeCount);
    for (std::size_t i = 0; i < nodeCount; ++i) {
        if (!(in >> word))
            return std::nullopt;
        if (word == "v") {
            std::size_t v = 0;
            if (!(in >> v) || v == 0 || v > arity)
                return std::nullopt;
            nodes.push_back(Term::var(v));
        } else if (word == "a") {
            std::size_t s = 0;
            if (!(in >> s) || s >= sig.size())
                return std::nullopt;
            std::vector<Term> children;
            for (std::size_t c = 0; c < sig[s].arity; ++c) {
                std::size_t id = 0;
                if (!(in >> id) || id >= nodes.size())
                    return std::nullopt;
                children.push_back(nodes[id]);
            }
            nodes.push_back(Term::app(sig, s, std::move(children)));
        } else {
            return std::nullopt;
        }
    }
    const std::size_t length = checked_pow(alg->size(), arity, std::size_t(-1));
    std::vector<Element> rows;
    std::vector<Term> witnesses;
    for (std::size_t i = 0; i < members; ++i) {
        std::size_t root = 0;
        if (!(in >> root) || root >= nodes.size())
            return std::nullopt;
        witnesses.push_back(nodes[root]);
        for (std::size_t j = 0; j < length; ++j) {
            Element e = 0;
            if (!(in >> e) || e >= alg->size())
                return std::nullopt;
            rows.push_back(e);
        }
    }
    if (in >> word)
        return std::nullopt;
    return CloneLevel(alg, arity, std::move(rows), std::move(witnesses), true);
}

} // namespace

Cache::Cache(std::optional<std::filesystem::path> dir) : dir_(std::move(dir)) {}

std::optional<std::string> Cache::load(const std::string& key, std::string_view kind) const
{
    if (!dir_)
        return std::nullopt;
    std::ifstream in(*dir_ / key, std::ios::binary);
    if (!in)
        return std::nullopt;
    std::string magic, kindLine, digestLine;
    if (!std::getline(in, magic) || magic != kMagic)
        return std::nullopt;
    if (!std::getline(in, kindLine) || kindLine != "kind " + std::string(kind))
        return std::nullopt;
    if (!std::getline(in, digestLine) || digestLine.rfind("digest ", 0) != 0)
        return std::nullopt;
    std::ostringstream rest;
    rest << in.rdbuf();
    std::string body = rest.str();
    if (digestLine.substr(7) != sha256_hex(body))
        return std::nullopt;
    return body;
}

void Cache::store(const std::string& key, std::string_view kind, const std::string& body) const
{
    if (!dir_)
        return;
    std::error_code ec;
    std::filesystem::create_directories(*dir_, ec);
    if (ec)
        return;
    const auto final = *dir_ / key;
    const auto temp = *dir_ / (key + ".tmp." + std::to_string(::getpid()));
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out)
            return;
        out << kMagic << '\n' << "kind " << kind << '\n' << "digest " << sha256_hex(body) << '\n'
            << body;
        if (!out.flush())
            return;
    }
    std::filesystem::rename(temp, final, ec);
    if (ec)
        std::filesystem::remove(temp, ec);
}

std::optional<CloneLevel> Cache::load_level(const AlgebraPtr& alg, std::string_view algebraBytes,
                                            std::size_t arity) const
{
    auto body = load(level_key(algebraBytes, arity), "clone-level");
    if (!body)
        return std::nullopt;
    try {
        return decode_level(alg, arity, *body);
    } catch (const Error&) {
        return std::nullopt;
    }
}

void Cache::store_level(std::string_view algebraBytes, const CloneLevel& level) const
{
    if (!level.complete())
        return;
    store(level_key(algebraBytes, level.arity()), "clone-level", encode_level(level));
}

std::optional<OrbitPartition> Cache::load_orbits(std::string_view groupBytes,
                                                 std::size_t length) const
{
    auto body = load(orbit_key(groupBytes, length), "orbits");
    if (!body)
        return std::nullopt;
    std::istringstream in(*body);
    std::string word;
    std::size_t points = 0;
    if (!(in >> word >> points) || word != "points")
        return std::nullopt;
    OrbitPartition part;
    part.orbitIndex.resize(points);
    for (std::size_t x = 0; x < points; ++x) {
        if (!(in >> part.orbitIndex[x]))
            return std::nullopt;
        // Ids must appear in order of least point.
        if (part.orbitIndex[x] == part.representatives.size())
            part.representatives.push_back(static_cast<std::uint32_t>(x));
        else if (part.orbitIndex[x] > part.representatives.size())
            return std::nullopt;
    }
    if (in >> word)
        return std::nullopt;
    return part;
}

void Cache::store_orbits(std::string_view groupBytes, std::size_t length,
                         const OrbitPartition& part) const
{
    std::ostringstream body;
    body << "points " << part.space_size() << '\n';
    for (std::size_t x = 0; x < part.space_size(); ++x)
        body << part.orbitIndex[x] << (x + 1 == part.space_size() ? "\n" : " ");
    store(orbit_key(groupBytes, length), "orbits", body.str());
}

} // namespace ubirk::app
