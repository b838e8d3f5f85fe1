#include "ubirk/power_closure.hpp"

#include "ubirk/errors.hpp"

#include <algorithm>
#include <cstring>

namespace ubirk {

namespace {

std::uint64_t hash_row(const Element* row, std::size_t length)
{
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ length;
    for (std::size_t i = 0; i < length; ++i) {
        h ^= row[i] + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 0xff51afd7ed558ccdULL;
    }
    return h ^ (h >> 33);
}

// Flat row storage with an open-addressing index.
class RowSet {
public:
    explicit RowSet(std::size_t length) : length_(length), slots_(1024, kEmpty) {}

    std::size_t size() const noexcept { return count_; }
    const Element* row(std::size_t i) const { return data_.data() + i * length_; }

    // Index of an equal row, or npos.
    std::size_t find(const Element* candidate) const
    {
        std::size_t mask = slots_.size() - 1;
        for (std::size_t s = hash_row(candidate, length_) & mask;; s = (s + 1) & mask) {
            std::uint32_t idx = slots_[s];
            if (idx == kEmpty)
                return npos;
            if (std::memcmp(row(idx), candidate, length_ * sizeof(Element)) == 0)
                return idx;
        }
    }

    void insert(const Element* candidate)
    {
        if ((count_ + 1) * 2 > slots_.size())
            grow();
        data_.insert(data_.end(), candidate, candidate + length_);
        place(static_cast<std::uint32_t>(count_));
        ++count_;
    }

    std::vector<Element> release() { return std::move(data_); }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    static constexpr std::uint32_t kEmpty = 0xffffffffu;

    void place(std::uint32_t idx)
    {
        std::size_t mask = slots_.size() - 1;
        std::size_t s = hash_row(row(idx), length_) & mask;
        while (slots_[s] != kEmpty)
            s = (s + 1) & mask;
        slots_[s] = idx;
    }

    void grow()
    {
        slots_.assign(slots_.size() * 2, kEmpty);
        for (std::size_t i = 0; i < count_; ++i)
            place(static_cast<std::uint32_t>(i));
    }

    std::size_t length_;
    std::vector<Element> data_;
    std::vector<std::uint32_t> slots_;
    std::size_t count_ = 0;
};

void compose_into(std::span<const Block> blocks, std::size_t symbol, std::size_t arity,
                  const Element* const* args, Element* out)
{
    std::size_t offset = 0;
    for (const Block& b : blocks) {
        const FiniteAlgebra& alg = *b.algebra;
        const Element* table = alg.table(symbol).data();
        const std::size_t k = alg.size();
        const std::size_t end = offset + b.length;
        switch (arity) {
        case 0:
            for (std::size_t i = offset; i < end; ++i)
                out[i] = table[0];
            break;
        case 1:
            for (std::size_t i = offset; i < end; ++i)
                out[i] = table[args[0][i]];
            break;
        case 2:
            for (std::size_t i = offset; i < end; ++i)
                out[i] = table[args[0][i] * k + args[1][i]];
            break;
        default:
            for (std::size_t i = offset; i < end; ++i) {
                std::size_t idx = 0;
                for (std::size_t j = 0; j < arity; ++j)
                    idx = idx * k + args[j][i];
                out[i] = table[idx];
            }
        }
        offset = end;
    }
}

std::size_t space_size(std::span<const Block> blocks)
{
    const std::size_t limit = std::numeric_limits<std::size_t>::max() / 2;
    std::size_t total = 1;
    for (const Block& b : blocks) {
        std::size_t part = checked_pow(b.algebra->size(), b.length, limit);
        if (part == 0 || total > limit / part)
            return 0;  // unbounded for our purposes
        total *= part;
    }
    return total;
}

} // namespace

void compose_rows(std::span<const Block> blocks, std::size_t symbol,
                  std::span<const std::span<const Element>> args, std::span<Element> out)
{
    std::vector<const Element*> ptrs;
    for (const auto& a : args)
        ptrs.push_back(a.data());
    compose_into(blocks, symbol, args.size(), ptrs.data(), out.data());
}

ClosureResult close_rows(std::span<const Block> blocks,
                         std::span<const std::vector<Element>> seeds,
                         const ClosureLimits& limits, const RowObserver& observer)
{
    if (blocks.empty())
        throw InvalidArgument("closure needs at least one block");
    const Signature& sig = blocks.front().algebra->signature();
    std::size_t length = 0;
    for (const Block& b : blocks) {
        require_same_signature(*blocks.front().algebra, *b.algebra);
        length += b.length;
    }
    for (std::size_t s = 0; s < sig.size(); ++s)
        if (sig[s].arity > 16)
            throw InvalidArgument("operations of arity above 16 are not supported in closures");

    ClosureResult result;
    result.rowLength = length;
    RowSet set(length);
    const std::size_t fullSpace = space_size(blocks);
    std::vector<Element> scratch(length);
    bool stopped = false;

    auto add = [&](Derivation&& d) {
        if (set.find(scratch.data()) != RowSet::npos)
            return;
        if (set.size() >= limits.members) {
            result.stop = ClosureStop::MemberCap;
            stopped = true;
            return;
        }
        if ((set.size() + 1) * length * sizeof(Element) > limits.bytes) {
            result.stop = ClosureStop::ByteCap;
            stopped = true;
            return;
        }
        set.insert(scratch.data());
        result.derivations.push_back(std::move(d));
        if (observer && !observer(set.size() - 1, std::span<const Element>(scratch))) {
            result.stop = ClosureStop::Aborted;
            stopped = true;
            return;
        }
        if (set.size() == fullSpace) {
            result.stop = ClosureStop::FullSpace;
            stopped = true;
        }
    };

    for (std::size_t i = 0; i < seeds.size() && !stopped; ++i) {
        const auto& seed = seeds[i];
        if (seed.size() != length)
            throw InvalidArgument("seed row has length " + std::to_string(seed.size()) +
                                  ", expected " + std::to_string(length));
        std::size_t pos = 0;
        for (const Block& b : blocks)
            for (std::size_t j = 0; j < b.length; ++j, ++pos)
                if (seed[pos] >= b.algebra->size())
                    throw InvalidArgument("seed entry outside its carrier");
        std::copy(seed.begin(), seed.end(), scratch.begin());
        Derivation d;
        d.seed = i;
        add(std::move(d));
    }

    std::size_t fresh = 0;
    bool firstRound = true;
    std::vector<std::uint32_t> idx;
    std::vector<const Element*> argRows;
    while (!stopped) {
        const std::size_t end = set.size();
        for (std::size_t s = 0; s < sig.size() && !stopped; ++s) {
            const std::size_t arity = sig[s].arity;
            if (arity == 0) {
                if (firstRound) {
                    compose_into(blocks, s, 0, nullptr, scratch.data());
                    Derivation d;
                    d.symbol = s;
                    add(std::move(d));
                }
                continue;
            }
            idx.assign(arity, 0);
            argRows.assign(arity, nullptr);
            // Tuples whose first frontier argument sits at position p.
            for (std::size_t p = 0; p < arity && fresh < end && !stopped; ++p) {
                if (p > 0 && fresh == 0)
                    break;
                auto low = [&](std::size_t j) { return j == p ? fresh : 0; };
                auto high = [&](std::size_t j) { return j < p ? fresh : end; };
                for (std::size_t j = 0; j < arity; ++j)
                    idx[j] = static_cast<std::uint32_t>(low(j));
                while (!stopped) {
                    for (std::size_t j = 0; j < arity; ++j)
                        argRows[j] = set.row(idx[j]);
                    compose_into(blocks, s, arity, argRows.data(), scratch.data());
                    if (set.find(scratch.data()) == RowSet::npos) {
                        Derivation d;
                        d.symbol = s;
                        d.parents = idx;
                        add(std::move(d));
                    }
                    std::size_t j = arity;
                    while (j-- > 0) {
                        if (++idx[j] < high(j))
                            break;
                        idx[j] = static_cast<std::uint32_t>(low(j));
                    }
                    if (j == static_cast<std::size_t>(-1))
                        break;
                }
            }
        }
        firstRound = false;
        if (set.size() == end)
            break;
        fresh = end;
    }
    result.rows = set.release();
    return result;
}

std::vector<std::vector<Element>> sorted_rows(const ClosureResult& result)
{
    std::vector<std::vector<Element>> rows;
    rows.reserve(result.count());
    for (std::size_t i = 0; i < result.count(); ++i) {
        auto r = result.row(i);
        rows.emplace_back(r.begin(), r.end());
    }
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    return rows;
}

} // namespace ubirk
