#include "ubirk/homomorphism.hpp"

#include "ubirk/errors.hpp"

#include <algorithm>

namespace ubirk {

std::optional<HomViolation> check_homomorphism(const FiniteAlgebra& source,
                                               const FiniteAlgebra& target,
                                               std::span<const Element> map)
{
    require_same_signature(source, target);
    if (map.size() != source.size())
        throw InvalidArgument("map has " + std::to_string(map.size()) + " entries for a carrier of " +
                              std::to_string(source.size()));
    for (Element v : map)
        if (v >= target.size())
            throw InvalidArgument("map value " + std::to_string(v) + " outside the target carrier");
    const Signature& sig = source.signature();
    for (std::size_t s = 0; s < sig.size(); ++s) {
        std::size_t arity = sig[s].arity;
        std::vector<Element> args(arity, 0), images(arity);
        auto table = source.table(s);
        for (std::size_t idx = 0; idx < table.size(); ++idx) {
            for (std::size_t j = 0; j < arity; ++j)
                images[j] = map[args[j]];
            if (map[table[idx]] != target.apply(s, images))
                return HomViolation{s, args};
            tuple_next(args, source.size());
        }
    }
    return std::nullopt;
}

bool is_surjective(std::span<const Element> map, std::size_t targetSize)
{
    std::vector<bool> hit(targetSize, false);
    std::size_t covered = 0;
    for (Element v : map)
        if (v < targetSize && !hit[v]) {
            hit[v] = true;
            ++covered;
        }
    return covered == targetSize;
}

namespace {

constexpr std::int64_t kUnset = -1;

struct Occurrence {
    std::uint32_t symbol;
    std::uint32_t index;
};

class HomSearch {
public:
    HomSearch(const FiniteAlgebra& src, const FiniteAlgebra& dst) : src_(src), dst_(dst)
    {
        const Signature& sig = src.signature();
        occurrences_.resize(src.size());
        for (std::size_t s = 0; s < sig.size(); ++s) {
            std::size_t arity = sig[s].arity;
            std::vector<Element> args(arity, 0);
            auto table = src.table(s);
            for (std::size_t idx = 0; idx < table.size(); ++idx) {
                Occurrence occ{static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(idx)};
                std::vector<Element> touched(args);
                touched.push_back(table[idx]);
                std::sort(touched.begin(), touched.end());
                touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
                for (Element e : touched)
                    occurrences_[e].push_back(occ);
                tuple_next(args, src.size());
            }
        }
        value_.assign(src.size(), kUnset);
        cover_.assign(dst.size(), 0);
    }

    std::optional<std::vector<Element>> run(std::span<const Pin> pins)
    {
        std::vector<bool> pinned(src_.size(), false);
        for (const Pin& p : pins) {
            if (p.source >= src_.size() || p.target >= dst_.size())
                throw InvalidArgument("pin outside the carriers");
            if (!pinned[p.source]) {
                pinned[p.source] = true;
                order_.push_back(p.source);
            }
        }
        for (Element e = 0; e < src_.size(); ++e)
            if (!pinned[e])
                order_.push_back(e);

        // Nullary symbols fix their values up front.
        const Signature& sig = src_.signature();
        for (std::size_t s = 0; s < sig.size(); ++s)
            if (sig[s].arity == 0 && !assign(src_.table(s)[0], dst_.table(s)[0]))
                return std::nullopt;
        for (const Pin& p : pins)
            if (!assign(p.source, p.target))
                return std::nullopt;
        if (!search(0))
            return std::nullopt;
        std::vector<Element> map(src_.size());
        for (std::size_t e = 0; e < map.size(); ++e)
            map[e] = static_cast<Element>(value_[e]);
        return map;
    }

private:
    bool set(Element e, Element v)
    {
        value_[e] = v;
        if (cover_[v]++ == 0)
            ++covered_;
        ++assigned_;
        trail_.push_back(e);
        pending_.push_back(e);
        return true;
    }

    void undo_to(std::size_t mark)
    {
        while (trail_.size() > mark) {
            Element e = trail_.back();
            trail_.pop_back();
            auto v = static_cast<Element>(value_[e]);
            if (--cover_[v] == 0)
                --covered_;
            --assigned_;
            value_[e] = kUnset;
        }
        pending_.clear();
    }

    // Assigns e -> v and propagates forced values; false on conflict.
    bool assign(Element e, Element v)
    {
        if (value_[e] != kUnset) {
            pending_.clear();
            return value_[e] == v;
        }
        set(e, v);
        std::vector<Element> args, images;
        while (!pending_.empty()) {
            Element x = pending_.back();
            pending_.pop_back();
            for (const Occurrence& occ : occurrences_[x]) {
                std::size_t arity = src_.signature()[occ.symbol].arity;
                args.assign(arity, 0);
                tuple_decode(occ.index, src_.size(), args);
                images.resize(arity);
                bool ready = true;
                for (std::size_t j = 0; j < arity && ready; ++j) {
                    if (value_[args[j]] == kUnset)
                        ready = false;
                    else
                        images[j] = static_cast<Element>(value_[args[j]]);
                }
                if (!ready)
                    continue;
                Element want = dst_.apply(occ.symbol, images);
                Element result = src_.table(occ.symbol)[occ.index];
                if (value_[result] == kUnset) {
                    set(result, want);
                } else if (value_[result] != want) {
                    pending_.clear();
                    return false;
                }
            }
        }
        return true;
    }

    bool search(std::size_t pos)
    {
        while (pos < order_.size() && value_[order_[pos]] != kUnset)
            ++pos;
        if (src_.size() - assigned_ < dst_.size() - covered_)
            return false;
        if (pos == order_.size())
            return covered_ == dst_.size();
        Element e = order_[pos];
        for (Element v = 0; v < dst_.size(); ++v) {
            std::size_t mark = trail_.size();
            if (assign(e, v) && search(pos + 1))
                return true;
            undo_to(mark);
        }
        return false;
    }

    const FiniteAlgebra& src_;
    const FiniteAlgebra& dst_;
    std::vector<std::vector<Occurrence>> occurrences_;
    std::vector<std::int64_t> value_;
    std::vector<std::size_t> cover_;
    std::size_t covered_ = 0;
    std::size_t assigned_ = 0;
    std::vector<Element> order_;
    std::vector<Element> trail_;
    std::vector<Element> pending_;
};

} // namespace

std::optional<Homomorphism> find_surjective_homomorphism(const AlgebraPtr& source,
                                                         const AlgebraPtr& target,
                                                         std::span<const Pin> pins)
{
    require_same_signature(*source, *target);
    HomSearch search(*source, *target);
    auto map = search.run(pins);
    if (!map)
        return std::nullopt;
    return Homomorphism{source, target, std::move(*map)};
}

} // namespace ubirk
