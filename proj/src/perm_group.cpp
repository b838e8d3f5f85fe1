#include "ubirk/perm_group.hpp"

#include "ubirk/algebra_io.hpp"
#include "ubirk/errors.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <ostream>

namespace ubirk {

bool is_permutation(const Perm& p)
{
    std::vector<bool> hit(p.size(), false);
    for (Element x : p) {
        if (x >= p.size() || hit[x])
            return false;
        hit[x] = true;
    }
    return true;
}

Perm identity_perm(std::size_t degree)
{
    Perm p(degree);
    std::iota(p.begin(), p.end(), Element{0});
    return p;
}

Perm compose_perms(const Perm& outer, const Perm& inner)
{
    Perm p(inner.size());
    for (std::size_t i = 0; i < inner.size(); ++i)
        p[i] = outer[inner[i]];
    return p;
}

Perm inverse_perm(const Perm& p)
{
    Perm inv(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        inv[p[i]] = static_cast<Element>(i);
    return inv;
}

PermGroup::PermGroup(std::size_t degree, std::vector<Perm> generators)
    : degree_(degree), generators_(std::move(generators))
{
    if (degree_ == 0)
        throw InvalidArgument("permutation groups act on a nonempty set");
    if (generators_.empty())
        throw InvalidArgument("a group needs at least one generator (the identity is allowed)");
    for (const auto& g : generators_)
        if (g.size() != degree_ || !is_permutation(g))
            throw InvalidArgument("generator is not a permutation of degree " +
                                  std::to_string(degree_));
}

PermGroup trivial_group(std::size_t degree)
{
    return PermGroup(degree, {identity_perm(degree)});
}

PermGroup symmetric_group(std::size_t degree)
{
    if (degree <= 1)
        return trivial_group(std::max<std::size_t>(degree, 1));
    Perm swap = identity_perm(degree);
    std::swap(swap[0], swap[1]);
    Perm cycle(degree);
    for (std::size_t i = 0; i < degree; ++i)
        cycle[i] = static_cast<Element>((i + 1) % degree);
    return PermGroup(degree, {swap, cycle});
}

PermGroup equivalence_automorphisms(const std::vector<std::size_t>& classOf)
{
    const std::size_t degree = classOf.size();
    if (degree == 0)
        throw InvalidArgument("empty equivalence");
    std::vector<Perm> gens;
    // Transpositions inside each class.
    for (std::size_t i = 0; i < degree; ++i)
        for (std::size_t j = i + 1; j < degree; ++j)
            if (classOf[i] == classOf[j]) {
                Perm p = identity_perm(degree);
                std::swap(p[i], p[j]);
                gens.push_back(std::move(p));
                break;
            }
    // Swaps of equally sized classes, matching members in ascending order.
    std::vector<std::vector<Element>> classes;
    std::vector<std::size_t> labels;
    for (std::size_t i = 0; i < degree; ++i) {
        auto it = std::find(labels.begin(), labels.end(), classOf[i]);
        if (it == labels.end()) {
            labels.push_back(classOf[i]);
            classes.push_back({static_cast<Element>(i)});
        } else {
            classes[static_cast<std::size_t>(it - labels.begin())].push_back(static_cast<Element>(i));
        }
    }
    for (std::size_t c = 0; c < classes.size(); ++c)
        for (std::size_t d = c + 1; d < classes.size(); ++d)
            if (classes[c].size() == classes[d].size()) {
                Perm p = identity_perm(degree);
                for (std::size_t i = 0; i < classes[c].size(); ++i)
                    std::swap(p[classes[c][i]], p[classes[d][i]]);
                gens.push_back(std::move(p));
                break;
            }
    if (gens.empty())
        gens.push_back(identity_perm(degree));
    return PermGroup(degree, std::move(gens));
}

Perm parse_perm(std::string_view line, std::size_t lineNumber)
{
    std::size_t pos = 0;
    auto fail = [&](const std::string& what) -> Perm {
        throw ParseError(what, lineNumber, pos + 1);
    };
    auto skip = [&] {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t'))
            ++pos;
    };
    auto number = [&]() -> std::size_t {
        std::size_t start = pos;
        std::size_t v = 0;
        while (pos < line.size() && std::isdigit(static_cast<unsigned char>(line[pos]))) {
            if (pos - start >= 9) {
                fail("number too large");
            }
            v = v * 10 + static_cast<std::size_t>(line[pos] - '0');
            ++pos;
        }
        if (pos == start)
            fail("expected a number");
        return v;
    };
    skip();
    if (line.substr(pos, 4) != "perm")
        return fail("expected 'perm'");
    pos += 4;
    skip();
    std::size_t degree = number();
    if (pos >= line.size() || line[pos] != ':')
        return fail("expected ':' after the degree");
    ++pos;
    Perm p;
    for (;;) {
        skip();
        if (pos >= line.size())
            break;
        p.push_back(static_cast<Element>(number()));
    }
    if (p.size() != degree)
        return fail("perm " + std::to_string(degree) + " lists " + std::to_string(p.size()) +
                    " images");
    if (!is_permutation(p))
        return fail("image list is not a bijection of 0.." + std::to_string(degree - 1));
    return p;
}

std::string format_perm(const Perm& p)
{
    std::string s = "perm " + std::to_string(p.size()) + ":";
    for (Element x : p)
        s += " " + std::to_string(x);
    return s;
}

PermGroup parse_group(std::string_view text)
{
    std::vector<Perm> gens;
    std::size_t lineNumber = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        ++lineNumber;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
            line.remove_suffix(1);
        bool blank = std::all_of(line.begin(), line.end(),
                                 [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
        if (!blank) {
            Perm p = parse_perm(line, lineNumber);
            if (!gens.empty() && p.size() != gens.front().size())
                throw ParseError("generator degree " + std::to_string(p.size()) +
                                     " differs from " + std::to_string(gens.front().size()),
                                 lineNumber, 1);
            gens.push_back(std::move(p));
        }
        if (end == text.size())
            break;
        pos = end + 1;
    }
    if (gens.empty())
        throw ParseError("group file lists no generators", lineNumber, 1);
    std::size_t degree = gens.front().size();
    if (degree == 0)
        throw ParseError("degree must be positive", 1, 1);
    return PermGroup(degree, std::move(gens));
}

PermGroup load_group(const std::string& path)
{
    return parse_group(read_file(path));
}

void write_group(std::ostream& out, const PermGroup& g)
{
    for (const auto& p : g.generators())
        out << format_perm(p) << '\n';
}

} // namespace ubirk
