#pragma once

#include "ubirk/tuple.hpp"

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ubirk {

/// Image list of a bijection of {0..degree-1}.
using Perm = std::vector<Element>;

bool is_permutation(const Perm& p);
Perm identity_perm(std::size_t degree);
Perm compose_perms(const Perm& outer, const Perm& inner);  // outer after inner
Perm inverse_perm(const Perm& p);

/// A permutation group given by generators only; the group is never enumerated.
class PermGroup {
public:
    PermGroup(std::size_t degree, std::vector<Perm> generators);

    std::size_t degree() const noexcept { return degree_; }
    const std::vector<Perm>& generators() const noexcept { return generators_; }

private:
    std::size_t degree_;
    std::vector<Perm> generators_;
};

PermGroup trivial_group(std::size_t degree);
/// Sym(degree) by a transposition and a long cycle.
PermGroup symmetric_group(std::size_t degree);
/// Automorphisms of the equivalence relation with the given class labels.
PermGroup equivalence_automorphisms(const std::vector<std::size_t>& classOf);

/// `perm <degree>: i0 i1 ... i(d-1)`
Perm parse_perm(std::string_view line, std::size_t lineNumber = 1);
std::string format_perm(const Perm& p);

/// One generator per line; `#` comments and blank lines are ignored.
PermGroup parse_group(std::string_view text);
PermGroup load_group(const std::string& path);
void write_group(std::ostream& out, const PermGroup& g);

} // namespace ubirk
