#pragma once

#include "ubirk/clone.hpp"
#include "ubirk/orbits.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace ubirk {

/// Invertible members of the unary clone, as a permutation group on the carrier.
struct UnaryGroup {
    AlgebraPtr algebra;
    std::vector<Perm> elements;  // ascending, identity included

    PermGroup as_group() const;
};

/// Filters a complete Clo_1(A) to bijections whose inverse is also a member.
UnaryGroup unary_group(const AlgebraPtr& alg, const Caps& caps = {});
UnaryGroup unary_group(const CloneLevel& unaryLevel);

struct LocalFinitenessSample {
    std::vector<Element> generators;
    std::size_t subalgebraSize = 0;
    std::size_t cloneSize = 0;
    bool imageMatches = false;  // {f(a) : f in Clo_n(A)} == <a>_A
};

/// For each sample a: the evaluation image of Clo_n(A) at a against the
/// generated subalgebra <a>_A, computed independently.
std::vector<LocalFinitenessSample> locally_finite_check(
    const AlgebraPtr& alg, const std::vector<std::vector<Element>>& samples, const Caps& caps = {});

struct FgOrbitResult {
    std::size_t power = 0;                       // n
    std::vector<std::vector<Element>> generators;
    std::vector<std::vector<Element>> subalgebra;      // B, ascending
    std::size_t orbitCount = 0;
    std::vector<std::vector<Element>> representatives;  // least tuple per orbit
};

/// B = <gens> in A^n with the coordinatewise G(A)-action; |B/G| and
/// representatives. Asserts p(Clo_m(A)) = B with p(f)(j) = f(a_1(j), ..., a_m(j));
/// throws InternalConsistency otherwise.
FgOrbitResult fg_power_orbit_check(const AlgebraPtr& alg, const UnaryGroup& group,
                                   std::size_t power,
                                   const std::vector<std::vector<Element>>& generators,
                                   const Caps& caps = {});

struct AlfArity {
    std::size_t arity = 0;
    std::size_t cloneSize = 0;
    std::size_t orbitCount = 0;
};

struct AlfReport {
    std::vector<Perm> unaryGroup;
    std::vector<AlfArity> arities;
    std::vector<FgOrbitResult> subalgebras;
    std::string assumption;
};

/// G(A) acting on Clo_n(A) by post-composition, n = 1..maxArity, plus the
/// orbit counts of the sampled f.g. subalgebras of A^n for those arities.
AlfReport alf_orbit_counts(const AlgebraPtr& alg, std::size_t maxArity,
                           std::size_t sampleGenerators = 1, const Caps& caps = {});

struct FgOligoEntry {
    std::vector<Element> generators;
    std::vector<Element> subalgebra;
    std::vector<std::size_t> profile;  // |B^n / G| for n = 1..k
};

/// Oligomorphicity profile of G(A) restricted to each subalgebra generated by
/// at most `sampleGenerators` elements (canonical order, distinct subalgebras).
std::vector<FgOligoEntry> oligo_on_fg_subalgebras(const AlgebraPtr& alg, std::size_t maxArity,
                                                  std::size_t sampleGenerators = 1,
                                                  const Caps& caps = {});

/// Canonical generator tuples: all tuples over A of length 1..count.
std::vector<std::vector<Element>> sample_generator_tuples(std::size_t carrier, std::size_t count);

} // namespace ubirk
