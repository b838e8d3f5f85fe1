#pragma once

#include "ubirk/algebra.hpp"
#include "ubirk/power_closure.hpp"
#include "ubirk/term.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace ubirk {

/// An n-ary operation on {0..base-1} as a flat table in global tuple order.
struct OperationTable {
    std::size_t arity = 0;
    std::size_t base = 0;
    std::vector<Element> values;

    friend auto operator<=>(const OperationTable&, const OperationTable&) = default;
};

/// The term operations Clo_n(A) of one arity, in lexicographic table order,
/// each with one witness term.
class CloneLevel {
public:
    CloneLevel() = default;

    /// Builds a level from unsorted rows; sorts canonically and drops duplicates
    /// (keeping the first witness).
    CloneLevel(AlgebraPtr algebra, std::size_t arity, std::vector<Element> rows,
               std::vector<Term> witnesses, bool complete);

    const AlgebraPtr& algebra() const noexcept { return algebra_; }
    std::size_t arity() const noexcept { return arity_; }
    std::size_t size() const noexcept { return witnesses_.size(); }
    std::size_t table_length() const noexcept { return length_; }
    bool complete() const noexcept { return complete_; }

    std::span<const Element> member(std::size_t i) const
    {
        return {rows_.data() + i * length_, length_};
    }
    OperationTable table(std::size_t i) const;
    const Term& witness(std::size_t i) const { return witnesses_[i]; }

    std::optional<std::size_t> find(std::span<const Element> table) const;
    /// Member index of the projection onto coordinate i (1-based).
    std::size_t projection(std::size_t i) const;

private:
    AlgebraPtr algebra_;
    std::size_t arity_ = 0;
    std::size_t length_ = 0;
    std::vector<Element> rows_;
    std::vector<Term> witnesses_;
    bool complete_ = false;
};

/// Table of the i-th n-ary projection (1-based) over a k-element carrier.
std::vector<Element> projection_table(std::size_t base, std::size_t arity, std::size_t i);

/// Worklist fixpoint from the n projections. Stops with complete() == false when
/// the member or byte cap is reached. Throws CapExceeded if a single table is
/// over the byte cap.
CloneLevel clone_generate(const AlgebraPtr& alg, std::size_t arity, const Caps& caps = {});

/// Witness terms from closure derivations, with shared subterms.
std::vector<Term> derivation_terms(const Signature& sig, const ClosureResult& result,
                                   std::span<const Term> seedTerms);

struct CompositionViolation {
    std::size_t symbol = 0;
    std::vector<std::size_t> args;  // member indices
};

/// Exhaustive check that every sigma-composite of members is a member.
std::optional<CompositionViolation> check_composition_closed(const CloneLevel& level);

struct FreeAlgebra {
    FiniteAlgebra algebra;             // carrier = member indices of the level
    std::vector<Element> generators;   // the projections
};

/// The n-generated relatively free algebra, carried by Clo_n(A) with pointwise
/// operations. Requires a complete level within the product size cap.
FreeAlgebra free_algebra(const CloneLevel& level, const Caps& caps = {});
FreeAlgebra free_algebra(const AlgebraPtr& alg, std::size_t arity, const Caps& caps = {});

} // namespace ubirk
