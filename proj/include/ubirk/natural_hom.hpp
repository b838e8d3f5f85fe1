#pragma once

#include "ubirk/clone.hpp"
#include "ubirk/homomorphism.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ubirk {

/// Terms s, t of one arity with equal A-operations but different B-operations:
/// an identity s = t valid in A and failing in B.
struct IdentityCounterexample {
    std::size_t arity = 0;
    Term left;
    Term right;
};

/// Arity-n graph of the natural clone homomorphism Clo(A) -> Clo(B).
struct NaturalHom {
    AlgebraPtr source;
    AlgebraPtr target;
    std::size_t arity = 0;
    CloneLevel sourceLevel;
    CloneLevel targetLevel;
    std::vector<std::uint32_t> graph;            // source member -> target member
    std::vector<std::uint32_t> generatorImages;  // projection i -> target member

    std::span<const Element> image(std::size_t sourceMember) const
    {
        return targetLevel.member(graph[sourceMember]);
    }
};

using NaturalHomResult = std::variant<NaturalHom, IdentityCounterexample>;

/// Paired closure in A^(A^n) x B^(B^n) from the paired projections. Functional
/// graph -> NaturalHom; otherwise the first conflicting pair's witness terms.
/// Throws CapExceeded when the member cap stops the closure.
NaturalHomResult natural_hom(const AlgebraPtr& a, const AlgebraPtr& b, std::size_t arity,
                             const Caps& caps = {});

/// Exhaustive projection and composition laws; returns a description of the
/// first failure.
std::optional<std::string> check_clone_hom_laws(const NaturalHom& hom);

struct HspVerdict {
    bool member = false;
    std::vector<Element> generators;
    std::optional<NaturalHom> hom;
    std::optional<IdentityCounterexample> counterexample;
    /// Evaluation map free_algebra(A, n) -> B; present when the free algebra
    /// fits the product size cap.
    std::optional<Homomorphism> evaluation;
};

/// B in HSP(A), decided at arity |gens| with gens generating B. Default
/// generators: minimal_generators(B).
HspVerdict hsp_membership(const AlgebraPtr& a, const AlgebraPtr& b,
                          std::optional<std::vector<Element>> generators = std::nullopt,
                          const Caps& caps = {});

/// The kernel entourage {(f, g) : f|_support = g|_support} on Clo_n.
struct CloneEntourage {
    std::size_t arity = 0;
    std::vector<std::vector<Element>> support;
};

/// Whether f|_E = g|_E implies phi(f)|_F = phi(g)|_F for all source members.
bool uc_implication_holds(const NaturalHom& hom, const CloneEntourage& sourceSupport,
                          const CloneEntourage& targetSupport);

/// A support E in A^n witnessing uniform continuity for alpha, greedily
/// minimized from A^n by dropping tuples in canonical order.
CloneEntourage uc_witness(const NaturalHom& hom, const CloneEntourage& alpha);

} // namespace ubirk
