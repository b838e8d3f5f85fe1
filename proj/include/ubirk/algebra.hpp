#pragma once

#include "ubirk/caps.hpp"
#include "ubirk/term.hpp"
#include "ubirk/tuple.hpp"

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace ubirk {

/// Carrier {0..size-1} with one total operation table per signature symbol.
class FiniteAlgebra {
public:
    /// Validates sizes and ranges; tables[i] has size^arity(i) entries.
    FiniteAlgebra(Signature sig, std::size_t size, std::vector<std::vector<Element>> tables,
                  std::string label = {});

    const Signature& signature() const noexcept { return sig_; }
    std::size_t size() const noexcept { return size_; }
    const std::string& label() const noexcept { return label_; }

    std::span<const Element> table(std::size_t symbol) const { return tables_[symbol]; }

    Element apply(std::size_t symbol, std::span<const Element> args) const
    {
        return tables_[symbol][tuple_index(args, size_)];
    }

    Element apply(std::size_t symbol, std::initializer_list<Element> args) const
    {
        return apply(symbol, std::span<const Element>(args.begin(), args.size()));
    }

    friend bool operator==(const FiniteAlgebra&, const FiniteAlgebra&) = default;

private:
    Signature sig_;
    std::size_t size_;
    std::vector<std::vector<Element>> tables_;
    std::string label_;
};

using AlgebraPtr = std::shared_ptr<const FiniteAlgebra>;

inline AlgebraPtr share(FiniteAlgebra alg)
{
    return std::make_shared<const FiniteAlgebra>(std::move(alg));
}

void require_same_signature(const FiniteAlgebra& a, const FiniteAlgebra& b);

/// Direct product; element (a_1..a_r) is indexed lexicographically, first factor slowest.
FiniteAlgebra product(std::span<const FiniteAlgebra> algs, const Caps& caps = {});

/// Direct power with `exponent` coordinates.
FiniteAlgebra power(const FiniteAlgebra& alg, std::size_t exponent, const Caps& caps = {});

/// Coordinates of a product element, given the factor sizes.
std::vector<Element> product_coordinates(Element e, std::span<const std::size_t> factorSizes);

/// Least subuniverse containing gens and all constants, ascending.
std::vector<Element> generate_subalgebra(const FiniteAlgebra& alg, std::span<const Element> gens);

/// True iff `subset` (any order) is closed under every operation.
bool is_subuniverse(const FiniteAlgebra& alg, std::span<const Element> subset);

/// The subalgebra on a closed subset, relabelled 0..m-1 in ascending element order.
struct Subalgebra {
    FiniteAlgebra algebra;
    std::vector<Element> carrier;  // new index -> ambient element
};

Subalgebra restrict_to(const FiniteAlgebra& alg, std::span<const Element> subset);

/// Smallest generating set: least size first, then lexicographically least.
/// Exhaustive for carriers up to 20 elements, greedy beyond.
std::vector<Element> minimal_generators(const FiniteAlgebra& alg);

/// Ascending chain of subuniverses of one ambient algebra.
struct SubalgebraChain {
    AlgebraPtr ambient;
    std::vector<std::vector<Element>> levels;
};

struct ChainColimit {
    FiniteAlgebra algebra;
    std::vector<Element> carrier;          // colimit element -> ambient element
    std::vector<std::size_t> firstLevel;   // colimit element -> level it first appears in
};

/// Colimit of a finite chain: the top level with restricted operations.
ChainColimit colimit_of_chain(const SubalgebraChain& chain);

} // namespace ubirk
