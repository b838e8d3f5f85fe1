#pragma once

#include "ubirk/caps.hpp"
#include "ubirk/tuple.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ubirk {

class FiniteAlgebra;

struct Symbol {
    std::string name;
    std::size_t arity = 0;

    friend bool operator==(const Symbol&, const Symbol&) = default;
};

/// Ordered list of operation symbols. The order fixes enumeration order everywhere.
class Signature {
public:
    Signature() = default;
    explicit Signature(std::vector<Symbol> symbols);

    std::size_t size() const noexcept { return symbols_.size(); }
    bool empty() const noexcept { return symbols_.empty(); }
    const Symbol& operator[](std::size_t i) const { return symbols_[i]; }
    const std::vector<Symbol>& symbols() const noexcept { return symbols_; }
    std::optional<std::size_t> find(std::string_view name) const;
    std::size_t max_arity() const noexcept;

    friend bool operator==(const Signature&, const Signature&) = default;

private:
    std::vector<Symbol> symbols_;
};

bool is_identifier(std::string_view name);

/// Immutable applicative tree. Copies share structure; equality is structural.
class Term {
public:
    static Term var(std::size_t index);
    static Term app(const Signature& sig, std::size_t symbol, std::vector<Term> children);

    bool is_var() const noexcept;
    /// 1-based variable index; only meaningful for variables.
    std::size_t var_index() const noexcept;
    std::size_t symbol() const noexcept;
    const std::string& name() const noexcept;
    std::span<const Term> children() const noexcept;

    /// Largest variable index occurring in the term (0 for ground terms).
    std::size_t max_var() const noexcept;
    std::size_t depth() const noexcept;

    /// Identity of the shared node, for memoized traversals.
    const void* node_id() const noexcept { return node_.get(); }

    friend bool operator==(const Term& a, const Term& b);

private:
    struct Node;
    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

/// Parses the prefix grammar `term := "x" N | "(" name term* ")"`.
Term parse_term(std::string_view src, const Signature& sig, std::size_t arity);

/// Canonical single-space rendering; parse_term(print_term(t)) == t.
std::string print_term(const Term& t);

/// Evaluates t at one argument tuple; args.size() is the ambient arity.
Element eval_term(const Term& t, const FiniteAlgebra& alg, std::span<const Element> args);

/// Function table of t as an n-ary operation, in global tuple order.
std::vector<Element> term_table(const Term& t, const FiniteAlgebra& alg, std::size_t arity,
                                const Caps& caps = {});

} // namespace ubirk
