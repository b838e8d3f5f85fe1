#include "ubirk/term.hpp"

#include "ubirk/algebra.hpp"
#include "ubirk/errors.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>
#include <unordered_set>

namespace ubirk {

Signature::Signature(std::vector<Symbol> symbols) : symbols_(std::move(symbols))
{
    std::unordered_set<std::string> seen;
    for (const auto& s : symbols_) {
        if (!is_identifier(s.name))
            throw InvalidArgument("invalid symbol name '" + s.name + "'");
        if (!seen.insert(s.name).second)
            throw InvalidArgument("duplicate symbol '" + s.name + "'");
    }
}

std::optional<std::size_t> Signature::find(std::string_view name) const
{
    for (std::size_t i = 0; i < symbols_.size(); ++i)
        if (symbols_[i].name == name)
            return i;
    return std::nullopt;
}

std::size_t Signature::max_arity() const noexcept
{
    std::size_t m = 0;
    for (const auto& s : symbols_)
        m = std::max(m, s.arity);
    return m;
}

bool is_identifier(std::string_view name)
{
    if (name.empty())
        return false;
    auto head = static_cast<unsigned char>(name.front());
    if (!std::isalpha(head) && head != '_')
        return false;
    return std::all_of(name.begin(), name.end(), [](char c) {
        auto u = static_cast<unsigned char>(c);
        return std::isalnum(u) || u == '_';
    });
}

struct Term::Node {
    std::size_t var = 0;  // nonzero for variables
    std::size_t symbol = 0;
    std::string name;
    std::vector<Term> children;
    std::size_t maxVar = 0;
    std::size_t depth = 0;
};

Term Term::var(std::size_t index)
{
    if (index == 0)
        throw InvalidArgument("variable indices are 1-based");
    auto node = std::make_shared<Node>();
    node->var = index;
    node->maxVar = index;
    return Term(std::move(node));
}

Term Term::app(const Signature& sig, std::size_t symbol, std::vector<Term> children)
{
    if (symbol >= sig.size())
        throw InvalidArgument("symbol index out of range");
    if (children.size() != sig[symbol].arity)
        throw InvalidArgument("symbol '" + sig[symbol].name + "' expects " +
                              std::to_string(sig[symbol].arity) + " arguments, got " +
                              std::to_string(children.size()));
    auto node = std::make_shared<Node>();
    node->symbol = symbol;
    node->name = sig[symbol].name;
    for (const auto& c : children) {
        node->maxVar = std::max(node->maxVar, c.max_var());
        node->depth = std::max(node->depth, c.depth() + 1);
    }
    if (children.empty())
        node->depth = 1;
    node->children = std::move(children);
    return Term(std::move(node));
}

bool Term::is_var() const noexcept { return node_->var != 0; }
std::size_t Term::var_index() const noexcept { return node_->var; }
std::size_t Term::symbol() const noexcept { return node_->symbol; }
const std::string& Term::name() const noexcept { return node_->name; }
std::span<const Term> Term::children() const noexcept { return node_->children; }
std::size_t Term::max_var() const noexcept { return node_->maxVar; }
std::size_t Term::depth() const noexcept { return node_->depth; }

bool operator==(const Term& a, const Term& b)
{
    if (a.node_ == b.node_)
        return true;
    if (a.is_var() || b.is_var())
        return a.var_index() == b.var_index();
    if (a.node_->name != b.node_->name || a.node_->symbol != b.node_->symbol)
        return false;
    return std::equal(a.node_->children.begin(), a.node_->children.end(),
                      b.node_->children.begin(), b.node_->children.end());
}

namespace {

class TermParser {
public:
    TermParser(std::string_view src, const Signature& sig, std::size_t arity)
        : src_(src), sig_(sig), arity_(arity)
    {
    }

    Term parse()
    {
        Term t = term();
        skip_space();
        if (pos_ != src_.size())
            fail("trailing input");
        return t;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i < pos_ && i < src_.size(); ++i) {
            if (src_[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ParseError(what, line, column);
    }

    void skip_space()
    {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
    }

    std::string_view word()
    {
        std::size_t start = pos_;
        while (pos_ < src_.size() && !std::isspace(static_cast<unsigned char>(src_[pos_])) &&
               src_[pos_] != '(' && src_[pos_] != ')')
            ++pos_;
        return src_.substr(start, pos_ - start);
    }

    Term term()
    {
        skip_space();
        if (pos_ >= src_.size())
            fail("unexpected end of input");
        if (src_[pos_] == '(') {
            ++pos_;
            skip_space();
            std::size_t namePos = pos_;
            auto name = word();
            if (name.empty())
                fail("expected symbol name");
            auto symbol = sig_.find(name);
            if (!symbol) {
                pos_ = namePos;
                fail("unknown symbol '" + std::string(name) + "'");
            }
            std::vector<Term> children;
            for (;;) {
                skip_space();
                if (pos_ >= src_.size())
                    fail("missing ')'");
                if (src_[pos_] == ')')
                    break;
                children.push_back(term());
            }
            if (children.size() != sig_[*symbol].arity) {
                pos_ = namePos;
                fail("symbol '" + std::string(name) + "' expects " +
                     std::to_string(sig_[*symbol].arity) + " arguments, got " +
                     std::to_string(children.size()));
            }
            ++pos_;
            return Term::app(sig_, *symbol, std::move(children));
        }
        if (src_[pos_] == ')')
            fail("unexpected ')'");
        std::size_t varPos = pos_;
        auto w = word();
        if (w.size() < 2 || w[0] != 'x' || w[1] == '0' ||
            !std::all_of(w.begin() + 1, w.end(),
                         [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
            pos_ = varPos;
            fail("expected variable x<N> or '('");
        }
        std::size_t index = 0;
        for (char c : w.substr(1)) {
            if (index > (arity_ + 1) * 10)
                break;
            index = index * 10 + static_cast<std::size_t>(c - '0');
        }
        if (index < 1 || index > arity_) {
            pos_ = varPos;
            fail("variable " + std::string(w) + " outside context x1..x" + std::to_string(arity_));
        }
        return Term::var(index);
    }

    std::string_view src_;
    const Signature& sig_;
    std::size_t arity_;
    std::size_t pos_ = 0;
};

void print_into(const Term& t, std::string& out)
{
    if (t.is_var()) {
        out += 'x';
        out += std::to_string(t.var_index());
        return;
    }
    out += '(';
    out += t.name();
    for (const auto& c : t.children()) {
        out += ' ';
        print_into(c, out);
    }
    out += ')';
}

void check_context(const Term& t, const FiniteAlgebra& alg, std::size_t arity)
{
    if (arity == 0)
        throw InvalidArgument("variable context must have n >= 1");
    if (t.max_var() > arity)
        throw InvalidArgument("term uses x" + std::to_string(t.max_var()) + " in arity " +
                              std::to_string(arity));
    (void)alg;
}

void check_symbols(const Term& t, const Signature& sig,
                   std::unordered_set<const void*>& seen)
{
    if (t.is_var() || !seen.insert(t.node_id()).second)
        return;
    if (t.symbol() >= sig.size() || sig[t.symbol()].name != t.name() ||
        sig[t.symbol()].arity != t.children().size())
        throw InvalidArgument("term symbol '" + t.name() + "' does not match the signature");
    for (const auto& c : t.children())
        check_symbols(c, sig, seen);
}

Element eval_rec(const Term& t, const FiniteAlgebra& alg, std::span<const Element> args,
                 std::unordered_map<const void*, Element>& memo)
{
    if (t.is_var())
        return args[t.var_index() - 1];
    if (auto it = memo.find(t.node_id()); it != memo.end())
        return it->second;
    std::vector<Element> values;
    values.reserve(t.children().size());
    for (const auto& c : t.children())
        values.push_back(eval_rec(c, alg, args, memo));
    Element v = alg.apply(t.symbol(), values);
    memo.emplace(t.node_id(), v);
    return v;
}

using TableMemo = std::unordered_map<const void*, std::vector<Element>>;

const std::vector<Element>& table_rec(const Term& t, const FiniteAlgebra& alg, std::size_t arity,
                                      std::size_t length, TableMemo& memo)
{
    if (auto it = memo.find(t.node_id()); it != memo.end())
        return it->second;
    std::vector<Element> table(length);
    if (t.is_var()) {
        std::vector<Element> tuple(arity, 0);
        for (std::size_t i = 0; i < length; ++i) {
            table[i] = tuple[t.var_index() - 1];
            tuple_next(tuple, alg.size());
        }
    } else {
        std::vector<const std::vector<Element>*> kids;
        for (const auto& c : t.children())
            kids.push_back(&table_rec(c, alg, arity, length, memo));
        std::vector<Element> args(kids.size());
        for (std::size_t i = 0; i < length; ++i) {
            for (std::size_t j = 0; j < kids.size(); ++j)
                args[j] = (*kids[j])[i];
            table[i] = alg.apply(t.symbol(), args);
        }
    }
    return memo.emplace(t.node_id(), std::move(table)).first->second;
}

} // namespace

Term parse_term(std::string_view src, const Signature& sig, std::size_t arity)
{
    if (arity == 0)
        throw InvalidArgument("variable context must have n >= 1");
    return TermParser(src, sig, arity).parse();
}

std::string print_term(const Term& t)
{
    std::string out;
    print_into(t, out);
    return out;
}

Element eval_term(const Term& t, const FiniteAlgebra& alg, std::span<const Element> args)
{
    check_context(t, alg, args.size());
    std::unordered_set<const void*> seen;
    check_symbols(t, alg.signature(), seen);
    for (Element a : args)
        if (a >= alg.size())
            throw InvalidArgument("argument " + std::to_string(a) + " outside the carrier");
    std::unordered_map<const void*, Element> memo;
    return eval_rec(t, alg, args, memo);
}

std::vector<Element> term_table(const Term& t, const FiniteAlgebra& alg, std::size_t arity,
                                const Caps& caps)
{
    check_context(t, alg, arity);
    std::unordered_set<const void*> seen;
    check_symbols(t, alg.signature(), seen);
    std::size_t length = checked_pow(alg.size(), arity, caps.tableBytes / sizeof(Element));
    if (length == 0)
        throw CapExceeded("table of arity " + std::to_string(arity) + " over " +
                          std::to_string(alg.size()) + " elements exceeds the table byte cap");
    TableMemo memo;
    return table_rec(t, alg, arity, length, memo);
}

} // namespace ubirk
