#include "ubirk/algebra_io.hpp"

#include "ubirk/errors.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace ubirk {

namespace {

struct Token {
    std::string_view text;
    std::size_t line = 0;
    std::size_t column = 0;
};

class Tokenizer {
public:
    explicit Tokenizer(std::string_view text) : text_(text) {}

    std::optional<Token> next()
    {
        skip();
        if (pos_ >= text_.size())
            return std::nullopt;
        Token tok{{}, line_, column_};
        std::size_t start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
               text_[pos_] != '#')
            advance();
        tok.text = text_.substr(start, pos_ - start);
        return tok;
    }

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    void advance()
    {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip()
    {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n')
                    advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

class AlgebraParser {
public:
    explicit AlgebraParser(std::string_view text) : tokens_(text) {}

    FiniteAlgebra parse()
    {
        expect_keyword("algebra");
        Token name = require("algebra name");
        if (!is_identifier(name.text))
            fail(name, "invalid algebra name '" + std::string(name.text) + "'");
        expect_keyword("size");
        Token sizeTok = require("carrier size");
        std::size_t size = number(sizeTok, std::size_t{1} << 31);
        if (size == 0)
            fail(sizeTok, "carrier size must be positive");

        std::vector<Symbol> symbols;
        std::vector<std::vector<Element>> tables;
        while (auto tok = tokens_.next()) {
            if (tok->text != "op")
                fail(*tok, "expected 'op', got '" + std::string(tok->text) + "'");
            Token opName = require("operation name");
            if (!is_identifier(opName.text))
                fail(opName, "invalid operation name '" + std::string(opName.text) + "'");
            for (const auto& s : symbols)
                if (s.name == opName.text)
                    fail(opName, "duplicate operation '" + std::string(opName.text) + "'");
            expect_keyword("arity");
            Token arityTok = require("arity");
            std::size_t arity = number(arityTok, 64);
            std::size_t entries = checked_pow(size, arity, std::size_t{1} << 28);
            if (entries == 0)
                fail(arityTok, "operation table too large");
            std::vector<Element> table;
            table.reserve(entries);
            for (std::size_t i = 0; i < entries; ++i) {
                auto v = tokens_.next();
                if (!v || v->text == "op")
                    fail(v ? *v : Token{{}, tokens_.line(), tokens_.column()},
                         "operation '" + std::string(opName.text) + "' needs " +
                             std::to_string(entries) + " values, got " + std::to_string(i));
                std::size_t value = number(*v, std::size_t{1} << 31);
                if (value >= size)
                    fail(*v, "value " + std::to_string(value) + " outside carrier 0.." +
                                 std::to_string(size - 1));
                table.push_back(static_cast<Element>(value));
            }
            symbols.push_back({std::string(opName.text), arity});
            tables.push_back(std::move(table));
        }
        return FiniteAlgebra(Signature(std::move(symbols)), size, std::move(tables),
                             std::string(name.text));
    }

private:
    [[noreturn]] static void fail(const Token& at, const std::string& what)
    {
        throw ParseError(what, at.line, at.column);
    }

    Token require(const std::string& what)
    {
        auto tok = tokens_.next();
        if (!tok)
            throw ParseError("unexpected end of input, expected " + what, tokens_.line(),
                             tokens_.column());
        return *tok;
    }

    void expect_keyword(std::string_view keyword)
    {
        Token tok = require("'" + std::string(keyword) + "'");
        if (tok.text != keyword)
            fail(tok, "expected '" + std::string(keyword) + "', got '" + std::string(tok.text) + "'");
    }

    static std::size_t number(const Token& tok, std::size_t limit)
    {
        if (tok.text.empty() || tok.text.size() > 12)
            fail(tok, "expected a number, got '" + std::string(tok.text) + "'");
        std::size_t value = 0;
        for (char c : tok.text) {
            if (!std::isdigit(static_cast<unsigned char>(c)))
                fail(tok, "expected a number, got '" + std::string(tok.text) + "'");
            value = value * 10 + static_cast<std::size_t>(c - '0');
        }
        if (value > limit)
            fail(tok, "number " + std::string(tok.text) + " too large");
        return value;
    }

    Tokenizer tokens_;
};

} // namespace

FiniteAlgebra parse_algebra(std::string_view text)
{
    return AlgebraParser(text).parse();
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

FiniteAlgebra load_algebra(const std::string& path)
{
    return parse_algebra(read_file(path));
}

void write_algebra(std::ostream& out, const FiniteAlgebra& alg)
{
    std::string name = is_identifier(alg.label()) ? alg.label() : "A";
    out << "algebra " << name << " size " << alg.size() << '\n';
    const Signature& sig = alg.signature();
    for (std::size_t s = 0; s < sig.size(); ++s) {
        out << "op " << sig[s].name << " arity " << sig[s].arity << '\n';
        auto table = alg.table(s);
        std::size_t rowLength = sig[s].arity == 0 ? 1 : alg.size();
        for (std::size_t i = 0; i < table.size(); ++i) {
            out << table[i];
            out << ((i + 1) % rowLength == 0 ? '\n' : ' ');
        }
    }
}

std::string format_algebra(const FiniteAlgebra& alg)
{
    std::ostringstream out;
    write_algebra(out, alg);
    return out.str();
}

} // namespace ubirk
