#include "ubirk/algebra_io.hpp"
#include "ubirk/certificate.hpp"
#include "ubirk/errors.hpp"

#include <cctype>
#include <ostream>
#include <sstream>

namespace ubirk {

namespace {

constexpr std::string_view kMagic = "hspfin-certificate 1";

void write_row(std::ostream& out, const std::vector<Element>& row)
{
    for (std::size_t i = 0; i < row.size(); ++i)
        out << (i ? " " : "") << row[i];
}

class LineReader {
public:
    explicit LineReader(std::string_view text) : text_(text) {}

    bool done() const noexcept { return pos_ >= text_.size(); }
    std::size_t line() const noexcept { return line_; }

    std::string_view next(const char* expected)
    {
        if (done())
            throw ParseError(std::string("unexpected end of certificate, expected ") + expected,
                             line_ + 1, 1);
        std::size_t end = text_.find('\n', pos_);
        if (end == std::string_view::npos)
            end = text_.size();
        std::string_view l = text_.substr(pos_, end - pos_);
        if (!l.empty() && l.back() == '\r')
            l.remove_suffix(1);
        pos_ = end + 1;
        ++line_;
        return l;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 0;
};

std::vector<std::size_t> numbers(std::string_view s, std::size_t line)
{
    std::vector<std::size_t> out;
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] == ' ' || s[i] == '\t') {
            ++i;
            continue;
        }
        std::size_t start = i;
        std::size_t value = 0;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t') {
            if (!std::isdigit(static_cast<unsigned char>(s[i])) || i - start >= 10)
                throw ParseError("expected a number", line, start + 1);
            value = value * 10 + static_cast<std::size_t>(s[i] - '0');
            ++i;
        }
        if (value > 0xffffffffULL)
            throw ParseError("number too large", line, start + 1);
        out.push_back(value);
    }
    return out;
}

std::vector<Element> elements(std::string_view s, std::size_t line)
{
    std::vector<Element> out;
    for (auto v : numbers(s, line))
        out.push_back(static_cast<Element>(v));
    return out;
}

// "<keyword> <rest>" -> rest
std::string_view keyword(std::string_view l, std::string_view kw, std::size_t line)
{
    if (l.substr(0, kw.size()) != kw || (l.size() > kw.size() && l[kw.size()] != ' '))
        throw ParseError("expected '" + std::string(kw) + "'", line, 1);
    return l.size() > kw.size() ? l.substr(kw.size() + 1) : std::string_view{};
}

std::size_t count_of(std::string_view l, std::string_view kw, std::size_t line)
{
    auto v = numbers(keyword(l, kw, line), line);
    if (v.size() != 1)
        throw ParseError("expected '" + std::string(kw) + " <count>'", line, 1);
    return v[0];
}

AlgebraPtr read_algebra_block(LineReader& in, std::string_view name)
{
    std::string begin = "begin " + std::string(name);
    std::string end = "end " + std::string(name);
    if (in.next(begin.c_str()) != begin)
        throw ParseError("expected '" + begin + "'", in.line(), 1);
    std::size_t offset = in.line();
    std::string body;
    for (;;) {
        auto l = in.next(end.c_str());
        if (l == end)
            break;
        body.append(l).push_back('\n');
    }
    try {
        return share(parse_algebra(body));
    } catch (const ParseError& e) {
        std::string what = e.what();
        auto colon = what.find(": ");
        if (e.line() != 0 && colon != std::string::npos)
            what = what.substr(colon + 2);
        throw ParseError(std::string(name) + ": " + what, e.line() ? e.line() + offset : offset,
                         e.column());
    }
}

} // namespace

void write_certificate(std::ostream& out, const HspFinCertificate& cert)
{
    out << kMagic << '\n';
    out << "generators ";
    write_row(out, cert.generators);
    out << '\n';
    out << "begin algebra-a\n";
    write_algebra(out, *cert.a);
    out << "end algebra-a\n";
    out << "begin algebra-b\n";
    write_algebra(out, *cert.b);
    out << "end algebra-b\n";
    out << "support " << cert.support.size() << '\n';
    for (const auto& t : cert.support) {
        write_row(out, t);
        out << '\n';
    }
    out << "domain " << cert.domain.size() << '\n';
    for (const auto& r : cert.domain) {
        write_row(out, r);
        out << '\n';
    }
    out << "map " << cert.map.size() << '\n';
    for (const auto& [r, v] : cert.map) {
        write_row(out, r);
        out << " -> " << v << '\n';
    }
    out << "end\n";
}

std::string format_certificate(const HspFinCertificate& cert)
{
    std::ostringstream out;
    write_certificate(out, cert);
    return out.str();
}

HspFinCertificate parse_certificate(std::string_view text)
{
    LineReader in(text);
    HspFinCertificate cert;
    if (in.next("header") != kMagic)
        throw ParseError("expected '" + std::string(kMagic) + "'", in.line(), 1);
    {
        auto l = in.next("generators");
        cert.generators = elements(keyword(l, "generators", in.line()), in.line());
    }
    cert.a = read_algebra_block(in, "algebra-a");
    cert.b = read_algebra_block(in, "algebra-b");

    std::size_t count = count_of(in.next("support"), "support", in.line());
    for (std::size_t i = 0; i < count; ++i) {
        auto l = in.next("support tuple");
        cert.support.push_back(elements(l, in.line()));
    }
    count = count_of(in.next("domain"), "domain", in.line());
    for (std::size_t i = 0; i < count; ++i) {
        auto l = in.next("domain row");
        cert.domain.push_back(elements(l, in.line()));
    }
    count = count_of(in.next("map"), "map", in.line());
    for (std::size_t i = 0; i < count; ++i) {
        auto l = in.next("map pair");
        auto arrow = l.find(" -> ");
        if (arrow == std::string_view::npos)
            throw ParseError("expected '<row> -> <value>'", in.line(), 1);
        auto value = numbers(l.substr(arrow + 4), in.line());
        if (value.size() != 1)
            throw ParseError("expected a single value after '->'", in.line(), arrow + 5);
        cert.map.emplace_back(elements(l.substr(0, arrow), in.line()),
                              static_cast<Element>(value[0]));
    }
    if (in.next("end") != "end")
        throw ParseError("expected 'end'", in.line(), 1);
    while (!in.done())
        if (!in.next("").empty())
            throw ParseError("trailing content after 'end'", in.line(), 1);
    return cert;
}

} // namespace ubirk
