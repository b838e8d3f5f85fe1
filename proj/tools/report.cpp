#include "report.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace ubirk::app {

namespace {

std::string scalar(const Report& v)
{
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_null())
        return "none";
    return v.dump();
}

bool is_flat(const Report& v)
{
    if (!v.is_array())
        return !v.is_object();
    for (const auto& item : v)
        if (item.is_object() || (item.is_array() && !std::all_of(item.begin(), item.end(),
                                                                [](const Report& x) {
                                                                    return x.is_primitive();
                                                                })))
            return false;
    return true;
}

std::string flat(const Report& v)
{
    if (!v.is_array())
        return scalar(v);
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0)
            out += ' ';
        if (v[i].is_array()) {
            for (std::size_t j = 0; j < v[i].size(); ++j) {
                if (j > 0)
                    out += ',';
                out += scalar(v[i][j]);
            }
        } else {
            out += scalar(v[i]);
        }
    }
    return out;
}

void render_object(std::vector<std::string>& lines, const Report& obj, std::size_t indent);

void render_value(std::vector<std::string>& lines, const std::string& head, const Report& v,
                  std::size_t indent)
{
    const std::string pad(indent, ' ');
    if (v.is_string() && v.get<std::string>().find('\n') != std::string::npos) {
        lines.push_back(pad + head + ": |");
        std::istringstream in(v.get<std::string>());
        for (std::string line; std::getline(in, line);)
            lines.push_back(pad + "  " + line);
    } else if (v.is_object()) {
        lines.push_back(pad + head + ":");
        render_object(lines, v, indent + 2);
    } else if (is_flat(v)) {
        std::string text = flat(v);
        lines.push_back(pad + head + ":" + (text.empty() ? "" : " " + text));
    } else {
        lines.push_back(pad + head + ":");
        for (const auto& item : v) {
            std::vector<std::string> block;
            if (item.is_object())
                render_object(block, item, indent + 4);
            else
                block.push_back(std::string(indent + 4, ' ') + flat(item));
            if (block.empty())
                block.push_back(std::string(indent + 4, ' '));
            block.front().replace(0, indent + 4, pad + "  - ");
            lines.insert(lines.end(), block.begin(), block.end());
        }
    }
}

void render_object(std::vector<std::string>& lines, const Report& obj, std::size_t indent)
{
    for (const auto& [key, value] : obj.items())
        render_value(lines, key, value, indent);
}

} // namespace

void render(std::ostream& out, const Report& report, Format format)
{
    if (format == Format::Structured) {
        out << report.dump(2) << '\n';
        return;
    }
    std::vector<std::string> lines;
    render_object(lines, report, 0);
    for (const auto& line : lines)
        out << line << '\n';
}

} // namespace ubirk::app
