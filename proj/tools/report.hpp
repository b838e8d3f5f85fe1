#pragma once

#include <json.hpp>

#include <iosfwd>

namespace ubirk::app {

using Report = nlohmann::ordered_json;

enum class Format { Text, Structured };

/// Text: `key: value` lines in insertion order; scalar lists joined by spaces,
/// tuples by commas; lists of records as indented `- ` blocks; multi-line
/// strings as `key: |` blocks. Structured: the same record as indented JSON.
void render(std::ostream& out, const Report& report, Format format);

} // namespace ubirk::app
