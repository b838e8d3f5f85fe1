#pragma once

#include "ubirk/algebra.hpp"

#include <iosfwd>
#include <string>
#include <string_view>

namespace ubirk {

/// Reads the line-oriented algebra format:
///
///     # comment
///     algebra <name> size <k>
///     op <name> arity <m>
///     <k^m values in global tuple order>
///
/// Errors carry 1-based line/column positions.
FiniteAlgebra parse_algebra(std::string_view text);

FiniteAlgebra load_algebra(const std::string& path);

/// Writes the same format, one table row (last coordinate varying) per line.
void write_algebra(std::ostream& out, const FiniteAlgebra& alg);
std::string format_algebra(const FiniteAlgebra& alg);

/// Whole-file read; throws ubirk::Error if the file cannot be opened.
std::string read_file(const std::string& path);

} // namespace ubirk
