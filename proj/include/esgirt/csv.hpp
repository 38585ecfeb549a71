#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace esgirt {

// Minimal RFC-4180 CSV support: comma separator, double-quote quoting,
// embedded quotes doubled, quoted fields may span lines. UTF-8 passes
// through untouched.
namespace csv {

using Row = std::vector<std::string>;

// Parses full CSV text. \r\n and \n both accepted; a trailing newline
// does not produce an empty row. Throws ParseError on unbalanced quotes
// or junk after a closing quote.
std::vector<Row> parse(std::string_view text);

// Reads and parses a file; throws ParseError if it cannot be opened.
std::vector<Row> read_file(const std::string& path);

// Field escaped iff it contains a comma, quote, or newline.
std::string escape(std::string_view field);

std::string format_row(const Row& row);

}  // namespace csv

// Shortest round-trip decimal form (std::to_chars); "nan"/"inf" never
// appear in outputs because inputs are validated finite.
std::string format_double(double value);

// Fixed-precision form used for SVG coordinates.
std::string format_fixed(double value, int digits);

// Strict double parse of an entire field; throws ParseError.
double parse_double_strict(std::string_view text, std::string_view what);

// Strict non-negative integer parse; throws ParseError.
long parse_long_strict(std::string_view text, std::string_view what);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

}  // namespace esgirt
