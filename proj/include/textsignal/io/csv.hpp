#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tsig::io {

// Shortest round-trip decimal form (std::to_chars); parsing it back yields
// the identical double, which is what keeps stage outputs byte-stable.
std::string format_double(double v);
double parse_double(std::string_view s);
long parse_long(std::string_view s);

// Minimal CSV with RFC-style quoting, used only when a field needs it.
std::string csv_field(std::string_view raw);
std::vector<std::string> split_csv_line(std::string_view line);
std::vector<std::string> split_lines(std::string_view text);

}  // namespace tsig::io
