#pragma once

#include <string>
#include <vector>

namespace lexlab::cli {

/// Comma-separated numbers; an item `a..b` expands to a, a+1, ..., b and
/// `a..b:s` to a, a+s, ... up to b. Expanded values are rounded to 12
/// decimals so decimal steps land on their intended grid points.
std::vector<double> parse_number_list(const std::string& text);

/// As parse_number_list, but every value must be an integer.
std::vector<int> parse_int_list(const std::string& text);

}  // namespace lexlab::cli
