#include "parsing.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "lexlab/error.hpp"

namespace lexlab::cli {
namespace {

double parse_double(const std::string& s, const std::string& context) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v))
    throw DomainError("'" + s + "' is not a number in '" + context + "'");
  return v;
}

std::string strip(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\"");
  const auto e = s.find_last_not_of(" \t\"");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

}  // namespace

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::istringstream ss(strip(text));
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = strip(item);
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_double(item, text));
      continue;
    }
    std::string rest = item.substr(dots + 2);
    double step = 1.0;
    if (const auto colon = rest.find(':'); colon != std::string::npos) {
      step = parse_double(rest.substr(colon + 1), text);
      rest = rest.substr(0, colon);
    }
    const double lo = parse_double(item.substr(0, dots), text);
    const double hi = parse_double(rest, text);
    if (!(step > 0.0) || hi < lo) throw DomainError("range '" + item + "' needs lo <= hi and a positive step");
    const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    if (count > 1'000'000) throw DomainError("range '" + item + "' expands to too many values");
    for (long k = 0; k <= count; ++k) out.push_back(std::round((lo + k * step) * 1e12) / 1e12);
  }
  if (out.empty()) throw DomainError("empty list '" + text + "'");
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (double v : parse_number_list(text)) {
    if (v != std::floor(v) || std::abs(v) > 1e9) throw DomainError("'" + text + "' must list integers");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

}  // namespace lexlab::cli
