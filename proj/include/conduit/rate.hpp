#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace conduit {

/// Fixed-point percent: 1 unit = 1e-6 percent. All rate and weight arithmetic
/// in the library is integer arithmetic on this scale; floating point never
/// touches a weight.
using Micro = std::int64_t;

inline constexpr Micro kMicroPerPercent = 1'000'000;
inline constexpr Micro kMaxRate = 100 * kMicroPerPercent;

/// Per-hop incorporation cost added to every arc, one fixed-point unit
/// (1e-6 percent). Breaks ties toward fewer hops.
inline constexpr Micro kSanction = 1;

enum class IncomeType { Dividends, Interest, Royalties };

std::string_view to_string(IncomeType type);
IncomeType income_type_from_string(std::string_view text); // throws ParseError

/// Parses a decimal percent with at most 6 fractional digits into fixed-point
/// units. Exact: "12.5" -> 12500000. Throws ParseError on anything else,
/// including negatives, values above 100, and finer-than-1e-6 input.
Micro parse_rate(std::string_view text);

/// Inverse of parse_rate: minimal decimal string, no trailing zeros.
/// parse_rate(format_rate(r)) == r for every representable rate.
std::string format_rate(Micro rate);

} // namespace conduit
