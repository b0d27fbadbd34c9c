#pragma once

#include <array>
#include <string>
#include <string_view>
#include <utility>

namespace memsim {

// All internal computation is in SI base units; engineering suffixes exist
// only at the netlist/CLI boundary. Fields imply dimensions, so tokens carry
// no unit letters ("350m", never "350mV").

struct SuffixEntry {
    const char* suffix;
    double factor;
};

inline constexpr std::array<SuffixEntry, 8> kSuffixTable{{
    {"f", 1e-15},
    {"p", 1e-12},
    {"n", 1e-9},
    {"u", 1e-6},
    {"m", 1e-3},
    {"k", 1e3},
    {"meg", 1e6},
    {"g", 1e9},
}};

enum class QuantityError {
    None,
    BadNumber, // malformed mantissa
    BadUnit,   // trailing letters that are not a known suffix
};

struct ParsedQuantity {
    double value = 0.0;
    QuantityError error = QuantityError::None;
    bool ok() const { return error == QuantityError::None; }
};

/// Parse "number + optional engineering suffix" into an SI value.
/// Suffixes are case-insensitive: f p n u m k meg g.
ParsedQuantity parse_quantity(std::string_view token);

/// Shortest text that round-trips the exact double (no suffix).
std::string format_quantity(double value);

} // namespace memsim
