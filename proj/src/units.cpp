#include "memsim/units.hpp"

#include <cctype>
#include <charconv>

namespace memsim {

namespace {

std::string to_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

bool all_alpha(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isalpha(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

} // namespace

ParsedQuantity parse_quantity(std::string_view token) {
    if (token.empty()) return {0.0, QuantityError::BadNumber};

    std::string_view body = token;
    double sign = 1.0;
    if (body.front() == '+' || body.front() == '-') {
        if (body.front() == '-') sign = -1.0;
        body.remove_prefix(1);
        if (body.empty()) return {0.0, QuantityError::BadNumber};
    }

    double value = 0.0;
    const char* first = body.data();
    const char* last = body.data() + body.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr == first) {
        return {0.0, QuantityError::BadNumber};
    }

    std::string_view rest(ptr, static_cast<std::size_t>(last - ptr));
    if (rest.empty()) return {sign * value, QuantityError::None};
    if (!all_alpha(rest)) return {0.0, QuantityError::BadNumber};

    const std::string suffix = to_lower(rest);
    for (const auto& entry : kSuffixTable) {
        if (suffix == entry.suffix) {
            return {sign * value * entry.factor, QuantityError::None};
        }
    }
    return {0.0, QuantityError::BadUnit};
}

std::string format_quantity(double value) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    return std::string(buf, ptr);
}

} // namespace memsim
