#include "conduit/rate.hpp"

#include <cctype>

#include "conduit/errors.hpp"

namespace conduit {

std::string_view to_string(IncomeType type) {
    switch (type) {
    case IncomeType::Dividends: return "dividends";
    case IncomeType::Interest: return "interest";
    case IncomeType::Royalties: return "royalties";
    }
    return "?";
}

IncomeType income_type_from_string(std::string_view text) {
    if (text == "dividends") return IncomeType::Dividends;
    if (text == "interest") return IncomeType::Interest;
    if (text == "royalties") return IncomeType::Royalties;
    throw ParseError("unknown income type '" + std::string(text) +
                     "' (expected dividends, interest, or royalties)");
}

Micro parse_rate(std::string_view text) {
    if (text.empty())
        throw ParseError("empty rate");

    std::size_t pos = 0;
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
        negative = text[pos] == '-';
        ++pos;
    }

    auto digits_from = [&](std::size_t start) {
        std::size_t end = start;
        while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end])))
            ++end;
        return end;
    };

    std::size_t int_end = digits_from(pos);
    if (int_end == pos)
        throw ParseError("malformed rate '" + std::string(text) + "'");

    Micro whole = 0;
    for (std::size_t i = pos; i < int_end; ++i) {
        whole = whole * 10 + (text[i] - '0');
        if (whole > 1000) // anything past 100 overflows range anyway
            throw ParseError("rate '" + std::string(text) + "' out of range [0, 100]");
    }

    Micro frac = 0;
    std::size_t frac_digits = 0;
    std::size_t tail = int_end;
    if (tail < text.size() && text[tail] == '.') {
        ++tail;
        std::size_t frac_end = digits_from(tail);
        frac_digits = frac_end - tail;
        if (frac_digits == 0)
            throw ParseError("malformed rate '" + std::string(text) + "'");
        if (frac_digits > 6)
            throw ParseError("rate '" + std::string(text) +
                             "' has more than 6 decimal places");
        for (std::size_t i = tail; i < frac_end; ++i)
            frac = frac * 10 + (text[i] - '0');
        for (std::size_t i = frac_digits; i < 6; ++i)
            frac *= 10;
        tail = frac_end;
    }
    if (tail != text.size())
        throw ParseError("malformed rate '" + std::string(text) + "'");

    Micro value = whole * kMicroPerPercent + frac;
    if (negative && value != 0)
        throw ParseError("rate '" + std::string(text) + "' out of range [0, 100]");
    if (value > kMaxRate)
        throw ParseError("rate '" + std::string(text) + "' out of range [0, 100]");
    return value;
}

std::string format_rate(Micro rate) {
    Micro whole = rate / kMicroPerPercent;
    Micro frac = rate % kMicroPerPercent;
    std::string out = std::to_string(whole);
    if (frac != 0) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "%06lld", static_cast<long long>(frac));
        std::string digits(buf);
        while (digits.back() == '0')
            digits.pop_back();
        out += '.';
        out += digits;
    }
    return out;
}

} // namespace conduit
