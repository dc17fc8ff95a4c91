#include "defectont/decimal.hpp"

#include <cctype>
#include <cstdlib>

namespace defectont {

namespace {

using int128 = __int128;

constexpr int64_t kMantLimit = INT64_MAX / 10;

int64_t checked_narrow(int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) {
        throw DloError(ErrorCategory::Value, "decimal overflow");
    }
    return static_cast<int64_t>(v);
}

// Scale both mantissas to a common exponent (the smaller of the two).
void align(const Decimal& a, const Decimal& b, int128& ma, int128& mb, int32_t& e) {
    e = std::min(a.exponent(), b.exponent());
    ma = a.mantissa();
    mb = b.mantissa();
    for (int32_t i = e; i < a.exponent(); ++i) ma *= 10;
    for (int32_t i = e; i < b.exponent(); ++i) mb *= 10;
}

}  // namespace

Decimal::Decimal(int64_t mantissa, int32_t exponent) : mant_(mantissa), exp_(exponent) {
    if (mant_ == 0) {
        exp_ = 0;
        return;
    }
    while (mant_ % 10 == 0) {
        mant_ /= 10;
        ++exp_;
    }
}

std::optional<Decimal> Decimal::try_parse(std::string_view text) {
    if (text.empty()) return std::nullopt;
    size_t i = 0;
    bool negative = false;
    if (text[i] == '+' || text[i] == '-') {
        negative = text[i] == '-';
        ++i;
    }
    int64_t mant = 0;
    int32_t exp = 0;
    bool any_digit = false;
    bool seen_point = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c == '.') {
            if (seen_point) return std::nullopt;
            seen_point = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
        if (mant > kMantLimit) return std::nullopt;
        mant = mant * 10 + (c - '0');
        if (seen_point) --exp;
        any_digit = true;
    }
    if (!any_digit) return std::nullopt;
    return Decimal(negative ? -mant : mant, exp);
}

Decimal Decimal::parse(std::string_view text) {
    auto d = try_parse(text);
    if (!d) {
        throw DloError(ErrorCategory::Value,
                       "not a decimal literal: '" + std::string(text) + "'");
    }
    return *d;
}

Decimal Decimal::operator+(const Decimal& o) const {
    int128 ma, mb;
    int32_t e;
    align(*this, o, ma, mb, e);
    return Decimal(checked_narrow(ma + mb), e);
}

Decimal Decimal::operator-(const Decimal& o) const { return *this + (-o); }

Decimal Decimal::operator*(const Decimal& o) const {
    int128 m = static_cast<int128>(mant_) * o.mant_;
    return Decimal(checked_narrow(m), exp_ + o.exp_);
}

Decimal Decimal::operator/(const Decimal& o) const {
    if (o.is_zero()) throw DloError(ErrorCategory::Value, "decimal division by zero");
    if (is_zero()) return Decimal();
    int128 num = mant_;
    int32_t exp = exp_ - o.exp_;
    // Shift the numerator by powers of ten until the division is exact.
    for (int attempts = 0; attempts < 40; ++attempts) {
        if (num % o.mant_ == 0) {
            return Decimal(checked_narrow(num / o.mant_), exp);
        }
        num *= 10;
        --exp;
    }
    throw DloError(ErrorCategory::Value, "decimal quotient is not finite");
}

std::strong_ordering Decimal::operator<=>(const Decimal& o) const {
    int128 ma, mb;
    int32_t e;
    align(*this, o, ma, mb, e);
    if (ma < mb) return std::strong_ordering::less;
    if (ma > mb) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Decimal::to_string() const {
    if (mant_ == 0) return "0";
    std::string digits = std::to_string(mant_ < 0 ? -mant_ : mant_);
    std::string out = mant_ < 0 ? "-" : "";
    if (exp_ >= 0) {
        out += digits;
        out.append(static_cast<size_t>(exp_), '0');
        return out;
    }
    size_t frac = static_cast<size_t>(-exp_);
    if (frac >= digits.size()) {
        out += "0.";
        out.append(frac - digits.size(), '0');
        out += digits;
    } else {
        out += digits.substr(0, digits.size() - frac);
        out += ".";
        out += digits.substr(digits.size() - frac);
    }
    return out;
}

}  // namespace defectont
