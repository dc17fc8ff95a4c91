#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "defectont/errors.hpp"

namespace defectont {

// Exact decimal number: mant * 10^exp with the mantissa normalized so that
// it carries no trailing zeros (and exp == 0 when mant == 0). Conversion
// factors in the unit registry are decimal, so unit conversion stays exact
// and golden answers never depend on binary rounding.
class Decimal {
  public:
    Decimal() = default;
    Decimal(int64_t mantissa, int32_t exponent);

    static Decimal from_int(int64_t v) { return Decimal(v, 0); }
    static std::optional<Decimal> try_parse(std::string_view text);
    static Decimal parse(std::string_view text);  // throws Value error

    int64_t mantissa() const { return mant_; }
    int32_t exponent() const { return exp_; }
    bool is_zero() const { return mant_ == 0; }
    bool is_negative() const { return mant_ < 0; }

    Decimal operator-() const { return Decimal(-mant_, exp_); }
    Decimal operator+(const Decimal& o) const;
    Decimal operator-(const Decimal& o) const;
    Decimal operator*(const Decimal& o) const;

    // Exact division; throws Value error if the quotient has no finite
    // decimal expansion within the supported precision.
    Decimal operator/(const Decimal& o) const;

    std::strong_ordering operator<=>(const Decimal& o) const;
    bool operator==(const Decimal& o) const = default;

    // Canonical form, e.g. "26.85", "-0.001", "1500".
    std::string to_string() const;

  private:
    int64_t mant_ = 0;
    int32_t exp_ = 0;
};

}  // namespace defectont
