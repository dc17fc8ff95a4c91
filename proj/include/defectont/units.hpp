#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "defectont/decimal.hpp"

namespace defectont {

enum class Dimension { Length, Area, Temperature };

const char* to_string(Dimension d);

// A measured value as it appears in `data` statements: "1500 mm", "300 K".
struct Quantity {
    Decimal value;
    std::string unit;

    bool operator==(const Quantity&) const = default;
    std::string to_string() const { return value.to_string() + " " + unit; }
};

// Unit codes with conversion to a per-dimension base unit:
//   base = value * factor + offset
// Base units: m (length), m2 (area), K (temperature).
class UnitRegistry {
  public:
    struct Entry {
        std::string code;
        Dimension dimension;
        Decimal factor;
        Decimal offset;
    };

    // The registry used by `.dlo` data statements: m mm um m2 mm2 K degC.
    static const UnitRegistry& standard();

    UnitRegistry(std::initializer_list<Entry> entries);

    const Entry* find(std::string_view code) const;
    const Entry& require(std::string_view code) const;  // throws Unit error
    bool known(std::string_view code) const { return find(code) != nullptr; }

    // Throws Unit error on unknown code or dimension mismatch.
    Quantity convert(const Quantity& q, std::string_view target) const;

  private:
    std::vector<Entry> entries_;
};

}  // namespace defectont
