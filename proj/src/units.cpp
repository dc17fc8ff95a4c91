#include "defectont/units.hpp"

#include <map>

namespace defectont {

const char* to_string(Dimension d) {
    switch (d) {
        case Dimension::Length: return "length";
        case Dimension::Area: return "area";
        case Dimension::Temperature: return "temperature";
    }
    return "?";
}

UnitRegistry::UnitRegistry(std::initializer_list<Entry> entries) : entries_(entries) {
    // Exactly one base (factor 1, offset 0) per dimension.
    std::map<Dimension, int> bases;
    for (const auto& e : entries_) {
        if (e.factor == Decimal::from_int(1) && e.offset.is_zero()) {
            bases[e.dimension] += 1;
        } else {
            bases.try_emplace(e.dimension, 0);
        }
    }
    for (const auto& [dim, count] : bases) {
        if (count != 1) {
            throw DloError(ErrorCategory::Internal,
                           std::string("unit registry: dimension ") + to_string(dim) +
                               " must have exactly one base unit");
        }
    }
}

const UnitRegistry& UnitRegistry::standard() {
    static const UnitRegistry registry{
        {"m", Dimension::Length, Decimal::from_int(1), Decimal()},
        {"mm", Dimension::Length, Decimal(1, -3), Decimal()},
        {"um", Dimension::Length, Decimal(1, -6), Decimal()},
        {"m2", Dimension::Area, Decimal::from_int(1), Decimal()},
        {"mm2", Dimension::Area, Decimal(1, -6), Decimal()},
        {"K", Dimension::Temperature, Decimal::from_int(1), Decimal()},
        {"degC", Dimension::Temperature, Decimal::from_int(1), Decimal(27315, -2)},
    };
    return registry;
}

const UnitRegistry::Entry* UnitRegistry::find(std::string_view code) const {
    for (const auto& e : entries_) {
        if (e.code == code) return &e;
    }
    return nullptr;
}

const UnitRegistry::Entry& UnitRegistry::require(std::string_view code) const {
    const Entry* e = find(code);
    if (!e) {
        throw DloError(ErrorCategory::Unit, "unknown unit '" + std::string(code) + "'");
    }
    return *e;
}

Quantity UnitRegistry::convert(const Quantity& q, std::string_view target) const {
    const Entry& from = require(q.unit);
    const Entry& to = require(target);
    if (from.dimension != to.dimension) {
        throw DloError(ErrorCategory::Unit,
                       "dimension mismatch: cannot convert " + q.unit + " (" +
                           to_string(from.dimension) + ") to " + std::string(target) +
                           " (" + to_string(to.dimension) + ")");
    }
    Decimal base = q.value * from.factor + from.offset;
    Decimal value = (base - to.offset) / to.factor;
    return Quantity{value, std::string(target)};
}

}  // namespace defectont
