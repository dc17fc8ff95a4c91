#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "defectont/decimal.hpp"
#include "defectont/units.hpp"

using namespace defectont;

TEST_CASE("decimal parse and print round-trips canonically") {
    CHECK(Decimal::parse("1500").to_string() == "1500");
    CHECK(Decimal::parse("0.05").to_string() == "0.05");
    CHECK(Decimal::parse("0.050").to_string() == "0.05");
    CHECK(Decimal::parse("-273.15").to_string() == "-273.15");
    CHECK(Decimal::parse("0").to_string() == "0");
    CHECK(Decimal::parse("26.85").to_string() == "26.85");
    CHECK(!Decimal::try_parse("1.2.3"));
    CHECK(!Decimal::try_parse("abc"));
    CHECK(!Decimal::try_parse(""));
}

TEST_CASE("decimal arithmetic is exact") {
    Decimal a = Decimal::parse("300");
    Decimal b = Decimal::parse("273.15");
    CHECK((a - b).to_string() == "26.85");
    CHECK((Decimal::parse("1500") * Decimal::parse("0.001")).to_string() == "1.5");
    CHECK((Decimal::parse("1.5") / Decimal::parse("0.001")).to_string() == "1500");
    CHECK(Decimal::parse("0.1") + Decimal::parse("0.2") == Decimal::parse("0.3"));
    CHECK_THROWS_AS(Decimal::parse("1") / Decimal::parse("3"), DloError);
    CHECK_THROWS_AS(Decimal::parse("1") / Decimal(), DloError);
}

TEST_CASE("metric prefix conversion") {
    const auto& reg = UnitRegistry::standard();
    Quantity q = reg.convert({Decimal::parse("1500"), "mm"}, "m");
    CHECK(q.value == Decimal::parse("1.5"));
    CHECK(q.unit == "m");
    CHECK(q.to_string() == "1.5 m");
}

TEST_CASE("kelvin to celsius uses the offset") {
    const auto& reg = UnitRegistry::standard();
    Quantity q = reg.convert({Decimal::parse("300"), "K"}, "degC");
    CHECK(q.value == Decimal::parse("26.85"));
    Quantity back = reg.convert(q, "K");
    CHECK(back.value == Decimal::parse("300"));
}

TEST_CASE("dimension mismatch is an error") {
    const auto& reg = UnitRegistry::standard();
    CHECK_THROWS_AS(reg.convert({Decimal::parse("2"), "mm"}, "degC"), DloError);
    CHECK_THROWS_AS(reg.convert({Decimal::parse("2"), "nope"}, "m"), DloError);
    CHECK_THROWS_AS(reg.convert({Decimal::parse("2"), "m2"}, "m"), DloError);
}

TEST_CASE("identity conversion returns the quantity unchanged") {
    const auto& reg = UnitRegistry::standard();
    Quantity q{Decimal::parse("0.05"), "mm"};
    CHECK(reg.convert(q, "mm") == q);
}

TEST_CASE("conversion round-trip is exact over the registry") {
    const auto& reg = UnitRegistry::standard();
    const char* units[] = {"m", "mm", "um", "m2", "mm2", "K", "degC"};
    const char* values[] = {"1", "0.05", "1500", "-40", "273.15", "0.000001", "99"};
    for (const char* u : units) {
        for (const char* v : values) {
            Quantity q{Decimal::parse(v), u};
            for (const char* t : units) {
                const auto* from = reg.find(u);
                const auto* to = reg.find(t);
                if (from->dimension != to->dimension) continue;
                CHECK(reg.convert(reg.convert(q, t), u) == q);
            }
        }
    }
}
