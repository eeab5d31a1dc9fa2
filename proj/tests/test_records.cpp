#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>

#include "hunt/records.hpp"

using namespace hunt::records;

TEST_CASE("shipped tables: lookups") {
    auto rs = load_shipped();
    auto e = rs.current.lookup(2, 11);
    REQUIRE(e);
    CHECK(e->lower == 14);
    CHECK(*e->upper == 14);
    auto e2 = rs.current.lookup(2, 12);
    REQUIRE(e2);
    CHECK(e2->lower == 14);
    CHECK(*e2->upper == 15);
    CHECK(!rs.current.lookup(32, 22));
    auto e3 = rs.current.lookup(8, 14);
    REQUIRE(e3);
    CHECK(e3->lower == 65);
    CHECK(*e3->upper == 65);
    auto e4 = rs.current.lookup(16, 12);
    REQUIRE(e4);
    CHECK(e4->improved);
    CHECK(e4->lower == 88);
    // blank cells stay absent, never [0, inf)
    CHECK(!rs.current.lookup(128, 13));
    CHECK(!rs.current.lookup(3, 38));
}

TEST_CASE("classification semantics") {
    auto rs = load_shipped();
    CHECK(rs.current.classify(2, 12, 15) == Classification::ImprovesLower);
    CHECK(rs.current.classify(8, 14, 65) == Classification::MatchesLower);
    CHECK(rs.current.classify(8, 14, 66) == Classification::ExceedsUpper);
    CHECK(rs.current.classify(2, 12, 13) == Classification::BelowLower);
    // absent entries: a positive example improves
    CHECK(rs.current.classify(32, 22, 100) == Classification::ImprovesLower);
}

TEST_CASE("baseline snapshot carries the quoted intervals") {
    auto rs = load_shipped();
    auto e = rs.baseline.lookup(2, 32);
    REQUIRE(e);
    CHECK(e->lower == 26);
    CHECK(*e->upper == 29);
    CHECK(rs.baseline.classify(2, 32, 27) == Classification::ImprovesLower);
    CHECK(rs.baseline.classify(2, 43, 34) == Classification::ImprovesLower);
    CHECK(rs.baseline.classify(3, 30, 38) == Classification::ImprovesLower);
    CHECK(rs.baseline.classify(8, 20, 76) == Classification::ImprovesLower);
    CHECK(rs.baseline.classify(2, 61, 45) == Classification::ImprovesLower);
    CHECK(rs.baseline.classify(4, 40, 104) == Classification::ImprovesLower); // absent: new entry
    CHECK(rs.baseline.classify(8, 40, 104) == Classification::ImprovesLower);
}

TEST_CASE("round trip save/load") {
    auto rs = load_shipped();
    std::string tmp = "/tmp/records_rt.txt";
    rs.current.save(tmp);
    auto t2 = RecordTable::load(tmp, "current");
    CHECK(t2.size() == rs.current.size());
    for (auto& [k, e] : rs.current.entries()) {
        auto e2 = t2.lookup(e.q, e.g);
        REQUIRE(e2);
        CHECK(e2->lower == e.lower);
        CHECK(e2->upper == e.upper);
        CHECK(e2->improved == e.improved);
    }
    std::remove(tmp.c_str());
}
