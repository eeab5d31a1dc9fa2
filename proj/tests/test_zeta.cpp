#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hunt/zeta.hpp"

using namespace hunt;
using namespace hunt::zeta;

static LPolynomial L(std::uint64_t q, int g, std::vector<long> v) {
    std::vector<Int> c(v.begin(), v.end());
    return LPolynomial(q, g, std::move(c));
}

TEST_CASE("from_counts reproduces known L-polynomials") {
    // genus 1 over F2 with 5 points: 2t^2 + 2t + 1
    auto L1 = LPolynomial::from_counts({5}, 2, 1);
    CHECK(L1 == L(2, 1, {1, 2, 2}));
    // genus 2 over F2 with [5,5]: 4t^4+4t^3+2t^2+2t+1
    auto L2 = LPolynomial::from_counts({5, 5}, 2, 2);
    CHECK(L2 == L(2, 2, {1, 2, 2, 4, 4}));
    // the [2,4] row: 4t^4 - 2t^3 + 0t^2 - t + 1, with L(1) = 2
    auto L3 = LPolynomial::from_counts({2, 4}, 2, 2);
    CHECK(L3 == L(2, 2, {1, -1, 0, -2, 4}));
    CHECK(L3.class_number() == 2);
}

TEST_CASE("counts_from_l inverts and extends") {
    auto L1 = L(2, 1, {1, 2, 2});
    CHECK(L1.count_i64(1) == 5);
    auto L2 = L(2, 2, {1, 3, 5, 6, 4}); // genus-2 row with [6,6]
    CHECK(L2.count_i64(1) == 6);
    CHECK(L2.count_i64(2) == 6);
    CHECK(L2.class_number() == 19);
    // genus 0: unit polynomial gives q^n + 1
    auto L0 = L(7, 0, {1});
    CHECK(L0.count_i64(1) == 8);
    CHECK(L0.count_i64(3) == 344);
}

TEST_CASE("round-trip counts -> L -> counts") {
    for (auto counts : std::vector<std::vector<std::int64_t>>{{3, 9}, {5, 9}, {1, 5}, {4, 8}}) {
        auto Lp = LPolynomial::from_counts(counts, 2, 2);
        CHECK(Lp.count_i64(1) == counts[0]);
        CHECK(Lp.count_i64(2) == counts[1]);
    }
}

TEST_CASE("class numbers from the tables") {
    CHECK(L(2, 2, {1, 3, 5, 6, 4}).class_number() == 19);
    // 16t^8+4t^6+4t^5+4t^4+2t^3+t^2+1 -> 32
    CHECK(L(2, 4, {1, 0, 1, 2, 4, 4, 4, 0, 16}).class_number() == 32);
    CHECK(L(2, 1, {1, 2, 2}).class_number() == 5);
}

TEST_CASE("weil violations rejected") {
    CHECK_THROWS_AS(LPolynomial::from_counts({20}, 2, 1), Error);
    CHECK_THROWS_AS(LPolynomial::from_counts({0, 100}, 2, 2), Error);
}

TEST_CASE("functional equation enforced") {
    std::vector<Int> bad = {1, -2, 0, -1, 1}; // the misprinted census row: a_4 != q^2
    CHECK_THROWS_AS(LPolynomial(2, 2, bad), Error);
}

TEST_CASE("extension index") {
    auto L2 = L(2, 2, {1, 2, 2, 4, 4}); // [5,5] curve
    CHECK(L2.extension_index(1) == 1);
    CHECK(L2.extension_index(3) == 13); // genus 14 = 13*(2-1)+1, 65 = 13*5
    auto L1 = L(2, 1, {1, 2, 2});
    CHECK(L1.extension_index(2) == 1); // L(-1) = 1
    // identity: index(n) * L(1) = class number over F_{q^n}
    for (int n : {2, 3}) {
        auto Ln = L2.base_change(n);
        CHECK(L2.extension_index(n) * L2.class_number() == Ln.class_number());
    }
}

TEST_CASE("base change consistency with count identity") {
    auto Lp = L(2, 2, {1, 3, 5, 6, 4});
    auto L2 = Lp.base_change(2);
    CHECK(L2.q() == 4);
    CHECK(L2.count_i64(1) == Lp.count_i64(2));
    CHECK(L2.count_i64(2) == Lp.count_i64(4));
}

TEST_CASE("printing") {
    auto Lp = L(2, 2, {1, 3, 5, 6, 4});
    CHECK(Lp.to_string_ascending() == "1 + 3t + 5t^2 + 6t^3 + 4t^4");
    CHECK(Lp.to_string_descending() == "4t^4 + 6t^3 + 5t^2 + 3t + 1");
    auto L3 = L(2, 2, {1, -1, 0, -2, 4});
    CHECK(L3.to_string_ascending() == "1 - t - 2t^3 + 4t^4");
}

TEST_CASE("resultant basics") {
    // res(t^2 - 1, t - 2) over Z: (2-1)(2+1)... res(A,B) = lc(A)^degB * prod B over roots of A
    std::vector<Int> A = {-1, 0, 1}, B = {-2, 1};
    CHECK(resultant(A, B) == 3);
    std::vector<Int> C = {1, 1}; // t+1
    CHECK(resultant(A, C) == 0);
}

TEST_CASE("genus-4 printed L-polynomial has degree-13 index for n=3") {
    // 16t^8+40t^7+56t^6+56t^5+44t^4+28t^3+14t^2+5t+1 with [8,8,8,16]
    auto Lp = L(2, 4, {1, 5, 14, 28, 44, 56, 56, 40, 16});
    CHECK(Lp.count_i64(1) == 8);
    CHECK(Lp.count_i64(2) == 8);
    CHECK(Lp.count_i64(3) == 8);
    CHECK(Lp.count_i64(4) == 16);
    CHECK(Lp.extension_index(3) == 13);
}
