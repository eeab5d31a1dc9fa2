#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hunt/curves.hpp"

using namespace hunt;
using namespace hunt::curves;
using hunt::ff::get_field;

TEST_CASE("parse shapes and genus") {
    auto F2 = get_field(2, 1);
    auto F3 = get_field(3, 1);

    auto C1 = parse_curve("y^2+y=x^3+x", F2);
    CHECK(C1->shape == Shape::Tower);
    CHECK(C1->curve_genus() == 1);

    auto C2 = parse_curve("y^2+y=(x^2+x)/(x^3+x^2+1)", F2);
    CHECK(C2->shape == Shape::Tower);
    CHECK(C2->curve_genus() == 2);

    auto C3 = parse_curve("y^3-y=x-1/x", F3);
    CHECK(C3->shape == Shape::Tower);
    CHECK(C3->curve_genus() == 2);

    auto C4 = parse_curve("x^3y+x^3z+x^2y^2+xz^3+y^3z+y^2z^2=0", F2);
    CHECK(C4->shape == Shape::Plane);
    CHECK(C4->curve_genus() == 3);

    auto C5 = parse_curve("y^2=x^5+x^3+x+1", F3);
    CHECK(C5->shape == Shape::Hyperelliptic);
    CHECK(C5->curve_genus() == 2);

    auto C6 = parse_curve("w1^2+w1=x^3+x; w2^2+w2=x^5+x^3", F2);
    CHECK(C6->shape == Shape::Tower);
    CHECK(C6->curve_genus() == 5);

    auto C7 = parse_curve("y^2+(x^3-x)y=x^7-x^2+x", F3);
    CHECK(C7->shape == Shape::Hyperelliptic);
    CHECK(C7->curve_genus() == 3);

    auto C8 = parse_curve("y^2+xy=x^9-x", F3);
    CHECK(C8->curve_genus() == 4);

    auto C9 = parse_curve("y^2+y=(x^7+x^5+1)/(x^2+x)", F2);
    CHECK(C9->curve_genus() == 4);
}

TEST_CASE("parse errors carry positions") {
    auto F2 = get_field(2, 1);
    CHECK_THROWS_AS(parse_curve("y^2=", get_field(3, 1)), Error);
    CHECK_THROWS_AS(parse_curve("y^2+", F2), Error);
    CHECK_THROWS_AS(parse_curve("u^2+u=x", F2), Error);
    CHECK_THROWS_AS(parse_curve("y^4=x", F2), Error);
}

TEST_CASE("parse print round trip") {
    auto F2 = get_field(2, 1);
    auto F3 = get_field(3, 1);
    for (auto [txt, Fp] : std::vector<std::pair<std::string, ff::FieldPtr>>{
             {"y^2+y=x^3+x", F2},
             {"y^2+y=(x^2+x)/(x^3+x^2+1)", F2},
             {"y^3-y=x-1/x", F3},
             {"x^3y+x^3z+x^2y^2+xz^3+y^3z+y^2z^2=0", F2},
             {"y^2=x^5+x^3+x+1", F3},
             {"w1^2+w1=x^3+x; w2^2+w2=x^5+x^3", F2}}) {
        auto C = parse_curve(txt, Fp);
        auto C2 = parse_curve(C->print(), Fp);
        CHECK(C2->print() == C->print());
        CHECK(C2->curve_genus() == C->curve_genus());
    }
}

TEST_CASE("point counts match the known small values") {
    auto F2 = get_field(2, 1);
    auto F3 = get_field(3, 1);

    auto C1 = parse_curve("y^2+y=x^3+x", F2);
    CHECK(C1->count_points(1) == 5);

    auto C2 = parse_curve("y^2+y=(x^2+x)/(x^3+x^2+1)", F2);
    CHECK(C2->count_points(1) == 6);
    CHECK(C2->count_points(2) == 6);

    auto C4 = parse_curve("x^3y+x^3z+x^2y^2+xz^3+y^3z+y^2z^2=0", F2);
    CHECK(C4->count_points(1) == 7);

    auto C6 = parse_curve("w1^2+w1=x^3+x; w2^2+w2=x^5+x^3", F2);
    CHECK(C6->count_points(1) == 9);

    auto C5 = parse_curve("y^2=x^5+x^3+x+1", F3); // [7, ...] with class number 27
    CHECK(C5->count_points(1) == 7);

    auto C7 = parse_curve("y^2=x^3+2x+1", F3);
    CHECK(C7->curve_genus() == 1);
    CHECK(C7->count_points(1) == 7);

    auto C9 = parse_curve("y^2+y=(x^7+x^5+1)/(x^2+x)", F2);
    CHECK(C9->count_points(1) == 3);

    auto C10 = parse_curve("y^2+y=x^5+x^3+x", get_field(2, 2));
    CHECK(C10->curve_genus() == 2);
    CHECK(C10->count_points(1) == 9);
}

TEST_CASE("F9 bitangent curve has 28 points") {
    auto F9 = get_field(3, 2);
    // alpha = least multiplicative generator; the curve is y^3 - y = alpha^2 x^4
    auto g = F9->generator();
    auto a2 = F9->mul(g, g);
    std::string eq = "y^3-y=(" + F9->to_string(a2) + ")x^4";
    auto C = parse_curve(eq, F9);
    CHECK(C->curve_genus() == 3);
    CHECK(C->count_points(1) == 28);
}

TEST_CASE("places: counts and degrees are consistent") {
    auto F2 = get_field(2, 1);
    auto C1 = parse_curve("y^2+y=x^3+x", F2);
    auto rat = C1->places(1);
    CHECK(rat.size() == 5);
    // B_2 = (N_2 - N_1)/2
    std::int64_t N1 = C1->count_points(1), N2 = C1->count_points(2);
    CHECK(int(C1->places(2).size()) == int((N2 - N1) / 2));
    // degree-3: N3 = N1 + 3*B3
    std::int64_t N3 = C1->count_points(3);
    CHECK(int(C1->places(3).size()) == int((N3 - N1) / 3));
    CHECK_THROWS_AS(C1->places(0), Error);

    auto C2 = parse_curve("y^2+y=(x^2+x)/(x^3+x^2+1)", F2);
    CHECK(C2->places(1).size() == 6);

    auto C4 = parse_curve("x^3y+x^3z+x^2y^2+xz^3+y^3z+y^2z^2=0", F2);
    CHECK(C4->places(1).size() == 7);
    std::int64_t M1 = C4->count_points(1), M2 = C4->count_points(2), M3 = C4->count_points(3);
    CHECK(int(C4->places(2).size()) == int((M2 - M1) / 2));
    CHECK(int(C4->places(3).size()) == int((M3 - M1) / 3));

    auto F3 = get_field(3, 1);
    auto C5 = parse_curve("y^2=x^5+x^3+x+1", F3);
    CHECK(C5->places(1).size() == 7);
    std::int64_t K1 = C5->count_points(1), K2 = C5->count_points(2);
    CHECK(int(C5->places(2).size()) == int((K2 - K1) / 2));

    auto C6 = parse_curve("w1^2+w1=x^3+x; w2^2+w2=x^5+x^3", F2);
    CHECK(C6->places(1).size() == 9);
    std::int64_t L1 = C6->count_points(1), L2 = C6->count_points(2);
    CHECK(int(C6->places(2).size()) == int((L2 - L1) / 2));
}

TEST_CASE("evaluate and divisors on the genus-1 curve") {
    auto F2 = get_field(2, 1);
    auto C = parse_curve("y^2+y=x^3+x", F2);
    auto x = C->fun_x();
    // constant function
    auto c1 = C->fun_constant(1);
    for (auto* P : C->places(1)) {
        auto e = C->evaluate(c1, P);
        CHECK(!e.is_pole);
        CHECK(e.value == 1);
    }
    // x has a pole of order 2 at infinity (e = 2) and zeros above x = 0
    const Place* Pinf = C->infinite_place();
    auto ev = C->evaluate(x, Pinf);
    CHECK(ev.is_pole);
    CHECK(ev.pole_order == 2);
    Divisor D = C->divisor_of(x);
    CHECK(D.degree() == 0);
    CHECK(D.mult_of(Pinf) == -2);
    // divisor of a nonzero constant is empty
    CHECK(C->divisor_of(c1).empty());
    CHECK_THROWS_AS(C->divisor_of(C->fun_zero()), Error);
    // canonical divisor has degree 2g-2 = 0
    CHECK(C->canonical_divisor().degree() == 0);
}

TEST_CASE("canonical divisor degrees across shapes") {
    auto F2 = get_field(2, 1);
    auto F3 = get_field(3, 1);
    for (auto [txt, Fp] : std::vector<std::pair<std::string, ff::FieldPtr>>{
             {"y^2+y=(x^2+x)/(x^3+x^2+1)", F2},
             {"x^3y+x^3z+x^2y^2+xz^3+y^3z+y^2z^2=0", F2},
             {"y^2=x^5+x^3+x+1", F3},
             {"w1^2+w1=x^3+x; w2^2+w2=x^5+x^3", F2},
             {"y^2+(x^3-x)y=x^7-x^2+x", F3}}) {
        auto C = parse_curve(txt, Fp);
        CHECK(C->canonical_divisor().degree() == 2 * C->curve_genus() - 2);
    }
}

TEST_CASE("singular models rejected") {
    auto F2 = get_field(2, 1);
    auto F3 = get_field(3, 1);
    CHECK_THROWS_AS(parse_curve("y^2=x^4+x^2", F3), Error); // not squarefree (x^2 factor)
    CHECK_THROWS_AS(parse_curve("x^4+y^4+z^4=0", F2), Error); // singular in char 2
    // reducible tower: f = h^2 + h for h = x
    CHECK_THROWS_AS(parse_curve("y^2+y=x^2+x", F2), Error);
}
