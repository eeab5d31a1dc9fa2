#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hunt/jacobian.hpp"

using namespace hunt;
using namespace hunt::curves;
using namespace hunt::jacobian;
using hunt::ff::get_field;

TEST_CASE("riemann-roch dimensions on the genus-1 curve") {
    auto F2 = get_field(2, 1);
    auto C = parse_curve("y^2+y=x^3+x", F2);
    Divisor zero;
    CHECK(rr_dim(C, zero) == 1); // constants
    const Place* P0 = C->infinite_place();
    Divisor D;
    D.add(P0, 3);
    CHECK(rr_dim(C, D) == 3); // deg >= 2g-1: l = deg - g + 1 = 3
    Divisor neg;
    neg.add(P0, -1);
    CHECK(rr_dim(C, neg) == 0);
    // l(P) = 1 on a genus-1 curve
    Divisor D1;
    D1.add(P0, 1);
    CHECK(rr_dim(C, D1) == 1);
}

TEST_CASE("riemann-roch identity with the canonical divisor") {
    auto F2 = get_field(2, 1);
    auto F3 = get_field(3, 1);
    for (auto [txt, Fp] : std::vector<std::pair<std::string, ff::FieldPtr>>{
             {"y^2+y=x^3+x", F2},
             {"y^2+y=(x^2+x)/(x^3+x^2+1)", F2},
             {"y^2=x^5+x^3+x+1", F3}}) {
        auto C = parse_curve(txt, Fp);
        int g = C->curve_genus();
        Divisor K = C->canonical_divisor();
        auto rat = C->places(1);
        // a few deterministic divisors
        for (int t = 0; t < 6; ++t) {
            Divisor D;
            for (size_t i = 0; i < rat.size(); ++i) {
                int c = int((i + t) % 3) - 1;
                D.add(rat[i], c);
            }
            int lhs = rr_dim(C, D) - rr_dim(C, K - D);
            CHECK(lhs == D.degree() - g + 1);
        }
    }
}

TEST_CASE("genus-1 curve: group order 5 and the paper's condition (1)") {
    auto F2 = get_field(2, 1);
    auto C = parse_curve("y^2+y=x^3+x", F2);
    auto G = class_group_structure(C);
    CHECK(G.order == 5);
    CHECK(G.invariants == std::vector<std::int64_t>{5});
    auto rat = C->places(1);
    REQUIRE(rat.size() == 5);
    // phi values in Z/5, with phi(base) = 0
    std::vector<std::int64_t> phi;
    for (auto* P : rat) phi.push_back(abel_jacobi(G, P)[0]);
    CHECK(phi[0] == 0);
    // exhaustive: for all |a_i| <= 2, sum a_i = 0: principal <=> sum a_i phi_i = 0 mod 5
    int checked = 0;
    for (int a0 = -2; a0 <= 2; ++a0)
        for (int a1 = -2; a1 <= 2; ++a1)
            for (int a2 = -2; a2 <= 2; ++a2)
                for (int a3 = -2; a3 <= 2; ++a3)
                    for (int a4 = -2; a4 <= 2; ++a4) {
                        if (a0 + a1 + a2 + a3 + a4 != 0) continue;
                        Divisor D;
                        int as[5] = {a0, a1, a2, a3, a4};
                        long long s = 0;
                        for (int i = 0; i < 5; ++i) {
                            D.add(rat[i], as[i]);
                            s += as[i] * phi[i];
                        }
                        bool expect = ((s % 5) + 5) % 5 == 0;
                        CHECK(is_principal(C, D) == expect);
                        ++checked;
                    }
    CHECK(checked == 381);
}

TEST_CASE("function_with_divisor round trip") {
    auto F2 = get_field(2, 1);
    auto C = parse_curve("y^2+y=x^3+x", F2);
    auto G = class_group_structure(C);
    auto rat = C->places(1);
    std::vector<std::int64_t> phi;
    for (auto* P : rat) phi.push_back(abel_jacobi(G, P)[0]);
    // find the relabeling matching the paper's [-3,-1,2,1,1] relation:
    // need points with phi = (0,1,2,3,4) * u
    for (int u = 1; u < 5; ++u) {
        std::vector<const Place*> byphi(5, nullptr);
        for (size_t i = 0; i < rat.size(); ++i) byphi[std::size_t(phi[i] * u % 5)] = rat[i];
        int a[5] = {-3, -1, 2, 1, 1};
        Divisor D;
        for (int i = 0; i < 5; ++i) D.add(byphi[i], a[i]);
        if (!is_principal(C, D)) continue;
        auto f = function_with_divisor(C, D);
        CHECK(C->divisor_of(f) == D);
        return;
    }
    FAIL("no labeling made the paper relation principal");
}

TEST_CASE("Z/19 class group of the genus-2 curve") {
    auto F2 = get_field(2, 1);
    auto C = parse_curve("y^2+y=(x^2+x)/(x^3+x^2+1)", F2);
    auto G = class_group_structure(C);
    CHECK(G.order == 19);
    CHECK(G.invariants == std::vector<std::int64_t>{19});
    CHECK(G.to_string() == "Z/19");
    // m * phi(Q) = 0 for every place of degree <= 2
    for (int d = 1; d <= 2; ++d)
        for (auto* Q : C->places(d)) {
            auto v = abel_jacobi(G, Q);
            Divisor D;
            D.add(Q, 19);
            D.add(G.base, -19 * Q->degree);
            CHECK(is_principal(C, D));
            (void)v;
        }
}

TEST_CASE("mumford arithmetic agrees with principality") {
    auto F2 = get_field(2, 1);
    auto C = parse_curve("y^2+y=x^3+x", F2);
    REQUIRE(jacobian::mumford::applicable(C));
    auto rat = C->places(1);
    // order of P - base divides 5
    auto m0 = jacobian::mumford::from_place(C, rat[1]);
    auto acc = jacobian::mumford::identity(C);
    int order = 0;
    for (int i = 1; i <= 5; ++i) {
        acc = jacobian::mumford::compose(C, acc, m0);
        auto negbase = jacobian::mumford::negate(C, jacobian::mumford::from_place(C, rat[0]));
        (void)negbase;
        if (acc == jacobian::mumford::identity(C)) {
            order = i;
            break;
        }
    }
    // class of P1 - P0: since from_place gives P - deg*inf, combine
    // simpler check: 5 * (P1 - P0) principal via the engine elsewhere; here just
    // confirm compose/negate are inverse
    auto minv = jacobian::mumford::negate(C, m0);
    auto z = jacobian::mumford::compose(C, m0, minv);
    CHECK(z == jacobian::mumford::identity(C));
    (void)order;
}

TEST_CASE("class group of the genus-4 curve is Z/2 x Z/16") {
    auto F2 = get_field(2, 1);
    auto C = parse_curve("y^2+y=(x^7+x^5+1)/(x^2+x)", F2);
    CHECK(C->curve_genus() == 4);
    auto L = l_polynomial(C);
    CHECK(L.class_number() == 32);
    auto G = class_group_structure(C);
    CHECK(G.order == 32);
    CHECK(G.invariants == std::vector<std::int64_t>{2, 16});
    // the three rational points' images generate a subgroup of order 4:
    // differences map to (0,0), (1,0), (1,8) up to automorphism
    auto rat = C->places(1);
    REQUIRE(rat.size() == 3);
    std::set<std::vector<std::int64_t>> imgs;
    for (auto* P : rat) imgs.insert(abel_jacobi(G, P));
    CHECK(imgs.size() == 3);
}

TEST_CASE("class group of the F3 genus-2 curve y^3-y=x-1/x is Z/6 x Z/6") {
    auto F3 = get_field(3, 1);
    auto C = parse_curve("y^3-y=x-1/x", F3);
    auto G = class_group_structure(C);
    CHECK(G.order == 36);
    CHECK(G.invariants == std::vector<std::int64_t>{6, 6});
}

TEST_CASE("plane quartic class group Z/71") {
    auto F2 = get_field(2, 1);
    auto C = parse_curve("x^3y+x^3z+x^2y^2+xz^3+y^3z+y^2z^2=0", F2);
    auto G = class_group_structure(C);
    CHECK(G.order == 71);
    CHECK(G.invariants == std::vector<std::int64_t>{71});
    // the 7 rational points have distinct nonzero images except the base
    auto rat = C->places(1);
    REQUIRE(rat.size() == 7);
    std::set<std::int64_t> seen;
    for (auto* P : rat) seen.insert(abel_jacobi(G, P)[0]);
    CHECK(seen.size() == 7);
}
