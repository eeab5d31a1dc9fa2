#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hunt/poly.hpp"

using namespace hunt;
using namespace hunt::poly;
using hunt::ff::Field;
using hunt::ff::get_embedding;
using hunt::ff::get_field;

TEST_CASE("poly arithmetic and divmod") {
    auto F = get_field(2, 1);
    Poly a(F, {1, 1, 0, 1});       // x^3+x+1
    Poly b(F, {1, 1});             // x+1
    auto [q, r] = a.divmod(b);
    CHECK((q * b + r) == a);
    CHECK(r.deg() < b.deg());
    CHECK(gcd(a, b).is_one());
    Poly u(F), v(F);
    Poly g = xgcd(a, b, u, v);
    CHECK((u * a + v * b) == g);
}

TEST_CASE("irreducibility and factorization over F2") {
    auto F = get_field(2, 1);
    Poly f(F, {1, 1, 0, 1}); // x^3+x+1 irreducible
    CHECK(f.irreducible());
    Poly g(F, {1, 0, 0, 1}); // x^3+1 = (x+1)(x^2+x+1)
    CHECK(!g.irreducible());
    auto fac = g.factor();
    CHECK(fac.factors.size() == 2);
    Poly prod = Poly::constant(F, fac.lead);
    for (auto& [p, m] : fac.factors) prod = prod * p.pow(m);
    CHECK(prod == g);
}

TEST_CASE("repeated factors and p-th powers") {
    auto F = get_field(3, 1);
    Poly x = Poly::x(F);
    Poly f = (x + Poly::constant(F, 1)).pow(3) * (x.pow(2) + Poly::constant(F, 1));
    auto fac = f.factor();
    Poly prod = Poly::constant(F, fac.lead);
    int total = 0;
    for (auto& [p, m] : fac.factors) {
        CHECK(p.irreducible());
        prod = prod * p.pow(m);
        total += m * p.deg();
    }
    CHECK(prod == f);
    CHECK(total == f.deg());
}

TEST_CASE("counts of monic irreducibles") {
    auto F2 = get_field(2, 1);
    CHECK(monic_irreducibles(F2, 1).size() == 2);
    CHECK(monic_irreducibles(F2, 2).size() == 1);
    CHECK(monic_irreducibles(F2, 3).size() == 2);
    CHECK(monic_irreducibles(F2, 4).size() == 3);
    auto F3 = get_field(3, 1);
    CHECK(monic_irreducibles(F3, 2).size() == 3);
    auto F4 = get_field(2, 2);
    CHECK(monic_irreducibles(F4, 2).size() == 6);
}

TEST_CASE("roots in extension fields") {
    auto F2 = get_field(2, 1);
    auto F8 = get_field(2, 3);
    Poly f(F2, {1, 1, 0, 1}); // x^3+x+1 splits in F8
    auto emb = get_embedding(F2, F8);
    auto roots = f.roots_in(*emb);
    CHECK(roots.size() == 3);
    for (auto r : roots) CHECK(f.eval_ext(r, *emb) == 0);
}

TEST_CASE("rational function valuations") {
    auto F = get_field(2, 1);
    Poly x = Poly::x(F);
    Poly num(F, {0, 1, 1});    // x^2+x
    Poly den(F, {1, 0, 1, 1}); // x^3+x^2+1
    RatFun f(num, den);
    CHECK(f.val_at(den) == -1);
    CHECK(f.val_at(x) == 1);
    CHECK(f.val_at_infinity() == 1);
    RatFun g = f + f; // zero in char 2
    CHECK(g.is_zero());
    RatFun h = RatFun(Poly::constant(F, 1), x) + RatFun(x.pow(3));
    CHECK(h.val_at(x) == -1);
    CHECK(h.val_at_infinity() == -3);
}

TEST_CASE("expand_at computes shifted coefficients") {
    auto F = get_field(3, 1);
    Poly f(F, {1, 2, 1}); // (x+1)^2
    auto self = get_embedding(F, F);
    auto c = f.expand_at(2, *self); // f(2+t) = (t+3)^2 = t^2 mod 3
    CHECK(c[0] == 0);
    CHECK(c[1] == 0);
    CHECK(c[2] == 1);
}

TEST_CASE("triform evaluation, partials, line restriction") {
    auto F = get_field(2, 1);
    TriForm quartic(F, 4);
    // x^3y+x^3z+x^2y^2+xz^3+y^3z+y^2z^2 (smooth quartic over F2)
    quartic.set_coeff(3, 1, 1);
    quartic.set_coeff(3, 0, 1);
    quartic.set_coeff(2, 2, 1);
    quartic.set_coeff(1, 0, 1);
    quartic.set_coeff(0, 3, 1);
    quartic.set_coeff(0, 2, 1);
    CHECK(quartic.to_string() == "x^3y+x^3z+x^2y^2+xz^3+y^3z+y^2z^2");
    CHECK(quartic.eval(0, 0, 1) == 0);
    CHECK(quartic.eval(1, 1, 1) == 0);
    auto gy = quartic.partial(1);
    CHECK(gy.degree() == 3);
    auto self = get_embedding(F, F);
    // restriction to the line z=0 through (0:0:1)? use P=(1,0,0), Q=(0,1,0): points (1:s:0)
    Poly r = quartic.restrict_line({1, 0, 0}, {0, 1, 0}, *self);
    CHECK(r.deg() <= 4);
    CHECK(r.eval(0) == quartic.eval(1, 0, 0));
}
