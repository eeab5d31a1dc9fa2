#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hunt/ff.hpp"

using namespace hunt;
using namespace hunt::ff;

TEST_CASE("prime field basics") {
    auto F2 = Field::make(2, 1);
    CHECK(F2->q == 2);
    CHECK(F2->add(1, 1) == 0);
    CHECK(F2->trace_to_prime(1) == 1);
    auto F3 = Field::make(3, 1);
    CHECK(F3->mul(2, 2) == 1);
    CHECK(F3->inv(2) == 2);
}

TEST_CASE("non-prime characteristic rejected") {
    CHECK_THROWS_AS(Field::make(4, 1), Error);
    CHECK_THROWS_AS(Field::make(1, 1), Error);
}

TEST_CASE("reducible modulus rejected") {
    std::vector<int> mod = {1, 0, 1}; // x^2+1 = (x+1)^2 over F_2
    CHECK_THROWS_AS(Field::make(2, 2, &mod), Error);
}

TEST_CASE("F9 has a multiplicative generator of order 8") {
    auto F9 = Field::make(3, 2);
    CHECK(F9->q == 9);
    auto g = F9->generator();
    CHECK(F9->pow(g, 8) == 1);
    CHECK(F9->pow(g, 4) != 1);
    CHECK(F9->mult_order(g) == 8);
}

TEST_CASE("field axioms hold exhaustively for small fields") {
    for (auto [p, k] : {std::pair{2, 4}, {3, 3}, {2, 1}, {5, 2}}) {
        auto F = Field::make(p, k);
        auto all = enumerate(*F);
        // every nonzero element invertible, Frobenius bijective
        std::vector<bool> seen(F->q, false);
        for (auto a : all) {
            if (a != 0) CHECK(F->mul(a, F->inv(a)) == 1);
            auto fr = F->frob(a);
            CHECK(!seen[fr]);
            seen[fr] = true;
            CHECK(F->inv_frob(fr) == a);
        }
        // associativity / distributivity spot grid
        for (auto a : all)
            for (auto b : all) {
                CHECK(F->add(a, b) == F->add(b, a));
                CHECK(F->mul(a, b) == F->mul(b, a));
                if (a && b) CHECK(F->mul(a, b) != 0);
            }
        auto c1 = all[F->q / 2], c2 = all[F->q - 1], c3 = all[1];
        CHECK(F->mul(c1, F->add(c2, c3)) == F->add(F->mul(c1, c2), F->mul(c1, c3)));
    }
}

TEST_CASE("trace properties") {
    for (auto [p, k] : {std::pair{2, 4}, {3, 2}, {2, 3}}) {
        auto F = Field::make(p, k);
        CHECK(F->trace_to_prime(0) == 0);
        int zero_count = 0;
        for (auto a : enumerate(*F)) {
            CHECK(F->trace_to_prime(F->frob(a)) == F->trace_to_prime(a));
            // additivity
            CHECK(F->trace_to_prime(F->add(a, 1)) ==
                  (F->trace_to_prime(a) + F->trace_to_prime(1)) % p);
            if (F->trace_to_prime(a) == 0) ++zero_count;
        }
        CHECK(zero_count == int(F->q) / p); // exactly q/p elements have trace 0
    }
}

TEST_CASE("trace in F4 of generator is 1") {
    auto F4 = Field::make(2, 2); // modulus x^2+x+1, a^2 = a+1
    elt a = 2;                   // the root
    CHECK(F4->mul(a, a) == F4->add(a, 1));
    CHECK(F4->trace_to_prime(a) == 1);
}

TEST_CASE("embedding is a ring homomorphism") {
    auto F4 = get_field(2, 2);
    auto F16 = get_field(2, 4);
    auto e = get_embedding(F4, F16);
    CHECK(e->map(0) == 0);
    CHECK(e->map(1) == 1);
    for (auto a : enumerate(*F4))
        for (auto b : enumerate(*F4)) {
            CHECK(e->map(F4->add(a, b)) == F16->add(e->map(a), e->map(b)));
            CHECK(e->map(F4->mul(a, b)) == F16->mul(e->map(a), e->map(b)));
        }
    elt back;
    CHECK(e->preimage(e->map(3), back));
    CHECK(back == 3);
}

TEST_CASE("incompatible embedding rejected") {
    auto F4 = get_field(2, 2);
    auto F8 = get_field(2, 3);
    CHECK_THROWS_AS(Embedding(F4, F8), Error);
}

TEST_CASE("artin-schreier roots") {
    for (auto [p, k] : {std::pair{2, 3}, {3, 2}, {2, 4}}) {
        auto F = Field::make(p, k);
        for (auto c : enumerate(*F)) {
            elt w;
            bool ok = F->artin_schreier_root(c, w);
            CHECK(ok == (F->trace_to_prime(c) == 0));
            if (ok) CHECK(F->sub(F->frob(w), w) == c);
        }
    }
}

TEST_CASE("sqrt in odd characteristic") {
    auto F9 = Field::make(3, 2);
    int squares = 0;
    for (auto a : enumerate(*F9)) {
        elt r;
        if (F9->sqrt(a, r)) {
            CHECK(F9->mul(r, r) == a);
            ++squares;
        }
    }
    CHECK(squares == 5); // 0 plus (q-1)/2 nonzero squares
}

TEST_CASE("large internal field arithmetic") {
    auto F = Field::make_internal(2, 21);
    elt a = 12345, b = 987654;
    CHECK(F->mul(a, F->inv(a)) == 1);
    CHECK(F->mul(F->add(a, b), F->add(a, b)) == F->add(F->mul(a, a), F->mul(b, b)));
    CHECK(F->inv_frob(F->frob(a)) == a);
}
