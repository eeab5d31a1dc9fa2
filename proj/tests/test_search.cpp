#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hunt/search.hpp"

using namespace hunt;
using namespace hunt::search;
using hunt::ff::get_field;

TEST_CASE("plane curve decode anchors") {
    auto F3 = get_field(3, 1);
    // x^4 corresponds to 1 (and is singular, so construction rejects it)
    CHECK_THROWS_AS(decode_plane_curve(1, F3), Error);
    CHECK_THROWS_AS(decode_plane_curve(0, F3), Error);
    // the Klein curve x^3y + y^3z + z^3x corresponds to 196833
    auto K = decode_plane_curve(196833, F3);
    CHECK(K->shape == curves::Shape::Plane);
    CHECK(K->plane_form.coeff(3, 1) == 1);
    CHECK(K->plane_form.coeff(0, 3) == 1);
    CHECK(K->plane_form.coeff(1, 0) == 1);
    CHECK(encode_plane_curve(K) == 196833);
    // a table row: 687439 has 8 points over F_3
    auto C = decode_plane_curve(687439, F3);
    CHECK(C->count_points(1) == 8);
    CHECK(encode_plane_curve(C) == 687439);
}

TEST_CASE("genus-2 census over F_2 has exactly 20 L-polynomials") {
    FamilyDescriptor d;
    d.kind = FamilyDescriptor::Kind::Genus2ArtinSchreier;
    d.F = get_field(2, 1);
    auto members = enumerate_family(d);
    CHECK(members.size() == 20);
    // spot rows from the table
    std::map<std::vector<std::int64_t>, zeta::Int> cl;
    for (auto& m : members) cl[m.counts] = m.L.class_number();
    CHECK(cl.at({6, 6}) == 19);
    CHECK(cl.at({0, 6}) == 1);
    CHECK(cl.at({2, 6}) == 3);
    CHECK(cl.at({5, 5}) == 13);
    // note: the printed table transposes the count pairs of the x^5+x+1 and
    // x^5+x^3+1 rows; the L and class-group columns pin the true pairing
    CHECK(cl.at({1, 9}) == 3);
    CHECK(cl.at({1, 5}) == 1);
    CHECK(cl.at({2, 4}) == 2); // the corrected row
    CHECK(cl.at({3, 3}) == 4);
    // each representative curve reproduces its counts
    for (auto& m : members) {
        REQUIRE(m.curve);
        CHECK(m.curve->curve_genus() == 2);
        CHECK(m.curve->count_points(1) == m.counts[0]);
        CHECK(m.curve->count_points(2) == m.counts[1]);
    }
}

TEST_CASE("odd hyperelliptic census over F_3 finds the harvest rows") {
    FamilyDescriptor d;
    d.kind = FamilyDescriptor::Kind::HyperellipticOdd;
    d.F = get_field(3, 1);
    d.max_deg = 6;
    auto members = enumerate_family(d);
    std::set<std::vector<std::int64_t>> sigs;
    for (auto& m : members)
        if (m.L.genus() == 2) sigs.insert(m.counts);
    for (auto want : std::vector<std::vector<std::int64_t>>{{8, 14}, {7, 15}, {6, 16}, {6, 18}, {6, 20}})
        CHECK(sigs.count(want));
}

TEST_CASE("relation search on the genus-1 curve matches the brute oracle") {
    auto F2 = get_field(2, 1);
    auto C = curves::parse_curve("y^2+y=x^3+x", F2);
    auto G = jacobian::class_group_structure(C);
    RelationBounds b;
    b.max_abs = 2;
    auto rels = search_relations(G, b);
    // oracle: degree-0 vectors with sum a_i phi_i = 0 over all 5^5 vectors
    auto rat = C->places(1);
    std::vector<std::int64_t> phi;
    for (auto* P : rat) phi.push_back(jacobian::abel_jacobi(G, P)[0]);
    int expect = 0;
    for (int a0 = -2; a0 <= 2; ++a0)
        for (int a1 = -2; a1 <= 2; ++a1)
            for (int a2 = -2; a2 <= 2; ++a2)
                for (int a3 = -2; a3 <= 2; ++a3)
                    for (int a4 = -2; a4 <= 2; ++a4) {
                        if (!a0 && !a1 && !a2 && !a3 && !a4) continue;
                        if (a0 + a1 + a2 + a3 + a4 != 0) continue;
                        long long s = a0 * phi[0] + a1 * phi[1] + a2 * phi[2] + a3 * phi[3] +
                                      a4 * phi[4];
                        if (((s % 5) + 5) % 5 == 0) ++expect;
                    }
    CHECK(int(rels.size()) == expect);
    for (auto& r : rels) CHECK(r.divisor.degree() == 0);
}

TEST_CASE("subgroup search counts: (Z/2)^3 has 7 index-2 subgroups") {
    auto hits = search_subgroups({2, 2, 2}, {}, 2, 2);
    CHECK(hits.size() == 7);
    for (auto& h : hits) CHECK(h.index == 2);
    // index 1: the whole group covers everything
    auto hits1 = search_subgroups({2, 2, 2}, {{0, 0, 0}, {1, 1, 0}}, 1, 1);
    REQUIRE(hits1.size() == 1);
    CHECK(hits1[0].covered == 2);
}

TEST_CASE("hunt over the genus-1 base reproduces the single covers") {
    auto F2 = get_field(2, 1);
    auto C = curves::parse_curve("y^2+y=x^3+x", F2);
    auto G = jacobian::class_group_structure(C);
    RelationBounds b;
    b.max_abs = 3;
    auto rels = search_relations(G, b);
    REQUIRE(!rels.empty());
    HuntConfig cfg;
    cfg.base = C;
    // relations with odd pole orders give honest covers (even orders can
    // reduce to split covers, which the spec constructor rejects)
    for (auto& r : rels) {
        bool odd = true;
        for (int a : r.coeffs)
            if (a < 0 && (-a) % 2 == 0) odd = false;
        if (odd && r.predicted_points == 8) cfg.relations.push_back(r.divisor);
        if (cfg.relations.size() == 3) break;
    }
    REQUIRE(!cfg.relations.empty());
    cfg.fibre_max = 1;
    auto records = records::load_shipped();
    auto rep = search::hunt(cfg, records);
    CHECK(!rep.items.empty());
    bool found48 = false;
    for (auto& it : rep.items)
        if (it.report.genus == 4 && it.report.points == 8) found48 = true;
    CHECK(found48);
    CHECK(!rep.any_exceeds_upper);
    // report lines parse as JSON
    CHECK(rep.to_jsonl().find("\"certificate\":\"explicit-AS\"") != std::string::npos);
    // empty strategies give an empty report
    HuntConfig empty;
    empty.base = C;
    auto rep2 = search::hunt(empty, records);
    CHECK(rep2.items.empty());
}
