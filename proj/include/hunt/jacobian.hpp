#ifndef HUNT_JACOBIAN_HPP
#define HUNT_JACOBIAN_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "hunt/curves.hpp"
#include "hunt/zeta.hpp"

namespace hunt::jacobian {

using curves::CurveFunction;
using curves::CurvePtr;
using curves::Divisor;
using curves::Place;

// dimension of L(D) = { f : div(f) + D >= 0 } over F_q
int rr_dim(const CurvePtr& C, const Divisor& D);
std::vector<CurveFunction> rr_basis(const CurvePtr& C, const Divisor& D);

// deg D = 0 required; true iff D is a principal divisor
bool is_principal(const CurvePtr& C, const Divisor& D);

// f with div(f) = D exactly (D principal); deterministic normalization
CurveFunction function_with_divisor(const CurvePtr& C, const Divisor& D);

// L-polynomial of the curve from exhaustive counts N_1..N_g
zeta::LPolynomial l_polynomial(const CurvePtr& C);

struct ClassGroupImpl;

// Finite abelian group structure of the degree-0 class group.
struct ClassGroupStructure {
    CurvePtr curve;
    std::vector<std::int64_t> invariants; // d_1 | d_2 | ... | d_r
    std::int64_t order = 1;
    std::vector<Divisor> generators; // degree-0 class representatives, one per factor
    const Place* base = nullptr;     // rational base point for the Abel-Jacobi map
    std::shared_ptr<ClassGroupImpl> impl;

    // coordinates of a degree-0 divisor class in the invariant-factor basis
    std::vector<std::int64_t> coordinates_of(const Divisor& D) const;
    std::string to_string() const; // "Z/2 x Z/16"
};

// order bound guards the discrete-log table materialization
ClassGroupStructure class_group_structure(const CurvePtr& C, std::int64_t order_bound = 5000);

// phi(Q) = class of Q - deg(Q) * base in the structure's coordinates
std::vector<std::int64_t> abel_jacobi(const ClassGroupStructure& G, const Place* Q);

// Mumford arithmetic for y^2 + h y = f models (used by the class-group engine
// on hyperelliptic shapes; exposed for tests).
namespace mumford {
struct Elt {
    poly::Poly u, v; // reduced: deg v < deg u <= g, u | v^2 + vh - f
    bool operator==(const Elt& o) const { return u == o.u && v == o.v; }
};
Elt identity(const CurvePtr& C);
Elt compose(const CurvePtr& C, const Elt& a, const Elt& b); // with reduction
Elt negate(const CurvePtr& C, const Elt& a);
Elt from_place(const CurvePtr& C, const Place* P); // class of P - deg(P)*infinity
bool applicable(const CurvePtr& C);                // imaginary model with one infinite place
} // namespace mumford

} // namespace hunt::jacobian

#endif
