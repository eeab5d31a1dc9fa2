#ifndef HUNT_POLY_HPP
#define HUNT_POLY_HPP

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hunt/ff.hpp"

namespace hunt::poly {

using ff::elt;
using ff::EmbeddingPtr;
using ff::Field;
using ff::FieldPtr;

// Dense univariate polynomial over F_q.
class Poly {
public:
    Poly() = default;
    explicit Poly(FieldPtr F) : F_(std::move(F)) {}
    Poly(FieldPtr F, std::vector<elt> coeffs);
    static Poly constant(FieldPtr F, elt c);
    static Poly x(FieldPtr F); // the variable
    static Poly monomial(FieldPtr F, int deg, elt c);

    const FieldPtr& field() const { return F_; }
    int deg() const { return int(c_.size()) - 1; } // -1 for zero
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    elt coeff(int i) const { return (i >= 0 && i < int(c_.size())) ? c_[i] : 0; }
    elt lead() const { return c_.empty() ? 0 : c_.back(); }
    const std::vector<elt>& coeffs() const { return c_; }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    bool operator==(const Poly& o) const { return c_ == o.c_; }
    Poly scaled(elt s) const;
    Poly shifted(int n) const; // * x^n
    Poly pow(int n) const;

    // division with remainder; divisor must be nonzero
    std::pair<Poly, Poly> divmod(const Poly& d) const;
    Poly operator%(const Poly& d) const { return divmod(d).second; }
    Poly operator/(const Poly& d) const { return divmod(d).first; }
    bool divides(const Poly& other) const;

    Poly monic() const;
    Poly derivative() const;
    elt eval(elt x) const;
    // evaluate with coefficients embedded into a larger field
    elt eval_ext(elt x, const ff::Embedding& emb) const;
    // coefficients of f(c + t) as a polynomial in t over emb.dst()
    std::vector<elt> expand_at(elt c, const ff::Embedding& emb) const;

    bool irreducible() const;
    bool squarefree() const;
    // full factorization into monic irreducibles with multiplicities (lead returned separately)
    struct Factorization {
        elt lead;
        std::vector<std::pair<Poly, int>> factors;
    };
    Factorization factor() const;
    // all roots in an extension field (coefficients embedded via emb)
    std::vector<elt> roots_in(const ff::Embedding& emb) const;
    std::vector<elt> roots() const;

    std::string to_string(const std::string& var = "x") const;

    // deterministic total order (degree, then coefficients from top)
    static int cmp(const Poly& a, const Poly& b);

private:
    void trim();
    FieldPtr F_;
    std::vector<elt> c_;
};

Poly gcd(const Poly& a, const Poly& b);
// g = gcd, and u*a + v*b = g
Poly xgcd(const Poly& a, const Poly& b, Poly& u, Poly& v);

// Monic irreducibles of degree d over F (cached, in deterministic order).
const std::vector<Poly>& monic_irreducibles(const FieldPtr& F, int d);

// Rational function num/den over F_q(x); den monic, gcd(num, den) = 1.
class RatFun {
public:
    RatFun() = default;
    explicit RatFun(Poly num);
    RatFun(Poly num, Poly den);
    static RatFun constant(FieldPtr F, elt c) { return RatFun(Poly::constant(std::move(F), c)); }
    static RatFun x(FieldPtr F) { return RatFun(Poly::x(std::move(F))); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const FieldPtr& field() const { return num_.field(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_poly() const { return den_.deg() == 0; }

    RatFun operator+(const RatFun& o) const;
    RatFun operator-(const RatFun& o) const;
    RatFun operator*(const RatFun& o) const;
    RatFun operator/(const RatFun& o) const;
    RatFun operator-() const;
    bool operator==(const RatFun& o) const { return num_ == o.num_ && den_ == o.den_; }
    RatFun pow(int n) const;

    // valuation at the place of an irreducible pi (>0 zero, <0 pole)
    int val_at(const Poly& pi) const;
    int val_at_infinity() const; // deg den - deg num
    // evaluation; nullopt at poles (x embedded in a larger field via emb)
    std::optional<elt> eval_ext(elt x, const ff::Embedding& emb) const;
    std::optional<elt> eval(elt x) const;

    std::string to_string(const std::string& var = "x") const;
    static int cmp(const RatFun& a, const RatFun& b);

private:
    Poly num_, den_;
};

// Homogeneous trivariate form over F_q (variables x, y, z).
class TriForm {
public:
    TriForm() = default;
    TriForm(FieldPtr F, int degree);
    const FieldPtr& field() const { return F_; }
    int degree() const { return d_; }
    bool is_zero() const;

    elt coeff(int i, int j) const { return c_[idx(i, j)]; } // x^i y^j z^(d-i-j)
    void set_coeff(int i, int j, elt v) { c_[idx(i, j)] = v; }

    TriForm operator*(const TriForm& o) const;
    TriForm operator+(const TriForm& o) const;
    TriForm scaled(elt s) const;
    TriForm pow(int n) const;
    bool operator==(const TriForm& o) const { return d_ == o.d_ && c_ == o.c_; }

    TriForm partial(int var) const; // 0=x,1=y,2=z
    elt eval(elt x, elt y, elt z, const ff::Embedding& emb) const;
    elt eval(elt x, elt y, elt z) const;

    // substitute the parametrized line P + s*Q (s affine): univariate in s over emb.dst()
    Poly restrict_line(const std::array<elt, 3>& P, const std::array<elt, 3>& Q,
                       const ff::Embedding& emb) const;

    // g(x, y) = form(x, y, 1) as a polynomial in y with Poly-in-x coefficients
    std::vector<Poly> affinize_z() const;
    // form(x, 1, z) in z; form(1, y, z) in y -- charts for points away from z != 0
    std::vector<Poly> affinize_y() const; // vars (x, z), poly in z over F[x]
    std::vector<Poly> affinize_x() const; // vars (y, z), poly in z over F[y]

    // apply q^j-power Frobenius to all coefficients
    TriForm frobenius(int times) const;

    std::string to_string() const;
    static int cmp(const TriForm& a, const TriForm& b);

private:
    int idx(int i, int j) const { return i * (d_ + 1) + j; }
    FieldPtr F_;
    int d_ = 0;
    std::vector<elt> c_; // (d+1)^2 slots, only i+j <= d used
};

} // namespace hunt::poly

#endif
