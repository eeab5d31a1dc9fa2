#ifndef HUNT_CURVES_HPP
#define HUNT_CURVES_HPP

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hunt/ff.hpp"
#include "hunt/poly.hpp"
#include "hunt/series.hpp"

namespace hunt::curves {

using poly::Poly;
using poly::RatFun;
using poly::TriForm;

enum class Shape { Tower, Hyperelliptic, Plane };

class CurveModel;
using CurvePtr = std::shared_ptr<const CurveModel>;

// Completion of the function field at a place: a local algebra together with
// expansions of the model's coordinate functions.
struct Completion {
    series::LocalAlgebra alg;
    int window = 0;
    ff::EmbeddingPtr base_emb; // F_q -> residue field
    series::LocalAlgebra::Elem x;                // towers/hyperelliptic
    std::vector<series::LocalAlgebra::Elem> w;   // tower w_i; hyperelliptic {y}
    std::array<series::LocalAlgebra::Elem, 3> proj; // plane: normalized (x,y,z) series
    int chart = -1;                              // plane chart (0,1,2)

    series::LocalAlgebra::Elem expand_ratfun(const RatFun& f) const;
    Completion(ff::FieldPtr k) : alg(std::move(k)) {}
};

// Seed data sufficient to rebuild a completion at any precision window.
struct PlaceSeed {
    bool infinite = false;
    Poly pi; // finite base prime (towers/hyperelliptic)
    struct LevelChoice {
        int kind; // 0 = ramified, 1 = value chosen
        ff::elt eta = 0;
        int field_deg = 0; // [residue : F_p] at the time of the choice
    };
    std::vector<LevelChoice> branch; // towers
    int hkind = -1;                  // hyperelliptic: 0 ram, 1 split, 2 inert
    ff::elt y0 = 0;                  // split: leading root of Y
    std::array<ff::elt, 3> pt{0, 0, 0}; // plane point (normalized)
    int chart = -1;
    int solve_var = -1; // plane: 0 solve first affine coord, 1 solve second
};

class Place {
public:
    const CurveModel* curve = nullptr;
    int degree = 0;
    int index = 0; // within its degree
    ff::FieldPtr resfield;
    int ram_over_x = 1; // e over the x-line (or plane chart line)
    int diff_exp = 0;   // different exponent over the x-line
    bool at_infinity = false;
    std::string label;
    std::vector<std::string> coords;
    PlaceSeed seed;
    std::vector<std::uint64_t> sort_key;

    // cached completion; rebuilt with a larger window when needed
    std::shared_ptr<const Completion> completion(int window) const;

private:
    mutable std::shared_ptr<const Completion> comp_;
    mutable std::shared_ptr<std::mutex> comp_mutex_ = std::make_shared<std::mutex>();
};

class Divisor {
public:
    Divisor() = default;
    void add(const Place* P, int mult);
    int degree() const;
    bool empty() const { return terms_.empty(); }
    const std::vector<std::pair<const Place*, int>>& terms() const { return terms_; }
    int mult_of(const Place* P) const;
    Divisor operator+(const Divisor& o) const;
    Divisor operator-(const Divisor& o) const;
    Divisor scaled(int s) const;
    Divisor pos_part() const;
    Divisor neg_part() const; // effective: -min(D, 0)
    bool operator==(const Divisor& o) const { return terms_ == o.terms_; }
    std::string to_string() const;

private:
    void normalize();
    std::vector<std::pair<const Place*, int>> terms_; // sorted by (degree, index)
};

// Function on a curve in shape-specific normal form.
class CurveFunction {
public:
    CurvePtr curve;
    std::vector<RatFun> comps; // tower: p^r components; hyperelliptic: {c0, c1}
    TriForm pnum, pden;        // plane: ratio of equal-degree forms

    bool is_zero() const;
    CurveFunction operator+(const CurveFunction& o) const;
    CurveFunction operator-(const CurveFunction& o) const;
    CurveFunction operator*(const CurveFunction& o) const;
    CurveFunction operator/(const CurveFunction& o) const;
    CurveFunction operator-() const;
    CurveFunction scaled(ff::elt s) const;
    bool operator==(const CurveFunction& o) const;
    std::string to_string() const;
};

// Global Artin-Schreier reduction of a rational function over the x-line.
struct RatReduction {
    RatFun reduced;
    std::vector<std::pair<Poly, int>> finite_poles; // (pi, m) with gcd(m, p) = 1
    int inf_m = 0;                                  // reduced pole order at infinity (0 if regular)
    bool is_constant = false;
    ff::elt constant = 0;
    int conductor_degree() const;
};
RatReduction reduce_ratfun_global(const RatFun& f);

struct EvalResult {
    bool is_pole = false;
    int pole_order = 0;
    ff::elt value = 0; // in the place's residue field when not a pole
};

class CurveModel : public std::enable_shared_from_this<CurveModel> {
public:
    ff::FieldPtr F;
    Shape shape;
    std::vector<RatFun> tower_fs; // Tower
    Poly hyp_h, hyp_f;            // Hyperelliptic (y^2 + h y = f)
    TriForm plane_form;           // Plane
    int genus = 0;

    static CurvePtr make_tower(ff::FieldPtr F, std::vector<RatFun> fs);
    static CurvePtr make_hyperelliptic(ff::FieldPtr F, Poly h, Poly f);
    static CurvePtr make_plane(ff::FieldPtr F, TriForm form);

    int curve_genus() const { return genus; }
    std::int64_t count_points(int n) const;
    // all places of exact degree d, deterministically ordered
    std::vector<const Place*> places(int d) const;
    const Place* place(int d, int index) const;
    const Place* infinite_place() const; // unique place over x = inf if there is exactly one

    std::string print() const;

    // ---- function algebra ----
    CurveFunction fun_zero() const;
    CurveFunction fun_constant(ff::elt c) const;
    CurveFunction fun_x() const;           // towers/hyperelliptic: the base coordinate
    CurveFunction fun_y(int i = 0) const;   // tower w_i / hyperelliptic y
    CurveFunction fun_ratfun(const RatFun& r) const;
    CurveFunction fun_plane(TriForm num, TriForm den) const;

    EvalResult evaluate(const CurveFunction& f, const Place* P) const;
    // valuation of f at P (0 allowed); PrecisionError-safe (retries internally)
    int valuation(const CurveFunction& f, const Place* P) const;
    Divisor divisor_of(const CurveFunction& f) const;
    Divisor canonical_divisor() const;

    // AS structure over the rational function field (towers; char-2 hyperelliptic)
    int as_rank() const;
    std::vector<RatFun> as_forms() const;
    int x_degree() const; // [K : F_q(x)] (plane: degree of the y-projection)

    // odd-characteristic hyperelliptic normalization y'^2 = FF(x)
    const Poly& hyp_FF() const { return hyp_FF_; }

    // plane model: affine charts as polynomials in the second variable
    const std::vector<Poly>& plane_affine_z() const { return aff_z_; }

    ~CurveModel();

protected:
    CurveModel() = default;

private:
    void finalize(); // genus, invariant checks, canonical text
    friend struct CurveInternal;
    friend struct CurveModelAccess;

    Poly hyp_FF_{};
    std::vector<Poly> aff_z_;
    std::string text_;

    mutable std::mutex cache_mutex_;
    mutable std::map<std::vector<std::uint64_t>, std::unique_ptr<Place>> intern_;
    mutable std::map<std::vector<ff::elt>, std::vector<const Place*>> fiber_cache_;
    mutable std::map<int, std::vector<const Place*>> bydeg_;
    mutable std::map<int, std::int64_t> counts_;
    mutable std::vector<RatReduction> char_reductions_; // nonzero characters, code order
};

// Parser (parser.cpp): equation text -> model; throws Error("curves","parse_curve",...)
CurvePtr parse_curve(const std::string& text, const ff::FieldPtr& F);

} // namespace hunt::curves

#endif
