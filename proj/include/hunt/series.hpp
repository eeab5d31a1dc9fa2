#ifndef HUNT_SERIES_HPP
#define HUNT_SERIES_HPP

#include <optional>
#include <vector>

#include "hunt/ff.hpp"
#include "hunt/poly.hpp"

namespace hunt::series {

using ff::elt;
using ff::FieldPtr;

// Raised when a computation needs coefficients beyond the known window;
// callers rebuild the completion with a larger window and retry.
class PrecisionError : public std::runtime_error {
public:
    PrecisionError() : std::runtime_error("series precision exhausted") {}
};

// Truncated Laurent series: coefficients known exactly on [lo, prec),
// zero below lo, unknown from prec on. exact == true means a true zero.
class LSeries {
public:
    LSeries() = default;
    static LSeries zero(FieldPtr F); // exact zero
    static LSeries constant(FieldPtr F, elt c, int prec);
    static LSeries monomial(FieldPtr F, elt c, int exp, int prec);
    static LSeries from_coeffs(FieldPtr F, int lo, std::vector<elt> c);

    const FieldPtr& field() const { return F_; }
    bool exact_zero() const { return exact_ && c_.empty(); }
    int prec() const;             // first unknown exponent (INT_MAX when exact)
    int lo() const { return lo_; }
    elt coeff(int e) const;       // throws PrecisionError if e >= prec
    // valuation: nullopt when all known coefficients vanish but tail unknown
    std::optional<int> val() const;
    int val_or_throw() const;

    LSeries operator+(const LSeries& o) const;
    LSeries operator-(const LSeries& o) const;
    LSeries operator*(const LSeries& o) const;
    LSeries operator-() const;
    LSeries scaled(elt s) const;
    LSeries shifted(int n) const; // * t^n
    LSeries inv() const;          // needs a determined valuation
    LSeries pth_power() const;    // exact char-p power (precision grows)
    LSeries pow(int n) const;     // n >= 0
    LSeries truncated(int new_prec) const;
    // view as known exactly on [lo, prec) and unknown beyond, even for exact input
    LSeries padded(int prec) const;

    // solve s^p - s = u for val(u) >= 1: s = -(u + u^p + u^{p^2} + ...)
    LSeries artin_schreier_solve(int target_prec = -1) const;
    // square root in odd characteristic (val must be even, leading a square)
    LSeries sqrt() const;

    // coefficient embedding into a larger residue field
    LSeries mapped(const ff::Embedding& emb) const;

    std::string to_string(const std::string& var = "t") const;

private:
    void trim();
    FieldPtr F_;
    int lo_ = 0;
    std::vector<elt> c_;
    bool exact_ = false;
};

// Completion of a function field at a place:  k((t)) extended by a chain of
// ramified Artin-Schreier generators  w_l^p = w_l + R_l  with v(R_l) = -p*m_l,
// gcd(m_l, p) = 1.  Elements are vectors of p^s series indexed by the
// w-exponent tuple (little-endian by level).
class LocalAlgebra {
public:
    struct Elem {
        std::vector<LSeries> comp;
        bool exact_zero() const;
    };

    explicit LocalAlgebra(FieldPtr k) : k_(std::move(k)) {}

    const FieldPtr& residue_field() const { return k_; }
    int char_p() const { return k_->p; }
    int nlevels() const { return int(levels_.size()); }
    int level_m(int l) const { return levels_[l].m; }

    // t-valuation scale: v(t) = p^nlevels
    int t_weight() const;
    // top-normalized valuation of w_l
    int w_weight(int l) const;

    Elem zero() const;
    Elem one(int prec) const;
    Elem from_series(LSeries s) const;
    Elem constant(elt c, int prec) const;
    Elem generator(int l, int prec) const; // w_l

    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem scaled(const Elem& a, elt s) const;
    Elem pth_power(const Elem& a) const;
    Elem pow(const Elem& a, int n) const;
    // s with s^p - s = u, v(u) >= 1
    Elem artin_schreier_solve(const Elem& u) const;

    std::optional<int> val(const Elem& a) const;
    int val_or_throw(const Elem& a) const;
    // leading monomial: coefficient plus exponents (t-exp, w-exps)
    struct Lead {
        elt c;
        int t_exp;
        std::vector<int> w_exp;
    };
    Lead lead(const Elem& a) const;
    // residue (constant term) for val >= 0 elements
    elt residue(const Elem& a) const;

    // monomial c * t^a * prod w_l^{b_l}
    Elem monomial(elt c, int t_exp, const std::vector<int>& w_exp, int prec) const;

    // Append a ramified AS level with reduced equation data R (v(R) = -p*m... )
    // R is an element of the CURRENT algebra; after the call elements must be
    // lifted with lift().
    void add_level(int m, const Elem& R);
    Elem lift(const Elem& a) const; // embed old-algebra element (one fewer level)

    // Extend the residue field; all stored level data is re-embedded.
    void extend_residue(const FieldPtr& new_k, const ff::Embedding& emb);
    Elem mapped(const Elem& a, const ff::Embedding& emb) const;

    // Artin-Schreier reduction of f modulo p-th powers at this place:
    // returns (m, residual, corrector) with m the reduced pole order
    // (0 when regular; then residual is the constant term) and
    // f - (corrector^p - corrector) having valuation -m (or >= 0).
    struct Reduction {
        int m = 0;
        elt residual = 0;
        Elem corrector;
        Elem reduced;
    };
    Reduction reduce_as(Elem f) const;

private:
    struct Level {
        int m;
        Elem R;
    };
    FieldPtr k_;
    std::vector<Level> levels_;
    Elem mul_level(const Elem& a, const Elem& b, int lvl) const;
};

} // namespace hunt::series

#endif
