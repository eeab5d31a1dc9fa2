#include "hunt/curves.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

#include "hunt/internal.hpp"

namespace hunt::curves {

using series::LocalAlgebra;
using series::LSeries;
using series::PrecisionError;
using Elem = LocalAlgebra::Elem;

// --------------------------------------------------------------- Divisor

void Divisor::add(const Place* P, int mult) {
    if (!mult) return;
    for (auto& [pl, m] : terms_)
        if (pl == P) {
            m += mult;
            normalize();
            return;
        }
    terms_.push_back({P, mult});
    normalize();
}

void Divisor::normalize() {
    terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                                [](const auto& t) { return t.second == 0; }),
                 terms_.end());
    std::sort(terms_.begin(), terms_.end(), [](const auto& a, const auto& b) {
        if (a.first->degree != b.first->degree) return a.first->degree < b.first->degree;
        return a.first->sort_key < b.first->sort_key;
    });
}

int Divisor::degree() const {
    int d = 0;
    for (auto& [P, m] : terms_) d += m * P->degree;
    return d;
}

int Divisor::mult_of(const Place* P) const {
    for (auto& [pl, m] : terms_)
        if (pl == P) return m;
    return 0;
}

Divisor Divisor::operator+(const Divisor& o) const {
    Divisor r = *this;
    for (auto& [P, m] : o.terms_) r.add(P, m);
    return r;
}

Divisor Divisor::operator-(const Divisor& o) const {
    Divisor r = *this;
    for (auto& [P, m] : o.terms_) r.add(P, -m);
    return r;
}

Divisor Divisor::scaled(int s) const {
    Divisor r;
    if (!s) return r;
    r.terms_ = terms_;
    for (auto& [P, m] : r.terms_) m *= s;
    return r;
}

Divisor Divisor::pos_part() const {
    Divisor r;
    for (auto& [P, m] : terms_)
        if (m > 0) r.terms_.push_back({P, m});
    return r;
}

Divisor Divisor::neg_part() const {
    Divisor r;
    for (auto& [P, m] : terms_)
        if (m < 0) r.terms_.push_back({P, -m});
    return r;
}

std::string Divisor::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto& [P, m] : terms_) {
        if (!s.empty() || m < 0) s += (m < 0 ? " - " : " + ");
        int a = std::abs(m);
        if (a != 1) s += std::to_string(a) + "*";
        s += P->label.empty() ? ("(deg" + std::to_string(P->degree) + ")") : P->label;
    }
    return s;
}

// ------------------------------------------------- global AS reduction

int RatReduction::conductor_degree() const {
    int d = 0;
    for (auto& [pi, m] : finite_poles) d += (m + 1) * pi.deg();
    if (inf_m > 0) d += inf_m + 1;
    return d;
}

RatReduction reduce_ratfun_global(const RatFun& f0) {
    const ff::FieldPtr& F = f0.field();
    int p = F->p;
    RatFun f = f0;
    RatReduction out;
    // finite poles
    bool changed = true;
    while (changed) {
        changed = false;
        if (f.is_zero()) break;
        auto fac = f.den().factor();
        for (auto& [pi, mult] : fac.factors) {
            int m = -f.val_at(pi);
            if (m <= 0) continue;
            while (m > 0 && m % p == 0) {
                // leading pi-adic coefficient B = num * (den / pi^m)^{-1} mod pi
                Poly rest = f.den();
                for (int i = 0; i < m; ++i) rest = rest / pi;
                Poly u, v;
                Poly g = poly::xgcd(rest % pi, pi, u, v);
                if (g.deg() != 0) throw InternalError("pole bookkeeping failed");
                Poly restinv = u.scaled(F->inv(g.coeff(0))) % pi;
                Poly B = (f.num() % pi) * restinv % pi;
                // p-th root of B in F_q[x]/(pi): B^(q^d / p) = B^(p^(k*d-1))
                Poly C = B;
                std::int64_t reps = std::int64_t(F->k) * pi.deg() - 1;
                for (std::int64_t i = 0; i < reps; ++i) {
                    // C <- C^p mod pi
                    Poly acc = Poly::constant(F, 1);
                    Poly base = C;
                    int n = p;
                    while (n) {
                        if (n & 1) acc = (acc * base) % pi;
                        base = (base * base) % pi;
                        n >>= 1;
                    }
                    C = acc;
                }
                RatFun h(C, pi.pow(m / p));
                RatFun hp = h;
                for (int i = 1; i < p; ++i) hp = hp * h;
                f = f - (hp - h);
                int nm = -f.val_at(pi);
                if (nm >= m) throw InternalError("global reduction failed at a finite prime");
                m = nm;
                changed = true;
            }
        }
        // pole at infinity
        int mi = f.is_zero() ? 0 : -f.val_at_infinity();
        while (mi > 0 && mi % p == 0) {
            ff::elt lead = F->div(f.num().lead(), f.den().lead());
            ff::elt c = F->inv_frob(lead);
            Poly h = Poly::monomial(F, mi / p, c);
            RatFun hr(h);
            RatFun hp = hr;
            for (int i = 1; i < p; ++i) hp = hp * hr;
            f = f - (hp - hr);
            int nmi = f.is_zero() ? 0 : -f.val_at_infinity();
            if (nmi >= mi) throw InternalError("global reduction failed at infinity");
            mi = nmi;
            changed = true;
        }
    }
    out.reduced = f;
    if (f.is_zero()) {
        out.is_constant = true;
        out.constant = 0;
        return out;
    }
    auto fac = f.den().factor();
    for (auto& [pi, mult] : fac.factors) {
        int m = -f.val_at(pi);
        if (m > 0) out.finite_poles.push_back({pi, m});
    }
    std::sort(out.finite_poles.begin(), out.finite_poles.end(),
              [](const auto& a, const auto& b) { return Poly::cmp(a.first, b.first) < 0; });
    int vi = f.val_at_infinity();
    out.inf_m = vi < 0 ? -vi : 0;
    if (out.finite_poles.empty() && out.inf_m == 0 && f.num().deg() <= 0) {
        out.is_constant = true;
        out.constant = f.num().coeff(0);
    }
    return out;
}

// ------------------------------------------------------ model factories

struct CurveModelAccess : CurveModel {
    using CurveModel::CurveModel;
};

namespace {
std::shared_ptr<CurveModelAccess> new_model() { return std::shared_ptr<CurveModelAccess>(new CurveModelAccess()); }

// nonzero characters of (Z/p)^r in code order 1..p^r-1; f_chi = sum chi_i f_i
RatFun character_form(const std::vector<RatFun>& fs, int code, int p) {
    RatFun acc = RatFun(Poly(fs[0].field()));
    int c = code;
    for (size_t i = 0; i < fs.size(); ++i) {
        int ci = c % p;
        c /= p;
        if (ci) acc = acc + fs[i] * RatFun::constant(fs[0].field(), fs[0].field()->from_int(ci));
    }
    return acc;
}
} // namespace

CurvePtr CurveModel::make_tower(ff::FieldPtr F, std::vector<RatFun> fs) {
    if (fs.empty()) throw Error("curves", "model", "a tower needs at least one function");
    auto M = new_model();
    M->F = std::move(F);
    M->shape = Shape::Tower;
    M->tower_fs = std::move(fs);
    M->finalize();
    return M;
}

CurvePtr CurveModel::make_hyperelliptic(ff::FieldPtr F, Poly h, Poly f) {
    auto M = new_model();
    M->F = std::move(F);
    M->shape = Shape::Hyperelliptic;
    M->hyp_h = std::move(h);
    M->hyp_f = std::move(f);
    M->finalize();
    return M;
}

CurvePtr CurveModel::make_plane(ff::FieldPtr F, TriForm form) {
    auto M = new_model();
    M->F = std::move(F);
    M->shape = Shape::Plane;
    M->plane_form = std::move(form);
    M->finalize();
    return M;
}

CurveModel::~CurveModel() = default;

int CurveModel::as_rank() const {
    if (shape == Shape::Tower) return int(tower_fs.size());
    if (shape == Shape::Hyperelliptic && F->p == 2) return 1;
    return 0;
}

std::vector<RatFun> CurveModel::as_forms() const {
    if (shape == Shape::Tower) return tower_fs;
    if (shape == Shape::Hyperelliptic && F->p == 2) {
        RatFun h2(hyp_h * hyp_h);
        return {RatFun(hyp_f) / h2};
    }
    throw InternalError("as_forms on a non-AS model");
}

int CurveModel::x_degree() const {
    switch (shape) {
    case Shape::Tower: {
        int d = 1;
        for (size_t i = 0; i < tower_fs.size(); ++i) d *= F->p;
        return d;
    }
    case Shape::Hyperelliptic:
        return 2;
    case Shape::Plane:
        return int(aff_z_.size()) - 1;
    }
    return 0;
}

void CurveModel::finalize() {
    const ff::FieldPtr& Fq = F;
    if (shape == Shape::Tower || (shape == Shape::Hyperelliptic && Fq->p == 2)) {
        if (shape == Shape::Hyperelliptic) {
            if (hyp_h.is_zero())
                throw Error("curves", "model", "characteristic-2 hyperelliptic needs h != 0");
            if (hyp_f.is_zero()) throw Error("curves", "model", "f must be nonzero");
        }
        auto forms = as_forms();
        int p = Fq->p;
        int r = int(forms.size());
        int nchars = 1;
        for (int i = 0; i < r; ++i) nchars *= p;
        int cond_sum = 0;
        char_reductions_.clear();
        char_reductions_.resize(nchars); // index 0 unused
        for (int code = 1; code < nchars; ++code) {
            RatFun fchi = character_form(forms, code, p);
            auto red = reduce_ratfun_global(fchi);
            if (red.is_constant) {
                if (Fq->trace_to_prime(red.constant) == 0)
                    throw Error("curves", "model",
                                "tower is reducible: a character reduces to a split constant");
                throw Error("curves", "model",
                            "tower gives a constant-field extension, not a curve");
            }
            cond_sum += red.conductor_degree();
            char_reductions_[code] = red;
        }
        int rhs = nchars * (-2) + cond_sum;
        if (rhs % 2 != 0 || rhs < -2) throw InternalError("conductor-discriminant sum is odd");
        genus = (rhs + 2) / 2;
    } else if (shape == Shape::Hyperelliptic) {
        // odd characteristic: complete the square, require a squarefree right side
        if (hyp_f.is_zero()) throw Error("curves", "model", "f must be nonzero");
        Poly h2 = hyp_h * hyp_h;
        ff::elt quarter = Fq->inv(Fq->from_int(4));
        hyp_FF_ = hyp_f + h2.scaled(quarter);
        if (hyp_FF_.deg() < 3)
            throw Error("curves", "model", "right side must have degree >= 3");
        if (!hyp_FF_.squarefree())
            throw Error("curves", "model", "singular hyperelliptic model (right side not squarefree)");
        int D = hyp_FF_.deg();
        genus = (D % 2 == 1) ? (D - 1) / 2 : D / 2 - 1;
        if (genus < 1) throw Error("curves", "model", "genus must be >= 1 for this shape");
    } else {
        // plane: smoothness over F_{q^m} for all m <= 2*binom(d-1,2)+1
        int d = plane_form.degree();
        if (d < 3) throw Error("curves", "model", "plane models need degree >= 3");
        aff_z_ = plane_form.affinize_z();
        if (int(aff_z_.size()) - 1 < 1)
            throw Error("curves", "model", "degenerate plane model (no y dependence)");
        TriForm fx = plane_form.partial(0), fy = plane_form.partial(1), fz = plane_form.partial(2);
        if (fx.is_zero() && fy.is_zero() && fz.is_zero())
            throw Error("curves", "model", "singular plane model (vanishing gradient)");
        int mmax = (d - 1) * (d - 2) + 1;
        for (int m = 1; m <= mmax; ++m) {
            auto E = (m == 1) ? Fq : ff::get_field(Fq->p, Fq->k * m);
            auto emb = ff::get_embedding(Fq, E);
            // affine chart z=1: for each x, common y-roots of F, Fx, Fy, Fz
            auto az = plane_form.affinize_z();
            auto ax = fx.affinize_z();
            auto ay = fy.affinize_z();
            auto azz = fz.affinize_z();
            auto lift = [&](const std::vector<Poly>& a, ff::elt x0) {
                std::vector<ff::elt> c;
                for (auto& cj : a) c.push_back(cj.eval_ext(x0, *emb));
                return Poly(E, c);
            };
            for (ff::elt x0 = 0; x0 < E->q; ++x0) {
                Poly g0 = lift(az, x0);
                Poly g1 = lift(ax, x0);
                Poly g2 = lift(ay, x0);
                Poly g3 = lift(azz, x0);
                Poly g = poly::gcd(poly::gcd(g0, g1), poly::gcd(g2, g3));
                if (g.is_zero())
                    throw Error("curves", "model", "singular plane model (common component)");
                if (g.deg() > 0 && !g.roots().empty())
                    throw Error("curves", "model", "singular plane model");
            }
            // points with z = 0: x = 1 chart and the point (0:1:0)
            auto border = [&](const TriForm& T) {
                // T(1, y, 0) as univariate in y over E
                std::vector<ff::elt> c(T.degree() + 1, 0);
                for (int j = 0; j <= T.degree(); ++j) c[j] = emb->map(T.coeff(T.degree() - j, j));
                return Poly(E, c);
            };
            Poly b0 = border(plane_form), b1 = border(fx), b2 = border(fy), b3 = border(fz);
            Poly g = poly::gcd(poly::gcd(b0, b1), poly::gcd(b2, b3));
            if (g.is_zero())
                throw Error("curves", "model", "singular plane model at z = 0");
            if (g.deg() > 0 && !g.roots().empty())
                throw Error("curves", "model", "singular plane model at z = 0");
            // (0:1:0)
            auto at = [&](const TriForm& T) { return T.eval(0, 1, 0); };
            if (at(plane_form) == 0 && at(fx) == 0 && at(fy) == 0 && at(fz) == 0)
                throw Error("curves", "model", "singular plane model at (0:1:0)");
        }
        genus = (d - 1) * (d - 2) / 2;
    }
    text_ = print();
}

// --------------------------------------------------------- point counts

std::int64_t CurveModel::count_points(int n) const {
    if (n < 1) throw Error("curves", "count_points", "extension degree must be >= 1");
    {
        std::lock_guard<std::mutex> lk(cache_mutex_);
        auto it = counts_.find(n);
        if (it != counts_.end()) return it->second;
    }
    long double qn = powl((long double)F->q, n);
    if (qn > (long double)(1u << 20))
        throw Error("curves", "count_points", "extension exceeds the enumeration bound");
    auto E = (n == 1) ? F : ff::get_field(F->p, F->k * n);
    auto emb = ff::get_embedding(F, E);
    std::int64_t N = 0;
    if (shape == Shape::Tower || (shape == Shape::Hyperelliptic && F->p == 2)) {
        int p = F->p;
        int nchars = int(char_reductions_.size());
        // finite points
        for (ff::elt x0 = 0; x0 < E->q; ++x0) {
            int unram = 0;
            bool bad = false;
            for (int code = 1; code < nchars && !bad; ++code) {
                const auto& red = char_reductions_[code];
                ff::elt denv = red.reduced.den().eval_ext(x0, *emb);
                if (denv == 0) continue; // ramified here (reduced: order coprime to p)
                ff::elt v = E->div(red.reduced.num().eval_ext(x0, *emb), denv);
                if (E->trace_to_prime(v) != 0)
                    bad = true;
                else
                    ++unram;
            }
            if (!bad) N += unram + 1;
        }
        // infinity
        {
            int unram = 0;
            bool bad = false;
            for (int code = 1; code < nchars && !bad; ++code) {
                const auto& red = char_reductions_[code];
                if (red.inf_m > 0) continue;
                int vi = red.reduced.is_zero() ? INT_MAX : red.reduced.val_at_infinity();
                ff::elt v = 0;
                if (vi == 0)
                    v = emb->map(F->div(red.reduced.num().lead(), red.reduced.den().lead()));
                if (E->trace_to_prime(v) != 0)
                    bad = true;
                else
                    ++unram;
            }
            if (!bad) N += unram + 1;
        }
    } else if (shape == Shape::Hyperelliptic) {
        const Poly& FF = hyp_FF_;
        for (ff::elt x0 = 0; x0 < E->q; ++x0) {
            ff::elt v = FF.eval_ext(x0, *emb);
            if (v == 0)
                N += 1;
            else {
                ff::elt r;
                N += E->sqrt(v, r) ? 2 : 0;
            }
        }
        int D = FF.deg();
        if (D % 2 == 1)
            N += 1;
        else {
            ff::elt r;
            N += E->sqrt(emb->map(FF.lead()), r) ? 2 : 0;
        }
    } else {
        // plane: affine chart plus the z = 0 line
        const auto& aff = aff_z_;
        for (ff::elt x0 = 0; x0 < E->q; ++x0) {
            std::vector<ff::elt> c;
            for (auto& cj : aff) c.push_back(cj.eval_ext(x0, *emb));
            Poly g(E, c);
            if (g.is_zero()) throw InternalError("vertical component on a smooth curve");
            for (ff::elt y0 = 0; y0 < E->q; ++y0)
                if (g.eval(y0) == 0) ++N;
        }
        // z = 0: points (1 : y : 0) and (0 : 1 : 0)
        {
            int d = plane_form.degree();
            std::vector<ff::elt> c(d + 1, 0);
            for (int j = 0; j <= d; ++j) c[j] = emb->map(plane_form.coeff(d - j, j));
            Poly border(E, c);
            if (border.is_zero()) throw InternalError("z = 0 line is a component");
            for (ff::elt y0 = 0; y0 < E->q; ++y0)
                if (border.eval(y0) == 0) ++N;
            if (plane_form.coeff(0, plane_form.degree()) == 0) ++N; // (0:1:0) on curve
        }
    }
    // Weil sanity: |N - (q^n + 1)| <= 2 g sqrt(q^n)
    {
        long double bound = 2.0L * genus * sqrtl((long double)qn);
        long double dev = fabsl((long double)N - (qn + 1));
        if (dev > bound + 1e-9)
            throw InternalError("point count violates the Weil bound: N=" + std::to_string(N));
    }
    std::lock_guard<std::mutex> lk(cache_mutex_);
    counts_[n] = N;
    return N;
}

// --------------------------------------------------------------- places

std::vector<const Place*> CurveModel::places(int d) const {
    if (d < 1) throw Error("curves", "enumerate_places", "degree must be >= 1");
    CurveInternal::enumerate_degree(*this, d);
    std::lock_guard<std::mutex> lk(cache_mutex_);
    return bydeg_.at(d);
}

const Place* CurveModel::place(int d, int index) const {
    auto v = places(d);
    if (index < 0 || index >= int(v.size()))
        throw Error("curves", "place", "place index out of range");
    return v[index];
}

const Place* CurveModel::infinite_place() const {
    const Place* found = nullptr;
    for (auto* P : CurveInternal::places_above_prime(*this, std::nullopt)) {
        if (found) throw Error("curves", "infinite_place", "several places at infinity");
        found = P;
    }
    if (!found) throw Error("curves", "infinite_place", "no place at infinity");
    return found;
}

// ------------------------------------------------------ function algebra

bool CurveFunction::is_zero() const {
    if (curve->shape == Shape::Plane) return pnum.is_zero();
    for (auto& c : comps)
        if (!c.is_zero()) return false;
    return true;
}

CurveFunction CurveModel::fun_zero() const {
    CurveFunction f;
    f.curve = shared_from_this();
    if (shape == Shape::Plane) {
        f.pnum = TriForm(F, 0);
        f.pden = TriForm(F, 0);
        f.pden.set_coeff(0, 0, 1);
    } else {
        int n = (shape == Shape::Tower) ? x_degree() : 2;
        f.comps.assign(n, RatFun(Poly(F)));
    }
    return f;
}

CurveFunction CurveModel::fun_constant(ff::elt c) const {
    CurveFunction f = fun_zero();
    if (shape == Shape::Plane) {
        f.pnum = TriForm(F, 0);
        f.pnum.set_coeff(0, 0, c);
    } else
        f.comps[0] = RatFun::constant(F, c);
    return f;
}

CurveFunction CurveModel::fun_x() const {
    CurveFunction f = fun_zero();
    if (shape == Shape::Plane) {
        f.pnum = TriForm(F, 1);
        f.pnum.set_coeff(1, 0, 1);
        f.pden = TriForm(F, 1);
        f.pden.set_coeff(0, 0, 1); // z
    } else
        f.comps[0] = RatFun::x(F);
    return f;
}

CurveFunction CurveModel::fun_y(int i) const {
    CurveFunction f = fun_zero();
    if (shape == Shape::Plane) {
        f.pnum = TriForm(F, 1);
        f.pnum.set_coeff(0, 1, 1);
        f.pden = TriForm(F, 1);
        f.pden.set_coeff(0, 0, 1);
    } else if (shape == Shape::Hyperelliptic) {
        f.comps[1] = RatFun::constant(F, 1);
    } else {
        int idx = 1;
        for (int j = 0; j < i; ++j) idx *= F->p;
        f.comps[idx] = RatFun::constant(F, 1);
    }
    return f;
}

CurveFunction CurveModel::fun_ratfun(const RatFun& r) const {
    if (shape == Shape::Plane) {
        // r(x/z) as a ratio of forms
        int dn = r.num().deg(), dd = r.den().deg();
        int d = std::max(dn, dd);
        TriForm num(F, d), den(F, d);
        for (int i = 0; i <= dn; ++i)
            if (r.num().coeff(i)) num.set_coeff(i, 0, r.num().coeff(i)); // x^i z^(d-i)
        for (int i = 0; i <= dd; ++i)
            if (r.den().coeff(i)) den.set_coeff(i, 0, r.den().coeff(i));
        CurveFunction f = fun_zero();
        f.pnum = num;
        f.pden = den;
        return f;
    }
    CurveFunction f = fun_zero();
    f.comps[0] = r;
    return f;
}

CurveFunction CurveModel::fun_plane(TriForm num, TriForm den) const {
    if (shape != Shape::Plane) throw InternalError("fun_plane on a non-plane model");
    if (num.degree() != den.degree())
        throw Error("curves", "function", "numerator and denominator must have equal degree");
    CurveFunction f = fun_zero();
    f.pnum = std::move(num);
    f.pden = std::move(den);
    return f;
}

CurveFunction CurveFunction::operator+(const CurveFunction& o) const {
    CurveFunction r = *this;
    if (curve->shape == Shape::Plane) {
        if (pden == o.pden) { // common denominator: no degree growth
            r.pnum = pnum + o.pnum;
            return r;
        }
        // a/b + c/d = (ad + cb) / bd
        r.pnum = pnum * o.pden + o.pnum * pden;
        r.pden = pden * o.pden;
        return r;
    }
    for (size_t i = 0; i < comps.size(); ++i) r.comps[i] = comps[i] + o.comps[i];
    return r;
}

CurveFunction CurveFunction::operator-() const {
    CurveFunction r = *this;
    if (curve->shape == Shape::Plane) {
        r.pnum = pnum.scaled(curve->F->neg(1));
        return r;
    }
    for (auto& c : r.comps) c = -c;
    return r;
}

CurveFunction CurveFunction::operator-(const CurveFunction& o) const { return *this + (-o); }

CurveFunction CurveFunction::operator*(const CurveFunction& o) const {
    const CurveModel& C = *curve;
    CurveFunction r = C.fun_zero();
    if (C.shape == Shape::Plane) {
        r.pnum = pnum * o.pnum;
        r.pden = pden * o.pden;
        return r;
    }
    if (C.shape == Shape::Hyperelliptic) {
        // (a0 + a1 y)(b0 + b1 y) with y^2 = f - h y
        RatFun f(C.hyp_f), h(C.hyp_h);
        r.comps[0] = comps[0] * o.comps[0] + comps[1] * o.comps[1] * f;
        r.comps[1] = comps[0] * o.comps[1] + comps[1] * o.comps[0] - comps[1] * o.comps[1] * h;
        return r;
    }
    // tower: polynomial multiplication in the w_i with w_i^p = w_i + f_i
    int p = C.F->p;
    int rr = C.as_rank();
    std::vector<RatFun> acc(comps.size(), RatFun(Poly(C.F)));
    // multiply one level at a time (recursive convolution)
    std::function<std::vector<RatFun>(const std::vector<RatFun>&, const std::vector<RatFun>&, int)>
        mull = [&](const std::vector<RatFun>& a, const std::vector<RatFun>& b,
                   int lvl) -> std::vector<RatFun> {
        if (lvl == 0) return {a[0] * b[0]};
        int stride = 1;
        for (int i = 0; i < lvl - 1; ++i) stride *= p;
        auto slice = [&](const std::vector<RatFun>& x, int dd) {
            return std::vector<RatFun>(x.begin() + dd * stride, x.begin() + (dd + 1) * stride);
        };
        std::vector<std::vector<RatFun>> conv(2 * p - 1,
                                              std::vector<RatFun>(stride, RatFun(Poly(C.F))));
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < p; ++j) {
                auto t = mull(slice(a, i), slice(b, j), lvl - 1);
                for (int u = 0; u < stride; ++u) conv[i + j][u] = conv[i + j][u] + t[u];
            }
        // w^e -> w^(e-p) (w + f_{lvl-1})
        RatFun flv = C.tower_fs[lvl - 1];
        std::vector<RatFun> fvec(stride, RatFun(Poly(C.F)));
        fvec[0] = flv;
        for (int e = 2 * p - 2; e >= p; --e) {
            bool nz = false;
            for (auto& t : conv[e])
                if (!t.is_zero()) nz = true;
            if (!nz) continue;
            for (int u = 0; u < stride; ++u) conv[e - p + 1][u] = conv[e - p + 1][u] + conv[e][u];
            auto tR = mull(conv[e], fvec, lvl - 1);
            for (int u = 0; u < stride; ++u) conv[e - p][u] = conv[e - p][u] + tR[u];
            for (auto& t : conv[e]) t = RatFun(Poly(C.F));
        }
        std::vector<RatFun> res(stride * p, RatFun(Poly(C.F)));
        for (int dd = 0; dd < p; ++dd)
            for (int u = 0; u < stride; ++u) res[dd * stride + u] = conv[dd][u];
        return res;
    };
    r.comps = mull(comps, o.comps, rr);
    return r;
}

CurveFunction CurveFunction::scaled(ff::elt s) const {
    CurveFunction r = *this;
    if (curve->shape == Shape::Plane) {
        r.pnum = pnum.scaled(s);
        return r;
    }
    for (auto& c : r.comps) c = c * RatFun::constant(curve->F, s);
    return r;
}

CurveFunction CurveFunction::operator/(const CurveFunction& o) const {
    const CurveModel& C = *curve;
    if (o.is_zero()) throw Error("curves", "function", "division by the zero function");
    if (C.shape == Shape::Plane) {
        CurveFunction r = C.fun_zero();
        r.pnum = pnum * o.pden;
        r.pden = pden * o.pnum;
        return r;
    }
    if (C.shape == Shape::Hyperelliptic) {
        // inverse via the conjugate: (c0 + c1 y)^-1 = (c0 - c1 h - c1 y) / N
        RatFun c0 = o.comps[0], c1 = o.comps[1];
        RatFun h(C.hyp_h), f(C.hyp_f);
        RatFun N = c0 * c0 - c0 * c1 * h - c1 * c1 * f;
        if (N.is_zero()) throw InternalError("zero norm for a nonzero function");
        CurveFunction conj = C.fun_zero();
        conj.comps[0] = (c0 - c1 * h) / N;
        conj.comps[1] = (-c1) / N;
        return *this * conj;
    }
    // tower: solve (o * g) = this by linear algebra over F_q(x)
    int n = int(comps.size());
    // multiplication matrix of o in the monomial basis
    std::vector<std::vector<RatFun>> M(n, std::vector<RatFun>(n, RatFun(Poly(C.F))));
    for (int j = 0; j < n; ++j) {
        CurveFunction ej = C.fun_zero();
        ej.comps[j] = RatFun::constant(C.F, 1);
        CurveFunction col = o * ej;
        for (int i = 0; i < n; ++i) M[i][j] = col.comps[i];
    }
    // solve M g = this (Gaussian elimination over the rational function field)
    std::vector<RatFun> rhs = comps;
    std::vector<int> piv(n, -1);
    int row = 0;
    for (int col = 0; col < n && row < n; ++col) {
        int sel = -1;
        for (int i = row; i < n; ++i)
            if (!M[i][col].is_zero()) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        std::swap(M[sel], M[row]);
        std::swap(rhs[sel], rhs[row]);
        RatFun inv = RatFun::constant(C.F, 1) / M[row][col];
        for (int jj = 0; jj < n; ++jj) M[row][jj] = M[row][jj] * inv;
        rhs[row] = rhs[row] * inv;
        for (int i = 0; i < n; ++i) {
            if (i == row || M[i][col].is_zero()) continue;
            RatFun fmul = M[i][col];
            for (int jj = 0; jj < n; ++jj) M[i][jj] = M[i][jj] - fmul * M[row][jj];
            rhs[i] = rhs[i] - fmul * rhs[row];
        }
        piv[col] = row;
        ++row;
    }
    CurveFunction g = C.fun_zero();
    for (int col = 0; col < n; ++col)
        if (piv[col] >= 0) g.comps[col] = rhs[piv[col]];
    return g;
}

bool CurveFunction::operator==(const CurveFunction& o) const {
    if (curve->shape == Shape::Plane) {
        TriForm a = pnum * o.pden;
        TriForm b = o.pnum * pden;
        if (a.degree() != b.degree()) return false;
        return (a + b.scaled(curve->F->neg(1))).is_zero(); // syntactic (no reduction mod F)
    }
    for (size_t i = 0; i < comps.size(); ++i)
        if (!(comps[i] == o.comps[i])) return false;
    return true;
}

std::string CurveFunction::to_string() const {
    if (curve->shape == Shape::Plane) return "(" + pnum.to_string() + ")/(" + pden.to_string() + ")";
    std::string s;
    const char* names = "wyz";
    (void)names;
    for (size_t e = 0; e < comps.size(); ++e) {
        if (comps[e].is_zero()) continue;
        if (!s.empty()) s += " + ";
        s += "(" + comps[e].to_string() + ")";
        size_t code = e;
        int p = curve->F->p;
        int i = 1;
        while (code) {
            int ci = int(code % p);
            code /= p;
            if (ci) {
                s += curve->shape == Shape::Hyperelliptic ? "*y" : "*w" + std::to_string(i);
                if (ci > 1) s += "^" + std::to_string(ci);
            }
            ++i;
        }
    }
    return s.empty() ? "0" : s;
}

// ------------------------------------------------------------ evaluation

namespace {

Elem expand_function(const Completion& comp, const CurveFunction& f) {
    const CurveModel& C = *f.curve;
    if (C.shape == Shape::Plane) {
        const auto& alg = comp.alg;
        auto K = alg.residue_field();
        auto& emb = *comp.base_emb;
        auto eval_form = [&](const TriForm& T) {
            // Horner over precomputed coordinate powers
            int d = T.degree();
            std::vector<Elem> xp{alg.one(0)}, yp{alg.one(0)}, zp{alg.one(0)};
            for (int i = 1; i <= d; ++i) {
                xp.push_back(alg.mul(xp.back(), comp.proj[0]));
                yp.push_back(alg.mul(yp.back(), comp.proj[1]));
                zp.push_back(alg.mul(zp.back(), comp.proj[2]));
            }
            Elem acc = alg.zero();
            for (int i = 0; i <= d; ++i)
                for (int j = 0; i + j <= d; ++j) {
                    ff::elt c = T.coeff(i, j);
                    if (!c) continue;
                    Elem t = alg.mul(alg.mul(xp[i], yp[j]), zp[d - i - j]);
                    acc = alg.add(acc, alg.scaled(t, emb.map(c)));
                }
            return acc;
        };
        Elem num = eval_form(f.pnum);
        Elem den = eval_form(f.pden);
        // den is a level-0 series here
        return alg.from_series((num.comp[0] * den.comp[0].inv()).truncated(comp.window));
    }
    const auto& alg = comp.alg;
    Elem acc = alg.zero();
    int p = C.F->p;
    for (size_t e = 0; e < f.comps.size(); ++e) {
        if (f.comps[e].is_zero()) continue;
        Elem term = comp.expand_ratfun(f.comps[e]);
        size_t code = e;
        for (size_t i = 0; i < comp.w.size(); ++i) {
            int ci = int(code % p);
            code /= p;
            for (int t = 0; t < ci; ++t) term = alg.mul(term, comp.w[i]);
        }
        acc = alg.add(acc, term);
    }
    return acc;
}

} // namespace

int CurveModel::valuation(const CurveFunction& f, const Place* P) const {
    if (f.is_zero()) throw Error("curves", "valuation", "valuation of the zero function");
    for (int window = 48; window <= 3072; window *= 2) {
        try {
            auto comp = P->completion(window);
            Elem e = expand_function(*comp, f);
            auto v = comp->alg.val(e);
            if (!v) throw PrecisionError();
            if (*v == INT_MAX) throw PrecisionError(); // zero to precision: widen
            return *v;
        } catch (const PrecisionError&) {
            continue;
        }
    }
    throw Error("curves", "valuation", "could not determine a valuation (precision cap)");
}

EvalResult CurveModel::evaluate(const CurveFunction& f, const Place* P) const {
    EvalResult r;
    if (f.is_zero()) {
        r.value = 0;
        return r;
    }
    for (int window = 48; window <= 3072; window *= 2) {
        try {
            auto comp = P->completion(window);
            Elem e = expand_function(*comp, f);
            auto v = comp->alg.val(e);
            if (!v) throw PrecisionError();
            if (*v == INT_MAX) {
                r.value = 0;
                return r;
            }
            if (*v < 0) {
                r.is_pole = true;
                r.pole_order = -*v;
                return r;
            }
            r.value = comp->alg.residue(e);
            return r;
        } catch (const PrecisionError&) {
            continue;
        }
    }
    throw Error("curves", "evaluate", "could not evaluate (precision cap)");
}

// ------------------------------------------------------------- divisors

namespace {

// resultant of two polynomials in y with Poly coefficients (Bareiss over F_q[x])
Poly sylvester_resultant(const std::vector<Poly>& A, const std::vector<Poly>& B,
                         const ff::FieldPtr& F) {
    int n = int(A.size()) - 1, m = int(B.size()) - 1;
    if (n < 0 || m < 0) return Poly(F);
    if (n == 0) return A[0].pow(std::max(m, 0));
    if (m == 0) return B[0].pow(std::max(n, 0));
    int N = n + m;
    std::vector<Poly> M(N * N, Poly(F));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) M[i * N + i + j] = A[n - j];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) M[(m + i) * N + i + j] = B[m - j];
    Poly prev = Poly::constant(F, 1);
    int sign = 1;
    for (int k = 0; k < N - 1; ++k) {
        if (M[k * N + k].is_zero()) {
            int sel = -1;
            for (int i = k + 1; i < N; ++i)
                if (!M[i * N + k].is_zero()) {
                    sel = i;
                    break;
                }
            if (sel < 0) return Poly(F);
            for (int j = 0; j < N; ++j) std::swap(M[k * N + j], M[sel * N + j]);
            sign = -sign;
        }
        for (int i = k + 1; i < N; ++i) {
            for (int j = k + 1; j < N; ++j) {
                Poly v = M[i * N + j] * M[k * N + k] - M[i * N + k] * M[k * N + j];
                auto [q, rem] = v.divmod(prev);
                if (!rem.is_zero()) throw InternalError("Bareiss division not exact");
                M[i * N + j] = q;
            }
            M[i * N + k] = Poly(F);
        }
        prev = M[k * N + k];
    }
    Poly res = M[(N - 1) * N + (N - 1)];
    return sign > 0 ? res : -res;
}

} // namespace

Divisor CurveModel::divisor_of(const CurveFunction& f) const {
    if (f.is_zero()) throw Error("curves", "divisor_of", "the zero function has no divisor");
    std::set<std::vector<ff::elt>> prime_keys;
    std::vector<Poly> primes;
    auto add_prime = [&](const Poly& pi) {
        if (pi.deg() < 1) return;
        if (prime_keys.insert(pi.coeffs()).second) primes.push_back(pi);
    };
    if (shape == Shape::Plane) {
        // candidate x-coordinates: resultants of the model with num and den
        auto collect = [&](const TriForm& T) {
            std::vector<Poly> ty = T.affinize_z();
            if (ty.empty()) return;
            Poly res = sylvester_resultant(aff_z_, ty, F);
            if (!res.is_zero())
                for (auto& [pi, m] : res.factor().factors) add_prime(pi);
        };
        collect(f.pnum);
        collect(f.pden);
        Divisor D;
        std::vector<const Place*> cands;
        for (auto& pi : primes)
            for (auto* P : CurveInternal::plane_places_over(*this, pi)) cands.push_back(P);
        for (auto* P : CurveInternal::plane_places_over(*this, std::nullopt)) cands.push_back(P);
        std::sort(cands.begin(), cands.end());
        cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
        for (auto* P : cands) {
            EvalResult e = evaluate(f, P);
            int v = (e.is_pole || e.value == 0) ? valuation(f, P) : 0;
            if (v) D.add(P, v);
        }
        if (D.degree() != 0) throw InternalError("principal divisor degree " + std::to_string(D.degree()));
        return D;
    }
    // towers / hyperelliptic
    for (auto& c : f.comps) {
        if (c.is_zero()) continue;
        for (auto& [pi, m] : c.den().factor().factors) add_prime(pi);
    }
    if (shape == Shape::Tower) {
        for (auto& fi : tower_fs)
            for (auto& [pi, m] : fi.den().factor().factors) add_prime(pi);
    } else {
        for (auto& [pi, m] : hyp_FF().factor().factors) add_prime(pi);
        if (F->p == 2) {
            Poly disc = hyp_h;
            for (auto& [pi, m] : disc.factor().factors) add_prime(pi);
            for (auto& [pi, m] : hyp_f.factor().factors) add_prime(pi);
        }
    }
    // norm for the zero locus
    {
        CurveFunction one = fun_constant(1);
        CurveFunction inv = one / f;
        // norm = det of multiplication matrix; cheaper: product over the
        // candidates is already covered by comps of f and 1/f denominators
        for (auto& c : inv.comps) {
            if (c.is_zero()) continue;
            for (auto& [pi, m] : c.den().factor().factors) add_prime(pi);
            for (auto& [pi, m] : c.num().factor().factors) add_prime(pi);
        }
        for (auto& c : f.comps) {
            if (c.is_zero()) continue;
            for (auto& [pi, m] : c.num().factor().factors) add_prime(pi);
        }
    }
    Divisor D;
    std::vector<const Place*> cands;
    for (auto& pi : primes)
        for (auto* P : CurveInternal::places_above_prime(*this, pi)) cands.push_back(P);
    for (auto* P : CurveInternal::places_above_prime(*this, std::nullopt)) cands.push_back(P);
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    for (auto* P : cands) {
        EvalResult e = evaluate(f, P);
        int v;
        if (e.is_pole)
            v = -e.pole_order;
        else if (e.value == 0)
            v = valuation(f, P);
        else
            v = 0;
        if (v) D.add(P, v);
    }
    if (D.degree() != 0)
        throw InternalError("principal divisor degree " + std::to_string(D.degree()));
    return D;
}

Divisor CurveModel::canonical_divisor() const {
    Divisor K;
    if (shape == Shape::Plane) {
        // divisor of a degree-(d-3) form; use z^(d-3) (or a shifted line if z
        // is badly placed -- any choice differs by a principal divisor)
        int d = plane_form.degree();
        if (d == 3) return K; // genus 1: K = 0
        // divisor of the form z^(d-3): z vanishes exactly on the z = 0 line
        std::vector<const Place*> cands = CurveInternal::plane_places_over(*this, std::nullopt);
        // z vanishes only on the z = 0 line
        int total = 0;
        for (auto* P : cands) {
            auto comp = P->completion(48);
            auto v = comp->alg.val(comp->proj[2]);
            if (!v || *v == INT_MAX) throw InternalError("z-coordinate valuation failed");
            if (*v > 0) {
                K.add(P, (d - 3) * *v);
                total += (d - 3) * *v * P->degree;
            }
        }
        if (total != 2 * genus - 2)
            throw InternalError("canonical divisor degree mismatch (plane)");
        return K;
    }
    // towers / hyperelliptic: K = different - 2 * (pullback of x = infinity)
    std::set<const Place*> cands;
    if (shape == Shape::Tower || (shape == Shape::Hyperelliptic && F->p == 2)) {
        for (int code = 1; code < int(char_reductions_.size()); ++code) {
            for (auto& [pi, m] : char_reductions_[code].finite_poles)
                for (auto* P : CurveInternal::places_above_prime(*this, pi)) cands.insert(P);
        }
    } else {
        for (auto& [pi, m] : hyp_FF().factor().factors)
            for (auto* P : CurveInternal::places_above_prime(*this, pi)) cands.insert(P);
    }
    for (auto* P : CurveInternal::places_above_prime(*this, std::nullopt)) cands.insert(P);
    int total = 0;
    for (auto* P : cands) {
        int c = P->diff_exp - (P->at_infinity ? 2 * P->ram_over_x : 0);
        if (c) {
            K.add(const_cast<const Place*>(P), c);
            total += c * P->degree;
        }
    }
    if (total != 2 * genus - 2) throw InternalError("canonical divisor degree mismatch");
    return K;
}

// ------------------------------------------------------------- printing

std::string CurveModel::print() const {
    std::ostringstream os;
    if (shape == Shape::Plane) {
        os << plane_form.to_string() << "=0";
        return os.str();
    }
    if (shape == Shape::Hyperelliptic) {
        os << "y^2";
        if (!hyp_h.is_zero()) {
            std::string hs = hyp_h.to_string();
            bool paren = hs.find('+') != std::string::npos || hs.find('-') != std::string::npos;
            os << "+" << (paren ? "(" + hs + ")" : hs) << "y";
        }
        os << "=" << RatFun(hyp_f).to_string();
        return os.str();
    }
    int p = F->p;
    for (size_t i = 0; i < tower_fs.size(); ++i) {
        if (i) os << "; ";
        std::string var = tower_fs.size() == 1 ? "y" : "w" + std::to_string(i + 1);
        os << var << "^" << p << (p == 2 ? "+" : "-") << var << "=" << tower_fs[i].to_string();
    }
    return os.str();
}

} // namespace hunt::curves
