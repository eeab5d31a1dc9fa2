#include "hunt/covers.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <set>

#include "hunt/internal.hpp"

namespace hunt::covers {

using curves::Completion;
using curves::CurveModel;
using curves::Shape;
using series::LocalAlgebra;
using series::PrecisionError;
using Elem = LocalAlgebra::Elem;
using ff::elt;
using ff::FieldPtr;

namespace {

// expansion of a curve function at a completion (same scheme as the RR engine)
Elem expand_fun(const Completion& comp, const CurveFunction& f) {
    const CurveModel& C = *f.curve;
    const auto& alg = comp.alg;
    if (C.shape == Shape::Plane) {
        auto& emb = *comp.base_emb;
        auto eval_form = [&](const poly::TriForm& T) {
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
                    elt c = T.coeff(i, j);
                    if (!c) continue;
                    Elem t = alg.mul(alg.mul(xp[i], yp[j]), zp[d - i - j]);
                    acc = alg.add(acc, alg.scaled(t, emb.map(c)));
                }
            return acc;
        };
        Elem num = eval_form(f.pnum);
        Elem den = eval_form(f.pden);
        return alg.from_series((num.comp[0] * den.comp[0].inv()).truncated(comp.window));
    }
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

LocalReduction reduce_elem(const Completion& comp, const Elem& e) {
    auto red = comp.alg.reduce_as(e);
    LocalReduction out;
    out.m = red.m;
    out.residual = red.residual;
    return out;
}

} // namespace

LocalReduction as_reduce_local(const CurveFunction& f, const Place* P) {
    if (f.is_zero()) return {};
    for (int window = 48; window <= 4096; window *= 2) {
        try {
            auto comp = P->completion(window);
            return reduce_elem(*comp, expand_fun(*comp, f));
        } catch (const PrecisionError&) {
            continue;
        }
    }
    throw Error("covers", "as_reduce_local", "reduction exceeded the precision cap");
}

// ---------------------------------------------------------------- ASCoverSpec

namespace {

// Degeneracy check: f in { h^p - h + c : h in K, c in F_q } makes the cover
// split (or a constant-field extension). Solve the F_p-linear system.
bool is_weierstrass_plus_constant(const CurvePtr& C, const CurveFunction& f,
                                  const Divisor& fpoles) {
    // h may have poles of order ceil(m/p) at poles of f
    Divisor Dh;
    for (auto& [P, m] : fpoles.terms()) Dh.add(P, (m + C->F->p - 1) / C->F->p);
    auto basis = jacobian::rr_basis(C, Dh);
    const FieldPtr& F = C->F;
    int p = F->p, k = F->k;
    // F_p-spanning set: beta_t * b_j with beta_t the digit basis of F_q
    std::vector<CurveFunction> span;
    for (auto& b : basis)
        for (int t = 0; t < k; ++t) {
            std::vector<int> digs(k, 0);
            digs[t] = 1;
            span.push_back(b.scaled(F->from_coeffs(digs)));
        }
    // targets: phi(span_j) = span_j^p - span_j ; plus the constants beta_t
    std::vector<CurveFunction> targets;
    for (auto& s : span) {
        CurveFunction sp = s;
        for (int i = 1; i < p; ++i) sp = sp * s;
        targets.push_back(sp - s);
    }
    for (int t = 0; t < k; ++t) {
        std::vector<int> digs(k, 0);
        digs[t] = 1;
        targets.push_back(C->fun_constant(F->from_coeffs(digs)));
    }
    // conditions: expansion of sum mu_j targets_j - f vanishes to high order at
    // one rational place, and is regular at all pole candidates of everything
    std::set<const Place*> places;
    for (auto& [P, m] : fpoles.terms()) places.insert(P);
    long long bound = 0;
    for (auto& [P, m] : fpoles.terms()) bound += (long long)m * P->degree;
    bound = 2 * bound + 4 * C->curve_genus() + 8;
    const Place* deep = C->places(1).empty() ? nullptr : C->places(1).front();
    if (!deep) return false;
    places.insert(deep);
    int window = int(bound) + 32;
    std::vector<std::vector<int>> rows; // over F_p
    int ncols = int(targets.size());
    try {
        for (const Place* P : places) {
            auto comp = P->completion(window);
            std::vector<Elem> exps;
            for (auto& t : targets) exps.push_back(expand_fun(*comp, t));
            Elem fe = expand_fun(*comp, f);
            int tw = comp->alg.t_weight();
            size_t ncomp = comp->alg.zero().comp.size();
            long long upto = (P == deep) ? bound : 0;
            for (size_t ci = 0; ci < ncomp; ++ci) {
                long long wshift = 0;
                size_t jj = ci;
                for (int l = 0; l < comp->alg.nlevels(); ++l) {
                    wshift += (long long)(jj % p) * comp->alg.w_weight(l);
                    jj /= p;
                }
                int lo = INT_MAX;
                auto scan = [&](const Elem& e) {
                    if (!e.comp[ci].exact_zero()) lo = std::min(lo, e.comp[ci].lo());
                };
                for (auto& e : exps) scan(e);
                scan(fe);
                if (lo == INT_MAX) continue;
                for (int te = lo;; ++te) {
                    long long v = (long long)te * tw + wshift;
                    if (v >= upto) break;
                    // row over F_p: digits of coefficients
                    int kd = P->resfield->k;
                    std::vector<std::vector<int>> rr(kd, std::vector<int>(ncols + 1, 0));
                    for (int j = 0; j <= ncols; ++j) {
                        elt c = (j < ncols) ? exps[j].comp[ci].coeff(te) : fe.comp[ci].coeff(te);
                        auto digs = P->resfield->coeffs(c);
                        for (int t2 = 0; t2 < kd; ++t2) rr[t2][j] = digs[t2];
                    }
                    for (auto& r0 : rr) rows.push_back(r0);
                }
            }
        }
    } catch (const PrecisionError&) {
        throw Error("covers", "spec", "degeneracy check ran out of precision");
    }
    // solve rows * (mu ; -1) = 0 i.e. sum mu_j col_j = col_f over F_p
    int nrows = int(rows.size());
    int row = 0;
    std::vector<int> piv(ncols, -1);
    for (int col = 0; col < ncols && row < nrows; ++col) {
        int sel = -1;
        for (int i = row; i < nrows; ++i)
            if (rows[i][col]) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        std::swap(rows[sel], rows[row]);
        int pv = rows[row][col], pinv = 1;
        for (int i = 1; i < p; ++i)
            if (pv * i % p == 1) pinv = i;
        for (int j = 0; j <= ncols; ++j) rows[row][j] = rows[row][j] * pinv % p;
        for (int i = 0; i < nrows; ++i) {
            if (i == row) continue;
            int fm = rows[i][col];
            if (!fm) continue;
            for (int j = 0; j <= ncols; ++j)
                rows[i][j] = ((rows[i][j] - fm * rows[row][j]) % p + p) % p;
        }
        piv[col] = row;
        ++row;
    }
    // consistent iff no row reduces to (0...0 | nonzero)
    for (int i = 0; i < nrows; ++i) {
        bool zero = true;
        for (int j = 0; j < ncols; ++j)
            if (rows[i][j]) {
                zero = false;
                break;
            }
        if (zero && rows[i][ncols]) return false; // no solution: not degenerate
    }
    return true;
}

} // namespace

ASCoverSpec::ASCoverSpec(CurvePtr base, std::vector<CurveFunction> fs)
    : base_(std::move(base)), fs_(std::move(fs)) {
    if (fs_.empty()) throw Error("covers", "spec", "a cover needs at least one function");
    int p = base_->F->p;
    // pole candidates: union over the defining functions
    std::set<const Place*> ps;
    std::vector<Divisor> divs;
    for (auto& f : fs_) {
        if (f.is_zero()) throw Error("covers", "spec", "zero defining function");
        Divisor D = base_->divisor_of(f);
        divs.push_back(D);
        for (auto& [P, m] : D.terms())
            if (m < 0) ps.insert(P);
    }
    poles_.assign(ps.begin(), ps.end());
    std::sort(poles_.begin(), poles_.end(), [](const Place* a, const Place* b) {
        if (a->degree != b->degree) return a->degree < b->degree;
        return a->sort_key < b->sort_key;
    });
    // independence modulo { h^p - h } + constants: every nonzero character must
    // define a genuine (geometrically connected) degree-p subcover
    int nchars = 1;
    for (int i = 0; i < rank(); ++i) nchars *= p;
    for (int code = 1; code < nchars; ++code) {
        std::vector<int> chi(rank());
        int cc = code;
        for (int i = 0; i < rank(); ++i) {
            chi[i] = cc % p;
            cc /= p;
        }
        CurveFunction fc = character_function(chi);
        Divisor poles;
        for (size_t i = 0; i < divs.size(); ++i)
            if (chi[i])
                for (auto& [P, m] : divs[i].terms())
                    if (m < 0) {
                        int cur = poles.mult_of(P);
                        poles.add(P, std::max(-m, cur) - cur);
                    }
        if (is_weierstrass_plus_constant(base_, fc, poles))
            throw Error("covers", "spec",
                        "defining functions are dependent modulo p-th powers "
                        "(a character gives a split or constant-field cover)");
    }
}

int ASCoverSpec::degree() const {
    int d = 1;
    for (int i = 0; i < rank(); ++i) d *= base_->F->p;
    return d;
}

CurveFunction ASCoverSpec::character_function(const std::vector<int>& chi) const {
    if (int(chi.size()) != rank()) throw Error("covers", "character", "character length mismatch");
    CurveFunction acc = base_->fun_zero();
    bool any = false;
    for (int i = 0; i < rank(); ++i) {
        if (!chi[i]) continue;
        acc = acc + fs_[i].scaled(base_->F->from_int(chi[i]));
        any = true;
    }
    if (!any) throw Error("covers", "character", "the zero character has no conductor");
    return acc;
}

Divisor character_conductor(const ASCoverSpec& spec, const std::vector<int>& chi) {
    CurveFunction fc = spec.character_function(chi);
    Divisor cond;
    for (auto* P : spec.pole_candidates()) {
        LocalReduction red = as_reduce_local(fc, P);
        if (red.m > 0) cond.add(P, red.m + 1);
    }
    return cond;
}

int cover_genus(const ASCoverSpec& spec) {
    int p = spec.base()->F->p;
    int nchars = spec.degree();
    int gC = spec.base()->curve_genus();
    long long sum = (long long)nchars * (2 * gC - 2);
    for (int code = 1; code < nchars; ++code) {
        std::vector<int> chi(spec.rank());
        int cc = code;
        for (int i = 0; i < spec.rank(); ++i) {
            chi[i] = cc % p;
            cc /= p;
        }
        sum += character_conductor(spec, chi).degree();
    }
    if (sum % 2 != 0 || sum < -2) throw InternalError("conductor-discriminant sum is odd");
    return int((sum + 2) / 2);
}

std::int64_t cover_points(const ASCoverSpec& spec) {
    const CurvePtr& C = spec.base();
    int p = C->F->p;
    int nchars = spec.degree();
    std::int64_t N = 0;
    for (auto* P : C->places(1)) {
        // expand every defining function once, then combine per character
        int window = 48;
        std::vector<LocalReduction> reds(nchars);
        bool done = false;
        while (!done && window <= 4096) {
            try {
                auto comp = P->completion(window);
                std::vector<Elem> exps;
                for (auto& f : spec.fs()) exps.push_back(expand_fun(*comp, f));
                for (int code = 1; code < nchars; ++code) {
                    Elem acc = comp->alg.zero();
                    int cc = code;
                    for (int i = 0; i < spec.rank(); ++i) {
                        int ci = cc % p;
                        cc /= p;
                        if (ci) acc = comp->alg.add(acc, comp->alg.scaled(exps[i], C->F->from_int(ci)));
                    }
                    reds[code] = reduce_elem(*comp, acc);
                }
                done = true;
            } catch (const PrecisionError&) {
                window *= 2;
            }
        }
        if (!done) throw Error("covers", "cover_points", "precision cap at a rational place");
        int unram = 0;
        bool bad = false;
        for (int code = 1; code < nchars && !bad; ++code) {
            if (reds[code].m > 0) continue;
            if (P->resfield->trace_to_prime(reds[code].residual) != 0)
                bad = true;
            else
                ++unram;
        }
        if (!bad) N += unram + 1;
    }
    return N;
}

std::string CoverReport::to_line() const {
    const char* k = kind == CertKind::ExplicitAS
                        ? "explicit-AS"
                        : (kind == CertKind::ClassFieldSubgroup ? "class-field-subgroup"
                                                                : "class-field-extension");
    std::string s = std::string(k) + " " + std::to_string(q) + " " + std::to_string(genus) + " " +
                    std::to_string(points) + " " + (lower_bound_only ? "lower-bound" : "exact") +
                    " " + std::to_string(degree) + " " + base_id;
    return s;
}

CoverReport as_cover_report(const ASCoverSpec& spec) {
    CoverReport r;
    r.kind = CertKind::ExplicitAS;
    r.base_id = spec.base()->print();
    r.q = spec.base()->F->q;
    r.degree = spec.degree();
    r.genus = cover_genus(spec);
    r.points = cover_points(spec);
    int p = spec.base()->F->p;
    for (int code = 1; code < spec.degree(); ++code) {
        std::vector<int> chi(spec.rank());
        int cc = code;
        for (int i = 0; i < spec.rank(); ++i) {
            chi[i] = cc % p;
            cc /= p;
        }
        r.conductors.push_back({chi, character_conductor(spec, chi)});
    }
    // Weil sanity on the certified pair
    long double qn = (long double)r.q;
    long double bound = 2.0L * r.genus * sqrtl(qn);
    if (fabsl((long double)r.points - (qn + 1)) > bound + 1e-9)
        throw InternalError("cover report violates the Weil bound");
    return r;
}

// ----------------------------------------------------------------- subgroups

std::int64_t Subgroup::order() const {
    return std::int64_t(elements().size());
}

std::int64_t Subgroup::index() const {
    std::int64_t g = 1;
    for (auto d : invariants) g *= d;
    std::int64_t o = order();
    if (g % o != 0) throw InternalError("subgroup order does not divide the group order");
    return g / o;
}

std::vector<std::vector<std::int64_t>> Subgroup::elements() const {
    if (!known_elements.empty()) return known_elements;
    std::set<std::vector<std::int64_t>> seen;
    std::vector<std::int64_t> zero(invariants.size(), 0);
    seen.insert(zero);
    std::vector<std::vector<std::int64_t>> frontier{zero};
    while (!frontier.empty()) {
        auto v = frontier.back();
        frontier.pop_back();
        for (auto& g : gens) {
            auto w = v;
            for (size_t i = 0; i < invariants.size(); ++i)
                w[i] = (w[i] + g[i]) % invariants[i];
            if (seen.insert(w).second) frontier.push_back(w);
        }
    }
    return {seen.begin(), seen.end()};
}

bool Subgroup::contains(const std::vector<std::int64_t>& v) const {
    auto els = elements();
    std::vector<std::int64_t> r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = ((v[i] % invariants[i]) + invariants[i]) % invariants[i];
    return std::binary_search(els.begin(), els.end(), r);
}

CoverReport subgroup_cover_report(const SubgroupCoverSpec& spec) {
    const auto& G = spec.structure;
    if (spec.H.invariants != G.invariants)
        throw Error("covers", "subgroup_cover_report", "subgroup lives in a different group");
    std::int64_t d = spec.H.index();
    if (spec.expected_index && d != spec.expected_index)
        throw Error("covers", "subgroup_cover_report",
                    "subgroup index " + std::to_string(d) + " does not match the requested " +
                        std::to_string(spec.expected_index));
    auto els = spec.H.elements();
    std::vector<std::int64_t> shift(G.invariants.size(), 0);
    if (spec.aj_base) shift = jacobian::abel_jacobi(G, spec.aj_base);
    std::int64_t covered = 0;
    for (auto* P : G.curve->places(1)) {
        auto v = jacobian::abel_jacobi(G, P);
        for (size_t i = 0; i < v.size(); ++i)
            v[i] = ((v[i] - shift[i]) % G.invariants[i] + G.invariants[i]) % G.invariants[i];
        if (std::binary_search(els.begin(), els.end(), v)) ++covered;
    }
    CoverReport r;
    r.kind = CertKind::ClassFieldSubgroup;
    r.base_id = G.curve->print();
    r.q = G.curve->F->q;
    r.degree = int(d);
    r.genus = int(d) * (G.curve->curve_genus() - 1) + 1;
    r.points = d * covered;
    r.lower_bound_only = false;
    long double qn = (long double)r.q;
    if (fabsl((long double)r.points - (qn + 1)) > 2.0L * r.genus * sqrtl(qn) + 1e-9)
        throw InternalError("subgroup cover violates the Weil bound");
    return r;
}

CoverReport extension_cover_report(const zeta::LPolynomial& L, std::int64_t N1,
                                   const std::string& base_id, int n) {
    if (L.genus() == 0)
        throw Error("covers", "extension_cover_report", "genus 0 has no Jacobian");
    zeta::Int d_big = L.extension_index(n);
    if (d_big > (std::int64_t(1) << 40))
        throw Error("covers", "extension_cover_report", "extension index too large");
    std::int64_t d = std::int64_t(d_big);
    CoverReport r;
    r.kind = CertKind::ClassFieldExtension;
    r.base_id = base_id;
    std::uint64_t qn = 1;
    for (int i = 0; i < n; ++i) qn *= L.q();
    r.q = qn;
    r.degree = int(d);
    r.genus = int(d) * (L.genus() - 1) + 1;
    r.points = d * N1;
    r.lower_bound_only = n > 1;
    return r;
}

CoverReport extension_cover_report(const CurvePtr& C, int n) {
    auto L = jacobian::l_polynomial(C);
    auto r = extension_cover_report(L, C->count_points(1), C->print(), n);
    return r;
}

} // namespace hunt::covers
