// Place enumeration and completions for the three curve shapes.

#include <algorithm>
#include <climits>

#include "hunt/curves.hpp"
#include "hunt/internal.hpp"

namespace hunt::curves {

using series::LocalAlgebra;
using series::LSeries;
using series::PrecisionError;
using Elem = LocalAlgebra::Elem;

namespace {

constexpr int kBaseWindow = 48;

LSeries x_series_for(const ff::FieldPtr& k, bool infinite, ff::elt xi, int window) {
    if (infinite) return LSeries::monomial(k, 1, -1, 0).truncated(window);
    return (LSeries::constant(k, xi, 0) + LSeries::monomial(k, 1, 1, 0)).truncated(window);
}

Elem expand_ratfun_at(const LocalAlgebra& alg, const LSeries& xs, const RatFun& f,
                      const ff::Embedding& emb, int window) {
    auto horner = [&](const Poly& p) {
        LSeries r = LSeries::zero(alg.residue_field());
        int slack = window + (p.deg() + 1) * std::max(0, -xs.lo()) + 4;
        for (int i = p.deg(); i >= 0; --i) {
            r = (r * xs).truncated(slack);
            if (p.coeff(i)) r = r + LSeries::constant(alg.residue_field(), emb.map(p.coeff(i)), 0);
        }
        return r;
    };
    if (f.is_zero()) return alg.zero();
    int slack = window + (f.num().deg() + f.den().deg() + 2) * std::max(0, -xs.lo()) + 4;
    LSeries num = horner(f.num()).truncated(slack);
    LSeries den = horner(f.den()).truncated(slack);
    LSeries r = (num * den.inv()).truncated(window);
    return alg.from_series(r);
}

// q-power Frobenius relative to the curve's base field on a bigger field
ff::elt frob_rel(const ff::Field& K, ff::elt a, int basek) {
    for (int i = 0; i < basek; ++i) a = K.frob(a);
    return a;
}

} // namespace

Elem Completion::expand_ratfun(const RatFun& f) const {
    if (chart >= 0) throw InternalError("expand_ratfun on a plane completion");
    return expand_ratfun_at(alg, x.comp[0], f, *base_emb, window);
}

namespace {

// deterministic least root of pi in its residue field
ff::elt canonical_root(const Poly& pi, const ff::FieldPtr& K) {
    auto emb = ff::get_embedding(pi.field(), K);
    auto roots = pi.roots_in(*emb);
    if (roots.empty()) throw InternalError("prime has no root in its residue field");
    return roots.front();
}

// ---------------------------------------------------------------- AS towers

struct ASState {
    LocalAlgebra alg;
    LSeries xs;
    ff::FieldPtr k;
    std::vector<Elem> ws;
    std::vector<PlaceSeed::LevelChoice> branch;
    std::vector<int> ram_ms;
    ASState(ff::FieldPtr kk, LSeries x) : alg(kk), xs(std::move(x)), k(std::move(kk)) {}
};

void as_descend(const CurveModel& C, const std::vector<RatFun>& forms, ASState st, size_t i,
                int window, const std::vector<PlaceSeed::LevelChoice>* script,
                std::vector<ASState>& out) {
    if (i == forms.size()) {
        out.push_back(std::move(st));
        return;
    }
    auto emb = ff::get_embedding(C.F, st.k);
    Elem Fi = expand_ratfun_at(st.alg, st.xs, forms[i], *emb, window);
    auto red = st.alg.reduce_as(Fi);
    if (red.m > 0) {
        if (script && (*script)[i].kind != 0) throw InternalError("branch script mismatch (ram)");
        st.alg.add_level(red.m, red.reduced);
        Elem corr = st.alg.lift(red.corrector);
        for (auto& w : st.ws) w = st.alg.lift(w);
        st.ws.push_back(st.alg.add(st.alg.generator(st.alg.nlevels() - 1, 0), corr));
        st.branch.push_back({0, 0, 0});
        st.ram_ms.push_back(red.m);
        as_descend(C, forms, std::move(st), i + 1, window, script, out);
        return;
    }
    ff::elt c0 = red.residual;
    Elem reduced = red.reduced;
    Elem corrector = red.corrector;
    bool inert = st.k->trace_to_prime(c0) != 0;
    if (inert) {
        auto new_k = ff::get_field(st.k->p, st.k->k * st.k->p);
        auto e2 = ff::get_embedding(st.k, new_k);
        st.alg.extend_residue(new_k, *e2);
        st.xs = st.xs.mapped(*e2);
        for (auto& w : st.ws) w = st.alg.mapped(w, *e2);
        reduced = st.alg.mapped(reduced, *e2);
        corrector = st.alg.mapped(corrector, *e2);
        c0 = e2->map(c0);
        st.k = new_k;
    }
    ff::elt eta0;
    if (!st.k->artin_schreier_root(c0, eta0)) throw InternalError("AS root must exist");
    std::vector<ff::elt> choices;
    if (script) {
        if ((*script)[i].kind != 1) throw InternalError("branch script mismatch (value)");
        choices = {(*script)[i].eta};
    } else if (inert) {
        choices = {eta0}; // the p roots are conjugate: one place
    } else {
        for (int j = 0; j < st.k->p; ++j) choices.push_back(st.k->add(eta0, st.k->from_int(j)));
        std::sort(choices.begin(), choices.end());
    }
    Elem u = st.alg.sub(reduced, st.alg.constant(c0, 0));
    for (ff::elt eta : choices) {
        ASState st2 = st;
        Elem s = st2.alg.artin_schreier_solve(u);
        Elem wi = st2.alg.add(st2.alg.add(st2.alg.constant(eta, 0), s), corrector);
        st2.ws.push_back(wi);
        st2.branch.push_back({1, eta, st2.k->k});
        as_descend(C, forms, std::move(st2), i + 1, window, script, out);
    }
}

std::vector<ASState> as_branches(const CurveModel& C, const PlaceSeed& base, int window,
                                 const std::vector<PlaceSeed::LevelChoice>* script) {
    ff::FieldPtr k0;
    ff::elt xi = 0;
    if (base.infinite) {
        k0 = C.F;
    } else {
        int d0 = base.pi.deg();
        k0 = d0 == 1 ? C.F : ff::get_field(C.F->p, C.F->k * d0);
        xi = d0 == 1 ? C.F->neg(base.pi.coeff(0)) : canonical_root(base.pi, k0);
    }
    for (int W = window; W <= (1 << 14); W *= 2) {
        try {
            ASState st(k0, x_series_for(k0, base.infinite, xi, W));
            std::vector<ASState> out;
            as_descend(C, C.as_forms(), std::move(st), 0, W, script, out);
            return out;
        } catch (const PrecisionError&) {
            continue;
        }
    }
    throw Error("curves", "places", "place construction exceeded the precision cap");
}

int as_diff_exp(const std::vector<int>& ram_ms, int p) {
    // sum over ramified levels of (p-1)(m+1) * p^(# ramified levels after it)
    int d = 0;
    for (size_t j = 0; j < ram_ms.size(); ++j) {
        int scale = 1;
        for (size_t l = j + 1; l < ram_ms.size(); ++l) scale *= p;
        d += (p - 1) * (ram_ms[j] + 1) * scale;
    }
    return d;
}

// hyperelliptic coordinate y from Y (the completed-square variable): y = Y - h/2
Elem hyp_y_from_Y(const CurveModel& C, const LocalAlgebra& alg, const LSeries& xs,
                  const Elem& Y, const ff::Embedding& emb, int window) {
    if (C.F->p == 2) throw InternalError("hyp_y_from_Y in characteristic 2");
    if (C.hyp_h.is_zero()) return Y;
    RatFun half(Poly::constant(C.F, C.F->inv(C.F->from_int(2))));
    RatFun h2 = RatFun(C.hyp_h) * half;
    Elem shift = expand_ratfun_at(alg, xs, h2, emb, window);
    return alg.sub(Y, shift);
}

// places over one base prime for odd-characteristic hyperelliptic curves:
// returns list of seeds (completion built separately)
std::vector<PlaceSeed> hyp_seeds_over(const CurveModel& C, const std::optional<Poly>& pi) {
    std::vector<PlaceSeed> out;
    const Poly& FF = C.hyp_FF();
    const ff::FieldPtr& F = C.F;
    if (!pi) {
        int D = FF.deg();
        if (D % 2 == 1) {
            PlaceSeed s;
            s.infinite = true;
            s.hkind = 0;
            out.push_back(s);
        } else {
            ff::elt lc = FF.lead(), r;
            if (F->sqrt(lc, r)) {
                for (ff::elt y0 : {r, F->neg(r)}) {
                    PlaceSeed s;
                    s.infinite = true;
                    s.hkind = 1;
                    s.y0 = y0;
                    out.push_back(s);
                }
                if (out.size() == 2 && out[0].y0 > out[1].y0) std::swap(out[0], out[1]);
            } else {
                PlaceSeed s;
                s.infinite = true;
                s.hkind = 2;
                auto K = ff::get_field(F->p, F->k * 2);
                auto emb = ff::get_embedding(F, K);
                ff::elt rr;
                if (!K->sqrt(emb->map(lc), rr)) throw InternalError("no sqrt in quadratic extension");
                s.y0 = std::min(rr, K->neg(rr));
                out.push_back(s);
            }
        }
        return out;
    }
    int d0 = pi->deg();
    auto K = d0 == 1 ? F : ff::get_field(F->p, F->k * d0);
    auto emb = ff::get_embedding(F, K);
    ff::elt xi = d0 == 1 ? F->neg(pi->coeff(0)) : canonical_root(*pi, K);
    ff::elt v = FF.eval_ext(xi, *emb);
    if (v == 0) {
        PlaceSeed s;
        s.pi = *pi;
        s.hkind = 0;
        out.push_back(s);
    } else {
        ff::elt r;
        if (K->sqrt(v, r)) {
            for (ff::elt y0 : {std::min(r, K->neg(r)), std::max(r, K->neg(r))}) {
                PlaceSeed s;
                s.pi = *pi;
                s.hkind = 1;
                s.y0 = y0;
                out.push_back(s);
            }
        } else {
            auto K2 = ff::get_field(F->p, F->k * d0 * 2);
            auto e12 = ff::get_embedding(K, K2);
            ff::elt rr;
            if (!K2->sqrt(e12->map(v), rr)) throw InternalError("no sqrt in quadratic extension");
            PlaceSeed s;
            s.pi = *pi;
            s.hkind = 2;
            s.y0 = std::min(rr, K2->neg(rr));
            out.push_back(s);
        }
    }
    return out;
}

std::shared_ptr<Completion> build_hyp_completion(const CurveModel& C, const PlaceSeed& seed,
                                                 int window, int* e_out, int* diff_out,
                                                 ff::FieldPtr* k_out) {
    const ff::FieldPtr& F = C.F;
    const Poly& FF = C.hyp_FF();
    int D = FF.deg();
    ff::FieldPtr K;
    int e = 1, diff = 0;
    if (seed.infinite) {
        if (seed.hkind == 0) {
            // ramified at infinity: T with x = 1/u, u = T^2 * unit
            K = F;
            e = 2;
            diff = 1;
            auto comp = std::make_shared<Completion>(K);
            comp->window = window;
            comp->base_emb = ff::get_embedding(F, K);
            // u = T^2 * (F_D + F_{D-1} u + ... + F_0 u^D), iterate
            LSeries T = LSeries::monomial(K, 1, 1, 0);
            LSeries u = LSeries::monomial(K, FF.lead(), 2, 0).truncated(window * 2);
            for (int it = 0; it < window + 4; ++it) {
                LSeries acc = LSeries::zero(K);
                LSeries up = LSeries::constant(K, 1, 0);
                for (int j = D; j >= 0; --j) {
                    if (FF.coeff(j)) acc = acc + up.scaled(FF.coeff(j));
                    up = (up * u).truncated(window * 2 + 2);
                }
                LSeries nu = (T * T * acc).truncated(window * 2 + 2);
                u = nu;
            }
            LSeries xs = u.inv(); // valuation -2 series in T
            // Y = x^((D-1)/2) / T ... from Y^2 = FF(x): take Y = x^m * sqrt-free via T:
            // T = x^m / Y  =>  Y = x^m / T, m = (D-1)/2
            LSeries xm = LSeries::constant(K, 1, 0);
            for (int i = 0; i < (D - 1) / 2; ++i) xm = (xm * xs).truncated(window * 2);
            LSeries Y = (xm * T.inv()).truncated(window);
            comp->x = comp->alg.from_series(xs.truncated(window));
            Elem Yel = comp->alg.from_series(Y);
            comp->w = {hyp_y_from_Y(C, comp->alg, comp->x.comp[0], Yel, *comp->base_emb, window)};
            *e_out = e;
            *diff_out = diff;
            *k_out = K;
            return comp;
        }
        // split or inert at infinity: t = 1/x, Ytilde = Y * t^m solves Ytilde^2 = FF*(t)
        K = seed.hkind == 1 ? F : ff::get_field(F->p, F->k * 2);
        auto comp = std::make_shared<Completion>(K);
        comp->window = window;
        comp->base_emb = ff::get_embedding(F, K);
        auto embK = comp->base_emb;
        LSeries t = LSeries::monomial(K, 1, 1, 0);
        LSeries xs = t.inv(); // 1/t exactly
        // FFstar(t) = FF(1/t) t^D = sum FF_j t^(D-j)
        LSeries FFstar = LSeries::zero(K);
        for (int j = 0; j <= D; ++j)
            if (FF.coeff(j)) FFstar = FFstar + LSeries::monomial(K, embK->map(FF.coeff(j)), D - j, 0);
        FFstar = FFstar.truncated(window + D + 2);
        LSeries Yt = FFstar.sqrt();
        if (Yt.coeff(0) != seed.y0) Yt = -Yt;
        if (Yt.coeff(0) != seed.y0) throw InternalError("split sign mismatch at infinity");
        // Y = Ytilde * x^m, m = D/2
        LSeries Y = Yt;
        for (int i = 0; i < D / 2; ++i) Y = (Y * xs).truncated(window);
        comp->x = comp->alg.from_series(xs.truncated(window));
        Elem Yel = comp->alg.from_series(Y);
        comp->w = {hyp_y_from_Y(C, comp->alg, comp->x.comp[0], Yel, *comp->base_emb, window)};
        *e_out = 1;
        *diff_out = 0;
        *k_out = K;
        return comp;
    }
    int d0 = seed.pi.deg();
    if (seed.hkind == 0) {
        K = d0 == 1 ? F : ff::get_field(F->p, F->k * d0);
        e = 2;
        diff = 1;
        auto comp = std::make_shared<Completion>(K);
        comp->window = window;
        comp->base_emb = ff::get_embedding(F, K);
        ff::elt xi = d0 == 1 ? F->neg(seed.pi.coeff(0)) : canonical_root(seed.pi, K);
        // FF(xi + s) = b1 s + b2 s^2 + ...; solve s from t^2 = FF(xi+s)
        auto b = FF.expand_at(xi, *comp->base_emb);
        LSeries t = LSeries::monomial(K, 1, 1, 0);
        LSeries s = (t * t).scaled(K->inv(b[1])).truncated(window * 2 + 2);
        for (int it = 0; it < window + 4; ++it) {
            LSeries acc = LSeries::zero(K);
            LSeries sp = s;
            for (size_t j = 2; j < b.size(); ++j) {
                sp = (sp * s).truncated(window * 2 + 2);
                if (b[j]) acc = acc + sp.scaled(b[j]);
            }
            s = ((t * t) - acc).scaled(K->inv(b[1])).truncated(window * 2 + 2);
        }
        LSeries xs = LSeries::constant(K, xi, 0) + s;
        comp->x = comp->alg.from_series(xs.truncated(window));
        Elem Yel = comp->alg.from_series(t);
        comp->w = {hyp_y_from_Y(C, comp->alg, comp->x.comp[0], Yel, *comp->base_emb, window)};
        *e_out = e;
        *diff_out = diff;
        *k_out = K;
        return comp;
    }
    // split / inert over a finite prime
    int dk = seed.hkind == 1 ? d0 : 2 * d0;
    K = dk == 1 ? F : ff::get_field(F->p, F->k * dk);
    auto comp = std::make_shared<Completion>(K);
    comp->window = window;
    comp->base_emb = ff::get_embedding(F, K);
    ff::elt xi = (seed.pi.deg() == 1) ? F->neg(seed.pi.coeff(0)) : canonical_root(seed.pi, K);
    auto b = FF.expand_at(xi, *comp->base_emb);
    LSeries FFs = LSeries::from_coeffs(K, 0, b).truncated(window + 2);
    LSeries Y = FFs.sqrt();
    if (Y.coeff(0) != seed.y0) Y = -Y;
    if (Y.coeff(0) != seed.y0) throw InternalError("split sign mismatch");
    LSeries xs = LSeries::constant(K, xi, 0) + LSeries::monomial(K, 1, 1, 0);
    comp->x = comp->alg.from_series(xs.truncated(window));
    Elem Yel = comp->alg.from_series(Y.truncated(window));
    comp->w = {hyp_y_from_Y(C, comp->alg, comp->x.comp[0], Yel, *comp->base_emb, window)};
    *e_out = 1;
    *diff_out = 0;
    *k_out = K;
    return comp;
}

// ------------------------------------------------------------------ plane

std::shared_ptr<Completion> build_plane_completion(const CurveModel& C, const PlaceSeed& seed,
                                                   int window, int* e_out, int* diff_out,
                                                   ff::FieldPtr* k_out) {
    const ff::FieldPtr& F = C.F;
    int d = 0;
    {
        // residue degree from the stored field hint: recompute via orbit size
        // (the seed point coordinates live in the place's residue field; its
        // degree is carried by the caller through k_out, recomputed here)
    }
    // determine the residue field from the point coordinates: smallest field
    // containing them is encoded by the caller in seed.field via degree in pt?
    // We store the degree in seed.solve_var's sibling: recompute by orbit size.
    // Simpler: the caller passes resfield via k_out as input hint when set.
    ff::FieldPtr K = *k_out;
    if (!K) throw InternalError("plane completion needs the residue field hint");
    (void)d;
    auto emb = ff::get_embedding(F, K);
    // affine model for the chart
    const std::vector<Poly>* aff = nullptr;
    std::vector<Poly> tmp;
    if (seed.chart == 2)
        tmp = C.plane_form.affinize_z();
    else if (seed.chart == 1)
        tmp = C.plane_form.affinize_y();
    else
        tmp = C.plane_form.affinize_x();
    aff = &tmp;
    // affine coordinates of the point in this chart
    ff::elt u0, v0;
    {
        auto [X, Yc, Z] = seed.pt;
        if (seed.chart == 2) {
            u0 = X;
            v0 = Yc;
        } else if (seed.chart == 1) {
            u0 = X;
            v0 = Z;
        } else {
            u0 = Yc;
            v0 = Z;
        }
    }
    auto comp = std::make_shared<Completion>(K);
    comp->window = window;
    comp->base_emb = emb;
    comp->chart = seed.chart;
    LSeries t = LSeries::monomial(K, 1, 1, 0);
    LSeries us, vs;
    int W = window + 4;
    auto eval_g = [&](const LSeries& uu, const LSeries& vv) {
        LSeries acc = LSeries::zero(K);
        for (int j = int(aff->size()) - 1; j >= 0; --j) {
            acc = (acc * vv).truncated(W);
            const Poly& cj = (*aff)[j];
            if (!cj.is_zero()) {
                // cj(u) as series
                LSeries cs = LSeries::zero(K);
                for (int i = cj.deg(); i >= 0; --i) {
                    cs = (cs * uu).truncated(W);
                    if (cj.coeff(i)) cs = cs + LSeries::constant(K, emb->map(cj.coeff(i)), 0);
                }
                acc = acc + cs;
            }
        }
        return acc.truncated(W);
    };
    auto eval_gv = [&](const LSeries& uu, const LSeries& vv) {
        // derivative with respect to v
        LSeries acc = LSeries::zero(K);
        for (int j = int(aff->size()) - 1; j >= 1; --j) {
            acc = (acc * vv).truncated(W);
            const Poly& cj = (*aff)[j];
            if (!cj.is_zero()) {
                LSeries cs = LSeries::zero(K);
                for (int i = cj.deg(); i >= 0; --i) {
                    cs = (cs * uu).truncated(W);
                    if (cj.coeff(i)) cs = cs + LSeries::constant(K, emb->map(cj.coeff(i)), 0);
                }
                acc = acc + cs.scaled(K->from_int(j));
            }
        }
        return acc.truncated(W);
    };
    if (seed.solve_var == 1) {
        // t = u - u0, solve v(t) by Newton
        us = LSeries::constant(K, u0, 0) + t;
        vs = LSeries::constant(K, v0, 0).padded(1);
        for (int it = 0; it < 24 && vs.prec() < window; ++it) {
            int target = std::min(W, std::max(2, 2 * vs.prec()));
            LSeries vv = vs.padded(target);
            LSeries g = eval_g(us.padded(target), vv);
            LSeries gv = eval_gv(us.padded(target), vv);
            LSeries corr = (g * gv.inv()).truncated(target);
            vs = (vv - corr).padded(target);
        }
        vs = vs.padded(window);
        us = us.padded(window);
    } else {
        vs = LSeries::constant(K, v0, 0) + t;
        // solve u(t): swap roles using the u-derivative
        auto eval_gu = [&](const LSeries& uu, const LSeries& vv) {
            LSeries acc = LSeries::zero(K);
            for (int j = int(aff->size()) - 1; j >= 0; --j) {
                acc = (acc * vv).truncated(W);
                const Poly cj = (*aff)[j].derivative();
                if (!cj.is_zero()) {
                    LSeries cs = LSeries::zero(K);
                    for (int i = cj.deg(); i >= 0; --i) {
                        cs = (cs * uu).truncated(W);
                        if (cj.coeff(i)) cs = cs + LSeries::constant(K, emb->map(cj.coeff(i)), 0);
                    }
                    acc = acc + cs;
                }
            }
            return acc.truncated(W);
        };
        us = LSeries::constant(K, u0, 0).padded(1);
        for (int it = 0; it < 24 && us.prec() < window; ++it) {
            int target = std::min(W, std::max(2, 2 * us.prec()));
            LSeries uu = us.padded(target);
            LSeries g = eval_g(uu, vs.padded(target));
            LSeries gu = eval_gu(uu, vs.padded(target));
            LSeries corr = (g * gu.inv()).truncated(target);
            us = (uu - corr).padded(target);
        }
        us = us.padded(window);
        vs = vs.padded(window);
    }
    // projective coordinate series by chart
    auto one = LSeries::constant(K, 1, 0);
    LSeries X, Yc, Z;
    if (seed.chart == 2) {
        X = us;
        Yc = vs;
        Z = one;
    } else if (seed.chart == 1) {
        X = us;
        Yc = one;
        Z = vs;
    } else {
        X = one;
        Yc = us;
        Z = vs;
    }
    comp->proj = {comp->alg.from_series(X), comp->alg.from_series(Yc), comp->alg.from_series(Z)};
    *e_out = 1;
    *diff_out = 0;
    return comp;
}

} // namespace

// ------------------------------------------------------- CurveInternal

std::shared_ptr<const Completion> CurveInternal::build_completion(const CurveModel& C,
                                                                  const PlaceSeed& seed, int window,
                                                                  int* e_out, int* diff_out,
                                                                  ff::FieldPtr* k_out) {
    if (C.shape == Shape::Plane) {
        return build_plane_completion(C, seed, window, e_out, diff_out, k_out);
    }
    if (C.shape == Shape::Hyperelliptic && C.F->p != 2) {
        return build_hyp_completion(C, seed, window, e_out, diff_out, k_out);
    }
    // towers and characteristic-2 hyperelliptic models
    auto states = as_branches(C, seed, window, &seed.branch);
    if (states.size() != 1) throw InternalError("branch replay must give one place");
    ASState& st = states[0];
    auto comp = std::make_shared<Completion>(st.k);
    comp->window = window;
    comp->base_emb = ff::get_embedding(C.F, st.k);
    comp->x = st.alg.from_series(st.xs);
    if (C.shape == Shape::Hyperelliptic) {
        // y = h(x) * w
        Elem hx = expand_ratfun_at(st.alg, st.xs, RatFun(C.hyp_h), *comp->base_emb, window);
        comp->w = {st.alg.mul(hx, st.ws[0])};
    } else {
        comp->w = st.ws;
    }
    comp->alg = st.alg;
    *e_out = st.alg.t_weight();
    *diff_out = as_diff_exp(st.ram_ms, C.F->p);
    *k_out = st.k;
    return comp;
}

std::shared_ptr<const Completion> Place::completion(int window) const {
    std::lock_guard<std::mutex> lk(*comp_mutex_);
    if (comp_ && comp_->window >= window) return comp_;
    int e = 0, diff = 0;
    ff::FieldPtr k = resfield;
    auto c = CurveInternal::build_completion(*curve, seed, std::max(window, kBaseWindow), &e, &diff, &k);
    comp_ = c;
    return comp_;
}

namespace {

std::vector<std::uint64_t> as_sort_key(const PlaceSeed& s) {
    std::vector<std::uint64_t> key;
    key.push_back(s.infinite ? 0 : 1);
    if (!s.infinite) {
        key.push_back(std::uint64_t(s.pi.deg()));
        for (int i = s.pi.deg(); i >= 0; --i) key.push_back(s.pi.coeff(i));
    }
    for (auto& b : s.branch) {
        key.push_back(std::uint64_t(b.kind));
        key.push_back(b.eta);
        key.push_back(std::uint64_t(b.field_deg));
    }
    if (s.hkind >= 0) {
        key.push_back(std::uint64_t(s.hkind));
        key.push_back(s.y0);
    }
    return key;
}

std::vector<std::uint64_t> plane_sort_key(const PlaceSeed& s) {
    return {2, s.pt[0], s.pt[1], s.pt[2], std::uint64_t(s.chart)};
}

std::string coord_str(const ff::FieldPtr& K, ff::elt v, bool inf) {
    return inf ? "inf" : K->to_string(v);
}

} // namespace

const Place* CurveInternal::intern_place(const CurveModel& C, Place&& P) {
    std::lock_guard<std::mutex> lk(C.cache_mutex_);
    auto it = C.intern_.find(P.sort_key);
    if (it != C.intern_.end()) return it->second.get();
    auto up = std::make_unique<Place>(std::move(P));
    const Place* raw = up.get();
    C.intern_[raw->sort_key] = std::move(up);
    return raw;
}

namespace {
std::vector<ff::elt> fiber_key(const std::optional<Poly>& pi, int tag) {
    std::vector<ff::elt> key{ff::elt(tag)};
    if (pi)
        for (auto c : pi->coeffs()) key.push_back(c);
    return key;
}
} // namespace

std::vector<const Place*> CurveInternal::places_above_prime(const CurveModel& C,
                                                            const std::optional<Poly>& pi) {
    auto key = fiber_key(pi, 0);
    {
        std::lock_guard<std::mutex> lk(C.cache_mutex_);
        auto it = C.fiber_cache_.find(key);
        if (it != C.fiber_cache_.end()) return it->second;
    }
    auto memo = [&](std::vector<const Place*> v) {
        std::lock_guard<std::mutex> lk(C.cache_mutex_);
        C.fiber_cache_[key] = v;
        return v;
    };
    if (C.shape == Shape::Plane) return memo(plane_places_over_uncached(C, pi));
    std::vector<const Place*> out;
    if (C.shape == Shape::Hyperelliptic && C.F->p != 2) {
        for (auto& seed : hyp_seeds_over(C, pi)) {
            Place P;
            P.curve = &C;
            P.seed = seed;
            P.at_infinity = seed.infinite;
            int d0 = seed.infinite ? 1 : seed.pi.deg();
            P.degree = (seed.hkind == 2) ? 2 * d0 : d0;
            P.ram_over_x = (seed.hkind == 0) ? 2 : 1;
            P.diff_exp = (seed.hkind == 0) ? 1 : 0;
            P.resfield = P.degree == 1 ? C.F : ff::get_field(C.F->p, C.F->k * P.degree);
            P.sort_key = as_sort_key(seed);
            // coordinates: (x, y)
            ff::FieldPtr K = P.resfield;
            if (seed.infinite) {
                P.coords = {"inf", seed.hkind == 0 ? "inf" : "inf"};
            } else {
                auto embK = ff::get_embedding(C.F, K);
                ff::elt xi = seed.pi.deg() == 1 ? C.F->neg(seed.pi.coeff(0)) : canonical_root(seed.pi, K);
                if (seed.hkind == 0) {
                    // y = -h/2 at the ramified point
                    ff::elt hv = C.hyp_h.eval_ext(xi, *embK);
                    ff::elt y = K->mul(K->neg(hv), K->inv(K->from_int(2)));
                    P.coords = {coord_str(K, xi, false), coord_str(K, y, false)};
                } else {
                    ff::elt y = K->sub(seed.y0, K->mul(C.hyp_h.eval_ext(xi, *embK),
                                                       K->inv(K->from_int(2))));
                    P.coords = {coord_str(K, xi, false), coord_str(K, y, false)};
                }
            }
            out.push_back(intern_place(C, std::move(P)));
        }
        return memo(out);
    }
    // towers / char-2 hyperelliptic
    PlaceSeed base;
    base.infinite = !pi.has_value();
    if (pi) base.pi = *pi;
    auto states = as_branches(C, base, kBaseWindow, nullptr);
    for (auto& st : states) {
        Place P;
        P.curve = &C;
        P.seed = base;
        P.seed.branch = st.branch;
        P.at_infinity = base.infinite;
        P.degree = st.k->k / C.F->k;
        P.ram_over_x = st.alg.t_weight();
        P.diff_exp = as_diff_exp(st.ram_ms, C.F->p);
        P.resfield = P.degree == 1 ? C.F : st.k;
        P.sort_key = as_sort_key(P.seed);
        // coordinates: (x, w_1..w_r) or (x, y)
        std::vector<std::string> coords;
        if (base.infinite)
            coords.push_back("inf");
        else {
            ff::elt xi = st.xs.coeff(0);
            coords.push_back(st.k->to_string(xi));
        }
        std::vector<Elem> vals = st.ws;
        if (C.shape == Shape::Hyperelliptic) {
            auto embK = ff::get_embedding(C.F, st.k);
            Elem hx = expand_ratfun_at(st.alg, st.xs, RatFun(C.hyp_h), *embK, kBaseWindow);
            vals = {st.alg.mul(hx, st.ws[0])};
        }
        for (auto& w : vals) {
            auto v = st.alg.val(w);
            if (v && *v >= 0)
                coords.push_back(st.k->to_string(st.alg.residue(w)));
            else
                coords.push_back("inf");
        }
        P.coords = coords;
        out.push_back(intern_place(C, std::move(P)));
    }
    return memo(out);
}

std::vector<const Place*> CurveInternal::plane_places_over(const CurveModel& C,
                                                           const std::optional<Poly>& pi) {
    auto key = fiber_key(pi, 1);
    {
        std::lock_guard<std::mutex> lk(C.cache_mutex_);
        auto it = C.fiber_cache_.find(key);
        if (it != C.fiber_cache_.end()) return it->second;
    }
    auto v = plane_places_over_uncached(C, pi);
    std::lock_guard<std::mutex> lk(C.cache_mutex_);
    C.fiber_cache_[key] = v;
    return v;
}

std::vector<const Place*> CurveInternal::plane_places_over_uncached(const CurveModel& C,
                                                                    const std::optional<Poly>& pi) {
    // enumerate points of C with x/z a root of pi (chart z), or points with z = 0
    std::vector<const Place*> out;
    const ff::FieldPtr& F = C.F;
    const TriForm& form = C.plane_form;
    auto mk_place = [&](std::array<ff::elt, 3> pt, const ff::FieldPtr& K, int deg) {
        // canonical representative: least tuple in the Frobenius orbit
        std::array<ff::elt, 3> best = pt;
        auto cur = pt;
        for (int i = 1; i < deg; ++i) {
            for (auto& c : cur) c = frob_rel(*K, c, F->k);
            if (std::lexicographical_compare(cur.begin(), cur.end(), best.begin(), best.end()))
                best = cur;
        }
        PlaceSeed seed;
        seed.pt = best;
        // chart: prefer z != 0, then y, then x
        if (best[2] != 0)
            seed.chart = 2;
        else if (best[1] != 0)
            seed.chart = 1;
        else
            seed.chart = 0;
        // record the minimal polynomial of the x-coordinate (finite points)
        if (best[2] != 0) {
            ff::elt x0 = K->div(best[0], best[2]);
            auto embFK = ff::get_embedding(F, K);
            // orbit product prod (X - sigma^i x0), coefficients descend to F
            Poly mp = Poly::constant(K, 1);
            ff::elt cur = x0;
            std::vector<ff::elt> orbit;
            do {
                orbit.push_back(cur);
                cur = frob_rel(*K, cur, F->k);
            } while (cur != x0);
            for (ff::elt r : orbit) mp = mp * Poly(K, {K->neg(r), 1});
            std::vector<ff::elt> cs(mp.deg() + 1);
            for (int i = 0; i <= mp.deg(); ++i) {
                ff::elt pre;
                if (!embFK->preimage(mp.coeff(i), pre))
                    throw InternalError("x minimal polynomial does not descend");
                cs[i] = pre;
            }
            seed.pi = Poly(F, cs);
        }
        // normalize the chart coordinate to 1
        {
            ff::elt inv = K->inv(best[seed.chart]);
            for (auto& c : seed.pt) c = K->mul(c, inv);
        }
        // solve variable: use the affine partial that does not vanish
        auto embK = ff::get_embedding(F, K);
        ff::elt fx = form.partial(0).eval(seed.pt[0], seed.pt[1], seed.pt[2], *embK);
        ff::elt fy = form.partial(1).eval(seed.pt[0], seed.pt[1], seed.pt[2], *embK);
        ff::elt fz = form.partial(2).eval(seed.pt[0], seed.pt[1], seed.pt[2], *embK);
        // chart 2: affine (u,v) = (x,y): dv = fy, du = fx; solve v if fy != 0
        ff::elt dv = 0;
        if (seed.chart == 2)
            dv = fy;
        else if (seed.chart == 1)
            dv = fz;
        else
            dv = fz;
        seed.solve_var = (dv != 0) ? 1 : 0;
        Place P;
        P.curve = &C;
        P.seed = seed;
        P.degree = deg;
        P.resfield = deg == 1 ? F : K;
        P.at_infinity = (seed.pt[2] == 0);
        P.sort_key = plane_sort_key(seed);
        P.coords = {K->to_string(seed.pt[0]), K->to_string(seed.pt[1]), K->to_string(seed.pt[2])};
        return intern_place(C, std::move(P));
    };
    if (!pi) {
        // z = 0 line: roots of form(x, y, 0) as binary form in (x : y)
        // enumerate (1 : y : 0) and (0 : 1 : 0)
        // the restriction is a univariate in y after setting x = 1
        std::vector<Poly> ax = form.affinize_x(); // in (y, z), coeff of z^m
        Poly border = ax.empty() ? Poly(F) : ax[0]; // form(1, y, 0)
        if (!border.is_zero()) {
            auto fac = border.factor();
            for (auto& [fp, mult] : fac.factors) {
                int d = fp.deg();
                auto K = d == 1 ? F : ff::get_field(F->p, F->k * d);
                ff::elt y0 = d == 1 ? F->neg(fp.coeff(0)) : canonical_root(fp, K);
                out.push_back(mk_place({1, y0, 0}, K, d));
            }
        }
        // the point (0 : 1 : 0)
        if (form.eval(0, 1, 0) == 0) out.push_back(mk_place({0, 1, 0}, F, 1));
        return out;
    }
    int d0 = pi->deg();
    // x-coordinate root field
    for (int fdeg = 1; fdeg <= form.degree(); ++fdeg) {
        int deg = d0 * fdeg;
        auto K = deg == 1 ? F : ff::get_field(F->p, F->k * deg);
        auto embK = ff::get_embedding(F, K);
        auto roots_pi = pi->roots_in(*embK);
        // y-roots of g(xi, y) over K for each xi; place degree = orbit size
        const auto& aff = C.plane_affine_z();
        std::vector<const Place*> found;
        for (ff::elt xi : roots_pi) {
            std::vector<ff::elt> yc;
            for (auto& cj : aff) yc.push_back(cj.eval_ext(xi, *embK));
            Poly gy(K, yc);
            if (gy.is_zero()) continue;
            for (ff::elt y0 : gy.roots()) {
                // orbit size of the point (xi, y0, 1)
                std::array<ff::elt, 3> pt{xi, y0, 1};
                int orbit = 1;
                auto cur = pt;
                while (true) {
                    for (auto& c : cur) c = frob_rel(*K, c, F->k);
                    if (cur == pt) break;
                    ++orbit;
                    if (orbit > deg) throw InternalError("orbit exceeds field degree");
                }
                if (orbit == deg) found.push_back(mk_place(pt, K, deg));
            }
        }
        for (auto* P : found) out.push_back(P);
    }
    // dedupe
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void CurveInternal::enumerate_degree(const CurveModel& C, int d) {
    {
        std::lock_guard<std::mutex> lk(C.cache_mutex_);
        if (C.bydeg_.count(d)) return;
    }
    std::vector<const Place*> found;
    if (C.shape == Shape::Plane) {
        // all points of degree d: iterate monic irreducibles of x-coordinate degree
        // dividing d, plus the z = 0 line
        for (int d0 = 1; d0 <= d; ++d0) {
            if (d % d0 != 0) continue;
            for (const Poly& pi : poly::monic_irreducibles(C.F, d0)) {
                for (auto* P : plane_places_over(C, pi))
                    if (P->degree == d) found.push_back(P);
            }
        }
        for (auto* P : plane_places_over(C, std::nullopt))
            if (P->degree == d) found.push_back(P);
    } else {
        int p = C.F->p;
        // base prime degrees d0 with d = d0 * p^j  (residue growth is a p-power)
        for (int d0 = 1; d0 <= d; ++d0) {
            if (d % d0 != 0) continue;
            int f = d / d0;
            bool ppow = true;
            while (f > 1) {
                if (f % p != 0) {
                    ppow = false;
                    break;
                }
                f /= p;
            }
            if (!ppow) continue;
            if (C.shape == Shape::Hyperelliptic && C.F->p != 2 && d / d0 > 2) continue;
            for (const Poly& pi : poly::monic_irreducibles(C.F, d0)) {
                for (auto* P : places_above_prime(C, pi))
                    if (P->degree == d) found.push_back(P);
            }
        }
        // infinity contributes to any p-power degree (or 1, 2 for odd hyperelliptic)
        for (auto* P : places_above_prime(C, std::nullopt))
            if (P->degree == d) found.push_back(P);
    }
    std::sort(found.begin(), found.end(),
              [](const Place* a, const Place* b) { return a->sort_key < b->sort_key; });
    found.erase(std::unique(found.begin(), found.end()), found.end());
    std::lock_guard<std::mutex> lk(C.cache_mutex_);
    auto& slot = C.bydeg_[d];
    if (!slot.empty()) return;
    slot = found;
    for (size_t i = 0; i < slot.size(); ++i) {
        auto* P = const_cast<Place*>(slot[i]);
        P->index = int(i);
        P->label = (d == 1) ? "P" + std::to_string(i) : "Q" + std::to_string(d) + "_" + std::to_string(i);
    }
}

} // namespace hunt::curves
