#include "hunt/jacobian.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <set>
#include <unordered_map>

#include "hunt/internal.hpp"

namespace hunt::jacobian {

using curves::Completion;
using curves::CurveInternal;
using curves::CurveModel;
using curves::Shape;
using poly::Poly;
using poly::RatFun;
using series::LocalAlgebra;
using series::PrecisionError;
using Elem = LocalAlgebra::Elem;
using ff::elt;
using ff::FieldPtr;

// ------------------------------------------------------- F_q-coordinates

namespace {

// coordinates of elements of K over F_q (basis 1, a, ..., a^(d-1), a = K's root)
struct FqCoords {
    FieldPtr F, K;
    int d;
    std::vector<int> inv; // (kd x kd) inverse matrix over F_p
    FqCoords(FieldPtr Fq, FieldPtr Kk) : F(std::move(Fq)), K(std::move(Kk)) {
        d = K->k / F->k;
        int p = F->p, n = K->k;
        auto embFK = ff::get_embedding(F, K);
        // columns: digits of emb(b) * a^i for b = F-basis digit e_j, i < d
        std::vector<int> M(n * n);
        int col = 0;
        for (int i = 0; i < d; ++i) {
            elt ai = K->pow(K->k > 1 ? elt(K->p) : 0, i); // a^i (a = modulus root)
            if (K->k == 1) ai = 1;
            for (int j = 0; j < F->k; ++j, ++col) {
                elt bj = 1;
                for (int t = 0; t < j; ++t) bj = F->mul(bj, elt(F->k > 1 ? F->p : 1));
                if (F->k == 1) bj = 1;
                // basis element of F as digit vector: a_F^j
                std::vector<int> digits(F->k, 0);
                digits[j] = 1;
                elt bF = F->from_coeffs(digits);
                elt v = K->mul(embFK->map(bF), ai);
                auto co = K->coeffs(v);
                for (int r = 0; r < n; ++r) M[r * n + col] = co[r];
            }
        }
        // invert M over F_p
        inv.assign(n * n, 0);
        std::vector<int> A(M);
        for (int i = 0; i < n; ++i) inv[i * n + i] = 1;
        for (int c2 = 0, row = 0; c2 < n && row < n; ++c2) {
            int sel = -1;
            for (int i = row; i < n; ++i)
                if (A[i * n + c2]) {
                    sel = i;
                    break;
                }
            if (sel < 0) throw InternalError("FqCoords basis is singular");
            for (int j = 0; j < n; ++j) {
                std::swap(A[sel * n + j], A[row * n + j]);
                std::swap(inv[sel * n + j], inv[row * n + j]);
            }
            int pv = A[row * n + c2], pinv = 1;
            for (int i = 1; i < p; ++i)
                if (pv * i % p == 1) pinv = i;
            for (int j = 0; j < n; ++j) {
                A[row * n + j] = A[row * n + j] * pinv % p;
                inv[row * n + j] = inv[row * n + j] * pinv % p;
            }
            for (int i = 0; i < n; ++i) {
                if (i == row) continue;
                int fmul = A[i * n + c2];
                if (!fmul) continue;
                for (int j = 0; j < n; ++j) {
                    A[i * n + j] = ((A[i * n + j] - fmul * A[row * n + j]) % p + p) % p;
                    inv[i * n + j] = ((inv[i * n + j] - fmul * inv[row * n + j]) % p + p) % p;
                }
            }
            ++row;
        }
    }
    // v in K -> d coordinates in F
    std::vector<elt> coords(elt v) const {
        int p = F->p, n = K->k;
        auto dig = K->coeffs(v);
        std::vector<int> y(n, 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) y[i] = (y[i] + inv[i * n + j] * dig[j]) % p;
        std::vector<elt> out(d);
        for (int i = 0; i < d; ++i) {
            std::vector<int> digs(F->k);
            for (int j = 0; j < F->k; ++j) digs[j] = y[i * F->k + j];
            out[i] = F->from_coeffs(digs);
        }
        return out;
    }
};

std::mutex g_coords_mutex;
std::map<std::pair<const ff::Field*, const ff::Field*>, std::shared_ptr<FqCoords>> g_coords;

std::shared_ptr<FqCoords> get_coords(const FieldPtr& F, const FieldPtr& K) {
    std::lock_guard<std::mutex> lk(g_coords_mutex);
    auto key = std::make_pair(F.get(), K.get());
    auto it = g_coords.find(key);
    if (it != g_coords.end()) return it->second;
    auto c = std::make_shared<FqCoords>(F, K);
    g_coords[key] = c;
    return c;
}

// dense F_q matrix kernel
std::vector<std::vector<elt>> kernel_basis(const FieldPtr& F, std::vector<std::vector<elt>> rows,
                                           int ncols) {
    int nrows = int(rows.size());
    std::vector<int> pivot_of_col(ncols, -1);
    int row = 0;
    for (int col = 0; col < ncols && row < nrows; ++col) {
        int sel = -1;
        for (int i = row; i < nrows; ++i)
            if (rows[i][col]) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        std::swap(rows[sel], rows[row]);
        elt pinv = F->inv(rows[row][col]);
        for (int j = col; j < ncols; ++j) rows[row][j] = F->mul(rows[row][j], pinv);
        for (int i = 0; i < nrows; ++i) {
            if (i == row) continue;
            elt fmul = rows[i][col];
            if (!fmul) continue;
            for (int j = col; j < ncols; ++j)
                rows[i][j] = F->sub(rows[i][j], F->mul(fmul, rows[row][j]));
        }
        pivot_of_col[col] = row;
        ++row;
    }
    std::vector<std::vector<elt>> basis;
    for (int col = 0; col < ncols; ++col) {
        if (pivot_of_col[col] >= 0) continue;
        std::vector<elt> v(ncols, 0);
        v[col] = 1;
        for (int c2 = 0; c2 < ncols; ++c2)
            if (pivot_of_col[c2] >= 0) v[c2] = F->neg(rows[pivot_of_col[c2]][col]);
        basis.push_back(std::move(v));
    }
    return basis;
}

// ambient monomial data for the x-cover Riemann-Roch engine
struct Ambient {
    std::vector<CurveFunction> funs;
    std::vector<std::pair<int, int>> shape; // (a, e): x^a * B_e / G
    Poly G;
};

Ambient build_ambient(const CurvePtr& C, const Divisor& D, int extra) {
    const FieldPtr& F = C->F;
    Divisor Dp = D.pos_part();
    // denominator G
    std::map<std::vector<elt>, std::pair<Poly, int>> prim; // key -> (pi, power)
    auto bump = [&](const Poly& pi, int k) {
        if (pi.deg() < 1 || k <= 0) return;
        auto key = pi.coeffs();
        auto it = prim.find(key);
        if (it == prim.end())
            prim.insert({key, {pi, k}});
        else
            it->second.second = std::max(it->second.second, k);
    };
    for (auto& [P, m] : Dp.terms()) {
        if (P->at_infinity) continue;
        const Poly& pi = P->seed.pi;
        int need = (m + P->ram_over_x - 1) / P->ram_over_x;
        bump(pi, need);
    }
    int slack_extra = extra;
    // model slack primes
    int n = C->x_degree();
    if (C->shape == Shape::Tower) {
        for (auto& fi : C->tower_fs)
            for (auto& [pi, m] : fi.den().factor().factors) {
                int polem = -fi.val_at(pi);
                bump(pi, (polem + 1) * n + slack_extra);
            }
    } else if (C->shape == Shape::Hyperelliptic && F->p == 2) {
        for (auto& [pi, m] : C->hyp_h.factor().factors) bump(pi, 4 * m + 2 + slack_extra);
    } else if (C->shape == Shape::Plane) {
        Poly lc = C->plane_affine_z().back();
        if (lc.deg() >= 1)
            for (auto& [pi, m] : lc.factor().factors) bump(pi, m * (n + 1) + slack_extra);
    }
    Poly G = Poly::constant(F, 1);
    for (auto& [key, pk] : prim) G = G * pk.first.pow(pk.second);
    // x-degree bound
    int degDp = Dp.degree();
    int model_inf = 0;
    if (C->shape == Shape::Tower) {
        for (auto& fi : C->tower_fs) model_inf += std::max(0, -fi.val_at_infinity()) + 1;
        model_inf *= n;
    } else if (C->shape == Shape::Hyperelliptic)
        model_inf = C->F->p == 2
                        ? std::max(2 * C->hyp_h.deg(), C->hyp_f.deg()) + 2
                        : C->hyp_FF().deg() + 2;
    else
        model_inf = C->plane_form.degree() * C->plane_form.degree();
    int A = degDp + G.deg() + 2 * C->curve_genus() + model_inf + 2 + extra;
    Ambient amb;
    amb.G = G;
    if (C->shape == Shape::Plane) {
        // shared denominator: G homogenized in (x, z) times a power of z
        int D = G.deg() + A + n;
        poly::TriForm DEN(F, D);
        for (int i = 0; i <= G.deg(); ++i)
            if (G.coeff(i)) DEN.set_coeff(i, 0, G.coeff(i)); // x^i z^(D-i)
        for (int e = 0; e < n; ++e) {
            for (int a = 0; a <= A; ++a) {
                poly::TriForm NUM(F, D);
                NUM.set_coeff(a, e, 1); // x^a y^e z^(D-a-e)
                amb.funs.push_back(C->fun_plane(NUM, DEN));
                amb.shape.push_back({a, e});
            }
        }
        return amb;
    }
    CurveFunction invG = C->fun_ratfun(RatFun(Poly::constant(F, 1), G));
    // monomial basis B_e
    std::vector<CurveFunction> Bs;
    if (C->shape == Shape::Hyperelliptic) {
        Bs = {C->fun_constant(1), C->fun_y()};
    } else {
        int r = C->as_rank();
        int total = n;
        for (int code = 0; code < total; ++code) {
            CurveFunction m = C->fun_constant(1);
            int cc = code;
            for (int i = 0; i < r; ++i) {
                int ci = cc % F->p;
                cc /= F->p;
                for (int t = 0; t < ci; ++t) m = m * C->fun_y(i);
            }
            Bs.push_back(m);
        }
    }
    CurveFunction x = C->fun_x();
    for (size_t e = 0; e < Bs.size(); ++e) {
        CurveFunction cur = Bs[e] * invG;
        for (int a = 0; a <= A; ++a) {
            amb.funs.push_back(cur);
            amb.shape.push_back({a, int(e)});
            cur = cur * x;
        }
    }
    return amb;
}

// expand a curve function at a completion (shared with curves.cpp logic)
Elem expand_at(const Completion& comp, const CurveFunction& f) {
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

struct RRSpace {
    int dim = 0;
    std::vector<CurveFunction> basis;
};

RRSpace rr_space_attempt(const CurvePtr& C, const Divisor& D, int extra, int window) {
    const FieldPtr& F = C->F;
    Ambient amb = build_ambient(C, D, extra);
    // condition places: supp(D), places above G-primes, places above infinity
    std::set<const Place*> places;
    for (auto& [P, m] : D.terms()) places.insert(P);
    auto add_fiber = [&](const std::optional<Poly>& pi) {
        if (C->shape == Shape::Plane)
            for (auto* P : CurveInternal::plane_places_over(*C, pi)) places.insert(P);
        else
            for (auto* P : CurveInternal::places_above_prime(*C, pi)) places.insert(P);
    };
    for (auto& [pi, m] : amb.G.factor().factors) add_fiber(pi);
    add_fiber(std::nullopt);
    // rows
    std::vector<std::vector<elt>> rows;
    int ncols = int(amb.funs.size());
    for (const Place* P : places) {
        int threshold = -D.mult_of(P); // require v_P(f) >= -D(P)
        auto comp = P->completion(window);
        auto coords = get_coords(F, P->resfield ? P->resfield : F);
        int tw = comp->alg.t_weight();
        int p = F->p;
        size_t ncomp = comp->alg.zero().comp.size();
        // expansions: ambient functions are monomials x^a B_e / G, so build
        // power tables once per place and multiply
        std::vector<Elem> exps(ncols);
        {
            const auto& alg = comp->alg;
            int maxa = 0, maxe = 0;
            for (auto& [a, e] : amb.shape) {
                maxa = std::max(maxa, a);
                maxe = std::max(maxe, e);
            }
            if (C->shape == Shape::Plane) {
                // x^a y^e z^(D-a-e) / DEN with a shared denominator form
                int D = amb.funs[0].pnum.degree();
                std::vector<Elem> xp{alg.one(0)}, yp{alg.one(0)}, zp{alg.one(0)};
                for (int i = 1; i <= D; ++i) {
                    xp.push_back(alg.mul(xp.back(), comp->proj[0]));
                    yp.push_back(alg.mul(yp.back(), comp->proj[1]));
                    zp.push_back(alg.mul(zp.back(), comp->proj[2]));
                }
                Elem den = [&] {
                    // DEN = sum G_i x^i z^(D-i)
                    Elem acc = alg.zero();
                    for (int i = 0; i <= amb.G.deg(); ++i)
                        if (amb.G.coeff(i))
                            acc = alg.add(acc, alg.scaled(alg.mul(xp[i], zp[D - i]),
                                                          comp->base_emb->map(amb.G.coeff(i))));
                    return acc;
                }();
                Elem invden = alg.from_series(den.comp[0].inv().truncated(comp->window));
                for (int j = 0; j < ncols; ++j) {
                    auto [a, e] = amb.shape[j];
                    Elem t = alg.mul(alg.mul(xp[a], yp[e]), zp[D - a - e]);
                    exps[j] = alg.mul(t, invden);
                }
            } else {
                std::vector<Elem> xp{alg.one(0)};
                for (int i = 1; i <= maxa; ++i)
                    xp.push_back(alg.mul(xp.back(), comp->x));
                // basis monomials B_e
                int pch = F->p;
                std::vector<Elem> Be(maxe + 1, alg.one(0));
                for (int e = 0; e <= maxe; ++e) {
                    Elem t = alg.one(0);
                    int cc = e;
                    for (size_t i = 0; i < comp->w.size(); ++i) {
                        int ci = cc % pch;
                        cc /= pch;
                        for (int s2 = 0; s2 < ci; ++s2) t = alg.mul(t, comp->w[i]);
                    }
                    Be[e] = t;
                }
                Elem invG = comp->expand_ratfun(poly::RatFun(Poly::constant(F, 1), amb.G));
                for (int j = 0; j < ncols; ++j) {
                    auto [a, e] = amb.shape[j];
                    exps[j] = alg.mul(alg.mul(xp[a], Be[e]), invG);
                }
            }
        }
        // per-component slots
        for (size_t ci = 0; ci < ncomp; ++ci) {
            long long wshift = 0;
            size_t jj = ci;
            for (int l = 0; l < comp->alg.nlevels(); ++l) {
                wshift += (long long)(jj % p) * comp->alg.w_weight(l);
                jj /= p;
            }
            // t-exponent range: from min lo over expansions to the threshold
            int lo = INT_MAX, hi = INT_MIN;
            for (auto& e : exps) {
                const auto& s = e.comp[ci];
                if (s.exact_zero()) continue;
                lo = std::min(lo, s.lo());
                hi = std::max(hi, s.prec() == INT_MAX ? s.lo() + 64 : s.prec());
            }
            if (lo == INT_MAX) continue;
            for (int te = lo; te <= hi; ++te) {
                long long v = (long long)te * tw + wshift;
                if (v >= threshold) break;
                // row: coefficient of t^te in component ci must vanish
                std::vector<std::vector<elt>> coefrows;
                bool started = false;
                for (int j = 0; j < ncols; ++j) {
                    elt c;
                    const auto& s = exps[j].comp[ci];
                    c = s.coeff(te); // PrecisionError if not known
                    auto cc = coords->coords(c);
                    if (!started) {
                        coefrows.assign(cc.size(), std::vector<elt>(ncols, 0));
                        started = true;
                    }
                    for (size_t t = 0; t < cc.size(); ++t) coefrows[t][j] = cc[t];
                }
                for (auto& r : coefrows) rows.push_back(std::move(r));
            }
        }
    }
    auto ker = kernel_basis(F, std::move(rows), ncols);
    RRSpace out;
    out.dim = int(ker.size());
    for (auto& v : ker) {
        if (C->shape == Shape::Plane) {
            // assemble over the shared denominator
            poly::TriForm NUM(F, amb.funs[0].pnum.degree());
            for (int j = 0; j < ncols; ++j) {
                if (!v[j]) continue;
                NUM = NUM + amb.funs[j].pnum.scaled(v[j]);
            }
            out.basis.push_back(C->fun_plane(NUM, amb.funs[0].pden));
            continue;
        }
        CurveFunction f = C->fun_zero();
        bool first = true;
        for (int j = 0; j < ncols; ++j) {
            if (!v[j]) continue;
            CurveFunction t = amb.funs[j].scaled(v[j]);
            f = first ? t : f + t;
            first = false;
        }
        out.basis.push_back(f);
    }
    return out;
}

RRSpace rr_space(const CurvePtr& C, const Divisor& D) {
    if (D.degree() < 0) return {};
    int g = C->curve_genus();
    int expected = D.degree() - g + 1; // exact when deg >= 2g-1
    for (int attempt = 0; attempt < 3; ++attempt) {
        int extra = attempt * (2 * C->F->p + 2);
        for (int window = 64; window <= 4096; window *= 2) {
            try {
                RRSpace s = rr_space_attempt(C, D, extra, window);
                if (D.degree() >= 2 * g - 1 && s.dim != expected) break; // widen ambient
                return s;
            } catch (const PrecisionError&) {
                continue;
            }
        }
    }
    throw Error("jacobian", "rr_dim", "Riemann-Roch space did not certify (ambient bounds)");
}

} // namespace

int rr_dim(const CurvePtr& C, const Divisor& D) { return rr_space(C, D).dim; }

std::vector<CurveFunction> rr_basis(const CurvePtr& C, const Divisor& D) {
    return rr_space(C, D).basis;
}

bool is_principal(const CurvePtr& C, const Divisor& D) {
    if (D.degree() != 0) throw Error("jacobian", "is_principal", "divisor degree must be 0");
    if (D.empty()) return true;
    int d = rr_dim(C, D);
    if (d > 1) throw InternalError("degree-0 divisor with l(D) > 1");
    return d == 1;
}

CurveFunction function_with_divisor(const CurvePtr& C, const Divisor& D) {
    if (D.degree() != 0)
        throw Error("jacobian", "function_with_divisor", "divisor degree must be 0");
    if (D.empty()) return C->fun_constant(1);
    auto basis = rr_basis(C, Divisor() - D);
    if (basis.empty())
        throw Error("jacobian", "function_with_divisor", "divisor is not principal");
    CurveFunction f = basis.front();
    // deterministic normalization: first nonzero component gets lead ratio 1
    const FieldPtr& F = C->F;
    if (C->shape == Shape::Plane) {
        // scale so the first nonzero coefficient of pnum is 1
        for (int i = f.pnum.degree(); i >= 0; --i)
            for (int j = f.pnum.degree() - i; j >= 0; --j)
                if (f.pnum.coeff(i, j)) return f.scaled(F->inv(f.pnum.coeff(i, j)));
        return f;
    }
    for (auto& c : f.comps)
        if (!c.is_zero()) return f.scaled(F->inv(F->div(c.num().lead(), c.den().lead())));
    return f;
}

zeta::LPolynomial l_polynomial(const CurvePtr& C) {
    int g = C->curve_genus();
    if (g == 0) return zeta::LPolynomial(C->F->q, 0, {zeta::Int(1)});
    std::vector<std::int64_t> counts;
    for (int n = 1; n <= g; ++n) counts.push_back(C->count_points(n));
    return zeta::LPolynomial::from_counts(counts, C->F->q, g);
}

// --------------------------------------------------- class group engine

namespace {

struct JacEl {
    Divisor eff;       // class = eff - deg(eff) * base
    std::string key;   // canonical hash key ("" when not canonical)
    bool canonical = false;
};

std::string divisor_key(const Divisor& D) {
    std::string s;
    for (auto& [P, m] : D.terms()) {
        s += std::to_string(P->degree) + ":";
        for (auto u : P->sort_key) s += std::to_string(u) + ",";
        s += "=" + std::to_string(m) + ";";
    }
    return s;
}

struct Engine {
    CurvePtr C;
    const Place* base;
    bool use_mumford;
    int g;

    explicit Engine(CurvePtr curve, const Place* B)
        : C(std::move(curve)), base(B), g(C->curve_genus()) {
        use_mumford = mumford::applicable(C);
    }

    // mumford variant carries (u, v) in the key directly
    JacEl from_mumford(const mumford::Elt& m) const {
        JacEl e;
        e.canonical = true;
        e.key = "M|";
        for (auto c : m.u.coeffs()) e.key += std::to_string(c) + ",";
        e.key += "|";
        for (auto c : m.v.coeffs()) e.key += std::to_string(c) + ",";
        e.eff = Divisor();
        mum_store.push_back(m);
        e.key += "#" + std::to_string(mum_store.size() - 1);
        return e;
    }
    mutable std::vector<mumford::Elt> mum_store;

    mumford::Elt mum_of(const JacEl& e) const {
        auto pos = e.key.rfind('#');
        return mum_store[std::stoul(e.key.substr(pos + 1))];
    }
    std::string mum_key(const mumford::Elt& m) const {
        std::string key = "M|";
        for (auto c : m.u.coeffs()) key += std::to_string(c) + ",";
        key += "|";
        for (auto c : m.v.coeffs()) key += std::to_string(c) + ",";
        return key;
    }
    std::string key_of(const JacEl& e) const {
        if (!use_mumford) return e.key;
        auto pos = e.key.rfind('#');
        return e.key.substr(0, pos);
    }

    JacEl zero() const {
        if (use_mumford) return from_mumford(mumford::identity(C));
        return reduce(Divisor());
    }

    JacEl from_divisor(const Divisor& D) const {
        if (D.degree() != 0) throw InternalError("engine needs degree-0 divisors");
        if (use_mumford) {
            mumford::Elt acc = mumford::identity(C);
            for (auto& [P, m] : D.terms()) {
                mumford::Elt t = mumford::from_place(C, P);
                mumford::Elt tt = mumford::identity(C);
                int a = std::abs(m);
                for (int i = 0; i < a; ++i) tt = mumford::compose(C, tt, t);
                if (m < 0) tt = mumford::negate(C, tt);
                acc = mumford::compose(C, acc, tt);
            }
            return from_mumford(acc);
        }
        return reduce(D);
    }

    // candidate places for scan-based reductions (degree <= g), cached
    mutable std::vector<const Place*> scan_places_;
    mutable bool scan_ready_ = false;
    bool scan_usable() const {
        if (!scan_ready_) {
            std::size_t total = 0;
            for (int d = 1; d <= g && total <= 80; ++d) {
                auto v = C->places(d);
                total += v.size();
                for (auto* P : v) scan_places_.push_back(P);
            }
            if (total > 80) scan_places_.clear();
            scan_ready_ = true;
        }
        return !scan_places_.empty();
    }

    // reduced representative: eff effective of degree g with eff - g*base ~ D
    JacEl reduce(const Divisor& D) const {
        Divisor B;
        B.add(base, g);
        Divisor target = D + B; // degree g
        auto s = rr_space(C, target);
        if (s.dim < 1) throw InternalError("reduction space is empty");
        CurveFunction f = s.basis.front();
        Divisor E;
        if (scan_usable()) {
            // div(f) + target is effective of degree g, so every place in its
            // support has degree <= g: scan instead of computing div(f)
            std::set<const Place*> cands(scan_places_.begin(), scan_places_.end());
            for (auto& [P, m] : target.terms()) cands.insert(P);
            int total = 0;
            for (auto* P : cands) {
                int t = target.mult_of(P);
                auto ev = C->evaluate(f, P);
                int v;
                if (ev.is_pole)
                    v = -ev.pole_order;
                else if (ev.value == 0)
                    v = C->valuation(f, P);
                else
                    v = 0;
                int c = v + t;
                if (c < 0) throw InternalError("reduction function leaves L(target)");
                if (c > 0) {
                    E.add(P, c);
                    total += c * P->degree;
                    if (total == g) break;
                }
            }
            if (total != g) throw InternalError("scan reduction missed part of the divisor");
        } else {
            E = C->divisor_of(f) + target;
        }
        JacEl e;
        e.eff = E;
        e.canonical = (s.dim == 1);
        if (e.canonical) e.key = divisor_key(E);
        return e;
    }

    JacEl add(const JacEl& a, const JacEl& b) const {
        if (use_mumford) return from_mumford(mumford::compose(C, mum_of(a), mum_of(b)));
        Divisor B;
        B.add(base, g);
        return reduce(a.eff + b.eff - B - B);
    }

    JacEl neg(const JacEl& a) const {
        if (use_mumford) return from_mumford(mumford::negate(C, mum_of(a)));
        Divisor B;
        B.add(base, g);
        return reduce(B - a.eff); // -(eff - gB) = gB - eff
    }

    bool is_zero(const JacEl& a) const {
        if (use_mumford) return mum_of(a).u.is_one() || mum_of(a).u.deg() == 0;
        Divisor B;
        B.add(base, g);
        return is_principal(C, a.eff - B);
    }

    bool equal(const JacEl& a, const JacEl& b) const {
        if (use_mumford) return mum_of(a) == mum_of(b);
        if (a.canonical && b.canonical) return a.key == b.key;
        return is_principal(C, a.eff - b.eff);
    }

    JacEl scalar(const JacEl& a, std::int64_t n) const {
        JacEl r = zero();
        JacEl b = n < 0 ? neg(a) : a;
        std::int64_t m = std::llabs(n);
        while (m > 0) {
            if (m & 1) r = add(r, b);
            if (m > 1) b = add(b, b);
            m >>= 1;
        }
        return r;
    }
};

// small integer Smith normal form with right transform V (R: r x k)
namespace snf_detail {
void diagonalize(std::vector<std::vector<std::int64_t>>& R,
                 std::vector<std::vector<std::int64_t>>& V, int k) {
    int r = int(R.size());
    int n = std::min(r, k);
    for (int t = 0; t < n; ++t) {
        while (true) {
            int pi = -1, pj = -1;
            std::int64_t best = 0;
            for (int i = t; i < r; ++i)
                for (int j = t; j < k; ++j)
                    if (R[i][j] != 0 && (best == 0 || std::llabs(R[i][j]) < best)) {
                        best = std::llabs(R[i][j]);
                        pi = i;
                        pj = j;
                    }
            if (pi < 0) return;
            std::swap(R[pi], R[t]);
            for (int i = 0; i < r; ++i) std::swap(R[i][pj], R[i][t]);
            for (int i = 0; i < k; ++i) std::swap(V[i][pj], V[i][t]);
            bool clean = true;
            for (int i = t + 1; i < r; ++i) {
                std::int64_t q = R[i][t] / R[t][t];
                if (q)
                    for (int j = t; j < k; ++j) R[i][j] -= q * R[t][j];
                if (R[i][t]) clean = false;
            }
            for (int j = t + 1; j < k; ++j) {
                std::int64_t q = R[t][j] / R[t][t];
                if (q) {
                    for (int i = 0; i < r; ++i) R[i][j] -= q * R[i][t];
                    for (int i = 0; i < k; ++i) V[i][j] -= q * V[i][t];
                }
                if (R[t][j]) clean = false;
            }
            if (clean) break;
        }
    }
}
} // namespace snf_detail

void smith_normal_form(std::vector<std::vector<std::int64_t>>& R,
                       std::vector<std::vector<std::int64_t>>& V, int k) {
    int r = int(R.size());
    V.assign(k, std::vector<std::int64_t>(k, 0));
    for (int i = 0; i < k; ++i) V[i][i] = 1;
    int n = std::min(r, k);
    for (int guard = 0; guard < 256; ++guard) {
        snf_detail::diagonalize(R, V, k);
        // enforce the divisibility chain d_t | d_s for t < s
        bool fixed = true;
        for (int t = 0; t + 1 < n && fixed; ++t)
            for (int s = t + 1; s < n && fixed; ++s) {
                if (R[t][t] == 0 || R[s][s] == 0) continue;
                if (R[s][s] % R[t][t] == 0) continue;
                // add column s to column t and re-diagonalize
                for (int i = 0; i < r; ++i) R[i][t] += R[i][s];
                for (int i = 0; i < k; ++i) V[i][t] += V[i][s];
                fixed = false;
            }
        if (fixed) return;
    }
    throw InternalError("Smith normal form did not stabilize");
}

} // namespace

struct ClassGroupImpl {
    std::shared_ptr<Engine> engine;
    std::vector<Divisor> gen_divisors;                      // raw generators g_1..g_k
    std::vector<std::vector<std::int64_t>> V;               // SNF column transform
    std::vector<std::vector<std::int64_t>> Vinv;            // its inverse
    std::vector<std::int64_t> inv_factors_full;             // per column (1s included)
    std::unordered_map<std::string, std::vector<std::int64_t>> table; // key -> coords (raw gens)
    std::vector<std::pair<JacEl, std::vector<std::int64_t>>> odd_elements; // non-canonical
    std::int64_t order = 1;

    // find coordinates (in raw generators) of an element; -1 flag when absent
    bool lookup(const JacEl& e, std::vector<std::int64_t>& out) const {
        if (e.canonical || engine->use_mumford) {
            auto it = table.find(engine->key_of(e));
            if (it == table.end()) return false;
            out = it->second;
            return true;
        }
        for (auto& [el, co] : odd_elements)
            if (engine->equal(el, e)) {
                out = co;
                return true;
            }
        return false;
    }
};

namespace {

// modular inverse-free: solve y = Vinv * a over Z then reduce mod invariants
std::vector<std::int64_t> to_invariant_coords(const ClassGroupImpl& impl,
                                              const std::vector<std::int64_t>& raw,
                                              const std::vector<std::int64_t>& invariants) {
    // invariant coordinates are y = a * V (row vector times the column transform)
    int k = int(impl.V.size());
    std::vector<std::int64_t> y(k, 0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) y[i] += raw[j] * impl.V[j][i];
    // keep only the columns with invariant factor > 1, reduce mod d
    std::vector<std::int64_t> out;
    for (int i = 0; i < k; ++i) {
        std::int64_t d = impl.inv_factors_full[i];
        if (d <= 1) continue;
        std::int64_t v = ((y[i] % d) + d) % d;
        out.push_back(v);
    }
    return out;
}

} // namespace

namespace {
void verify_generator_orders(const ClassGroupStructure& out) {
    auto& engine = *out.impl->engine;
    for (size_t i = 0; i < out.invariants.size(); ++i) {
        JacEl gen = engine.from_divisor(out.generators[i]);
        std::int64_t d = out.invariants[i];
        if (!engine.is_zero(engine.scalar(gen, d)))
            throw InternalError("generator order does not kill the invariant factor");
        for (auto ell : ff::prime_factors(std::uint64_t(d)))
            if (engine.is_zero(engine.scalar(gen, d / std::int64_t(ell))))
                throw InternalError("generator order is a proper divisor of the invariant factor");
    }
}
} // namespace

ClassGroupStructure class_group_structure(const CurvePtr& C, std::int64_t order_bound) {
    auto L = l_polynomial(C);
    zeta::Int h_big = L.class_number();
    if (h_big > order_bound)
        throw Error("jacobian", "class_group_structure",
                    "class number " + h_big.str() + " exceeds the configured bound");
    std::int64_t h = std::int64_t(h_big);
    auto rats = C->places(1);
    if (rats.empty())
        throw Error("jacobian", "class_group_structure", "no rational point for a base");
    const Place* base = rats.front();
    auto engine = std::make_shared<Engine>(C, base);

    auto impl = std::make_shared<ClassGroupImpl>();
    impl->engine = engine;
    impl->order = 1;
    // BFS table starts with the identity
    {
        JacEl z = engine->zero();
        if (z.canonical || engine->use_mumford)
            impl->table[engine->key_of(z)] = {};
        else
            impl->odd_elements.push_back({z, {}});
    }
    std::vector<std::vector<std::int64_t>> relations; // rows over current gens

    auto subgroup_elements = [&]() {
        // rebuild the full table of <gens> by BFS
        impl->table.clear();
        impl->odd_elements.clear();
        int k = int(impl->gen_divisors.size());
        JacEl z = engine->zero();
        std::vector<std::pair<JacEl, std::vector<std::int64_t>>> frontier{
            {z, std::vector<std::int64_t>(k, 0)}};
        auto insert = [&](const JacEl& e, const std::vector<std::int64_t>& co) {
            std::vector<std::int64_t> dummy;
            if (impl->lookup(e, dummy)) return false;
            if (e.canonical || engine->use_mumford)
                impl->table[engine->key_of(e)] = co;
            else
                impl->odd_elements.push_back({e, co});
            return true;
        };
        insert(z, std::vector<std::int64_t>(k, 0));
        std::vector<JacEl> gens;
        for (auto& gd : impl->gen_divisors) gens.push_back(engine->from_divisor(gd));
        while (!frontier.empty()) {
            auto [e, co] = frontier.back();
            frontier.pop_back();
            for (int j = 0; j < k; ++j) {
                JacEl ne = engine->add(e, gens[j]);
                auto nco = co;
                nco[j] += 1;
                if (insert(ne, nco)) frontier.push_back({ne, nco});
            }
        }
        return std::int64_t(impl->table.size() + impl->odd_elements.size());
    };

    // candidate generators: classes of places of increasing degree
    std::int64_t cur_order = 1;
    for (int d = 1; d <= C->curve_genus() + 2 && cur_order < h; ++d) {
        for (auto* P : C->places(d)) {
            if (cur_order >= h) break;
            Divisor D;
            D.add(P, 1);
            D.add(base, -P->degree);
            JacEl el = engine->from_divisor(D);
            // find minimal s >= 1 with s*el in <gens> (table holds all of <gens>)
            JacEl cur = el;
            std::vector<std::int64_t> expr;
            std::int64_t s = 1;
            while (!impl->lookup(cur, expr)) {
                cur = engine->add(cur, el);
                ++s;
                if (s > h) throw InternalError("element order exceeds the class number");
            }
            if (s == 1) continue; // already in the subgroup
            // new generator with relation s*el = sum expr_j g_j
            impl->gen_divisors.push_back(D);
            for (auto& row : relations) row.push_back(0);
            std::vector<std::int64_t> row(impl->gen_divisors.size(), 0);
            for (size_t j = 0; j + 1 < impl->gen_divisors.size(); ++j) row[j] = -expr[j];
            row.back() = s;
            relations.push_back(row);
            cur_order = subgroup_elements();
        }
    }
    if (cur_order != h)
        throw Error("jacobian", "class_group_structure",
                    "generators of degree <= g+2 did not generate (order " +
                        std::to_string(cur_order) + " of " + std::to_string(h) + ")");

    // SNF of the relation matrix
    int k = int(impl->gen_divisors.size());
    ClassGroupStructure out;
    out.curve = C;
    out.base = base;
    out.impl = impl;
    out.order = h;
    if (k == 0) {
        out.invariants = {};
        return out;
    }
    auto R = relations;
    std::vector<std::vector<std::int64_t>> V;
    smith_normal_form(R, V, k);
    // invariant factors: diagonal entries
    impl->inv_factors_full.assign(k, 1);
    for (int i = 0; i < std::min<int>(int(R.size()), k); ++i)
        impl->inv_factors_full[i] = std::llabs(R[i][i]);
    for (int i = int(R.size()); i < k; ++i) impl->inv_factors_full[i] = 0; // free (impossible here)
    // V inverse over Z (k small): adjugate via gaussian elimination on rationals
    // use int64 fraction-free: since V unimodular, invert by Gauss-Jordan over Q
    {
        int n = k;
        std::vector<std::vector<double>> dummy; // not used
        (void)dummy;
        std::vector<std::vector<std::int64_t>> A(n, std::vector<std::int64_t>(2 * n, 0));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) A[i][j] = V[i][j];
            A[i][n + i] = 1;
        }
        // integer Gauss-Jordan works since V is unimodular: do fraction-free
        // elimination then divide by the determinant (+-1)
        // simple approach: solve V * X = I column by column with Bareiss
        std::vector<std::vector<std::int64_t>> X(n, std::vector<std::int64_t>(n, 0));
        for (int col = 0; col < n; ++col) {
            // Cramer via Bareiss determinant ratios (n <= ~8: fine)
            // build augmented and do rational-free elimination with pivoting on +-1s
            std::vector<std::vector<double>> M(n, std::vector<double>(n + 1, 0));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) M[i][j] = double(V[i][j]);
            for (int i = 0; i < n; ++i) M[i][n] = (i == col) ? 1.0 : 0.0;
            for (int c2 = 0, rw = 0; c2 < n && rw < n; ++c2) {
                int sel = -1;
                double bestv = 0;
                for (int i = rw; i < n; ++i)
                    if (std::abs(M[i][c2]) > bestv + 1e-12) {
                        bestv = std::abs(M[i][c2]);
                        sel = i;
                    }
                if (sel < 0) continue;
                std::swap(M[sel], M[rw]);
                double pv = M[rw][c2];
                for (int j = 0; j <= n; ++j) M[rw][j] /= pv;
                for (int i = 0; i < n; ++i) {
                    if (i == rw) continue;
                    double fmul = M[i][c2];
                    if (fmul == 0) continue;
                    for (int j = 0; j <= n; ++j) M[i][j] -= fmul * M[rw][j];
                }
                ++rw;
            }
            for (int i = 0; i < n; ++i) X[i][col] = std::llround(M[i][n]);
        }
        impl->Vinv = X;
        impl->V = V;
        // verify V * Vinv = I exactly
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                std::int64_t s2 = 0;
                for (int t = 0; t < n; ++t) s2 += V[i][t] * X[t][j];
                if (s2 != (i == j ? 1 : 0)) throw InternalError("V inverse verification failed");
            }
    }
    // invariants > 1, ascending with divisibility
    std::vector<std::pair<std::int64_t, int>> factors; // (d, column)
    for (int i = 0; i < k; ++i)
        if (impl->inv_factors_full[i] > 1) factors.push_back({impl->inv_factors_full[i], i});
    std::int64_t prod = 1;
    for (auto& [d, col] : factors) prod *= d;
    if (prod != h) throw InternalError("invariant factors do not multiply to the class number");
    // divisibility chain
    for (size_t i = 0; i + 1 < factors.size(); ++i)
        if (factors[i + 1].first % factors[i].first != 0)
            throw InternalError("invariant factors do not form a divisibility chain");
    for (auto& [d, col] : factors) {
        out.invariants.push_back(d);
        // generator with invariant coordinates e_col: old coordinates are row
        // col of V^{-1}
        Divisor G;
        for (int j = 0; j < k; ++j) {
            if (!impl->Vinv[col][j]) continue;
            G = G + impl->gen_divisors[j].scaled(int(impl->Vinv[col][j]));
        }
        out.generators.push_back(G);
    }
    verify_generator_orders(out);
    return out;
}

std::vector<std::int64_t> ClassGroupStructure::coordinates_of(const Divisor& D) const {
    if (D.degree() != 0)
        throw Error("jacobian", "coordinates", "divisor degree must be 0");
    auto& engine = *impl->engine;
    JacEl e = engine.from_divisor(D);
    std::vector<std::int64_t> raw;
    if (!impl->lookup(e, raw)) throw InternalError("class not found in the discrete-log table");
    return to_invariant_coords(*impl, raw, invariants);
}

std::vector<std::int64_t> abel_jacobi(const ClassGroupStructure& G, const Place* Q) {
    Divisor D;
    D.add(Q, 1);
    D.add(G.base, -Q->degree);
    return G.coordinates_of(D);
}

std::string ClassGroupStructure::to_string() const {
    if (invariants.empty()) return "(0)";
    std::string s;
    for (size_t i = 0; i < invariants.size(); ++i) {
        if (i) s += " x ";
        s += "Z/" + std::to_string(invariants[i]);
    }
    return s;
}

} // namespace hunt::jacobian
