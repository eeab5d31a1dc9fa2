// Cantor-style divisor class arithmetic in Mumford form for y^2 + h y = f.

#include "hunt/jacobian.hpp"

#include "hunt/internal.hpp"

namespace hunt::jacobian::mumford {

using curves::CurveModel;
using curves::Shape;
using poly::Poly;
using poly::RatFun;
using ff::elt;
using ff::FieldPtr;

namespace {

struct Model {
    Poly h, f;
    int g;
};

// (h, f) for the Mumford model; towers w^2 + w = u/v become Y^2 + vY = uv
Model model_of(const CurvePtr& C) {
    Model m;
    m.g = C->curve_genus();
    if (C->shape == Shape::Hyperelliptic) {
        m.h = C->hyp_h;
        m.f = C->hyp_f;
    } else if (C->shape == Shape::Tower && C->as_rank() == 1 && C->F->p == 2) {
        const RatFun& fr = C->tower_fs[0];
        m.h = fr.den();
        m.f = fr.num() * fr.den();
    } else {
        throw InternalError("no Mumford model for this shape");
    }
    return m;
}

// the model coordinate Y as a curve function
curves::CurveFunction model_y(const CurvePtr& C) {
    if (C->shape == Shape::Hyperelliptic) return C->fun_y();
    return C->fun_ratfun(RatFun(C->tower_fs[0].den())) * C->fun_y(0);
}

// polynomial of degree < d with rho(xi) = value (coefficients in F_q)
Poly poly_rep(const CurvePtr& C, const curves::Place* P, elt value) {
    const FieldPtr& F = C->F;
    const FieldPtr& K = P->resfield;
    int d = P->degree;
    if (d == 1) return Poly::constant(F, value);
    auto emb = ff::get_embedding(F, K);
    const Poly& pi = P->seed.pi;
    auto roots = pi.roots_in(*emb);
    elt xi = roots.front();
    // solve sum rho_i xi^i = value over F_q in the digit space of K
    int p = F->p, n = K->k, k = F->k;
    std::vector<int> M(n * (d * k));
    elt xp = 1;
    int col = 0;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < k; ++j, ++col) {
            std::vector<int> digs(k, 0);
            digs[j] = 1;
            elt b = F->from_coeffs(digs);
            elt v = K->mul(emb->map(b), xp);
            auto co = K->coeffs(v);
            for (int r = 0; r < n; ++r) M[r * (d * k) + col] = co[r];
        }
        xp = K->mul(xp, xi);
    }
    std::vector<int> rhs = K->coeffs(value);
    int ncols = d * k;
    std::vector<int> piv(ncols, -1);
    int row = 0;
    for (int c2 = 0; c2 < ncols && row < n; ++c2) {
        int sel = -1;
        for (int i = row; i < n; ++i)
            if (M[i * ncols + c2]) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        for (int j = 0; j < ncols; ++j) std::swap(M[sel * ncols + j], M[row * ncols + j]);
        std::swap(rhs[sel], rhs[row]);
        int pv = M[row * ncols + c2], pinv = 1;
        for (int i = 1; i < p; ++i)
            if (pv * i % p == 1) pinv = i;
        for (int j = 0; j < ncols; ++j) M[row * ncols + j] = M[row * ncols + j] * pinv % p;
        rhs[row] = rhs[row] * pinv % p;
        for (int i = 0; i < n; ++i) {
            if (i == row) continue;
            int fm = M[i * ncols + c2];
            if (!fm) continue;
            for (int j = 0; j < ncols; ++j)
                M[i * ncols + j] = ((M[i * ncols + j] - fm * M[row * ncols + j]) % p + p) % p;
            rhs[i] = ((rhs[i] - fm * rhs[row]) % p + p) % p;
        }
        piv[c2] = row;
        ++row;
    }
    std::vector<elt> rho(d, 0);
    for (int i = 0; i < d; ++i) {
        std::vector<int> digs(k, 0);
        for (int j = 0; j < k; ++j)
            if (piv[i * k + j] >= 0) digs[j] = rhs[piv[i * k + j]];
        rho[i] = F->from_coeffs(digs);
    }
    Poly out(F, rho);
    // verify
    if (out.eval_ext(xi, *emb) != value) throw InternalError("poly_rep failed");
    return out;
}

Elt reduce(const Model& m, Elt e) {
    const FieldPtr& F = m.h.field() ? m.h.field() : m.f.field();
    int guard = 0;
    while (e.u.deg() > m.g) {
        if (++guard > 256) throw InternalError("Cantor reduction did not terminate");
        Poly num = m.f - e.v * m.h - e.v * e.v;
        auto [q, r] = num.divmod(e.u);
        if (!r.is_zero()) throw InternalError("Mumford invariant broken (u | f - vh - v^2)");
        Poly u2 = q.monic();
        Poly v2 = (-m.h - e.v) % u2;
        e.u = u2;
        e.v = v2;
    }
    e.u = e.u.monic();
    if (e.u.deg() == 0) e.v = Poly(F);
    return e;
}

} // namespace

bool applicable(const CurvePtr& C) {
    if (!(C->shape == Shape::Hyperelliptic ||
          (C->shape == Shape::Tower && C->as_rank() == 1 && C->F->p == 2)))
        return false;
    Model m;
    try {
        m = model_of(C);
    } catch (...) {
        return false;
    }
    if (m.f.deg() != 2 * m.g + 1) return false;
    if (m.h.deg() > m.g) return false;
    // unique rational place at infinity
    try {
        auto* P = C->infinite_place();
        if (P->degree != 1) return false;
    } catch (...) {
        return false;
    }
    return true;
}

Elt identity(const CurvePtr& C) {
    Elt e;
    e.u = Poly::constant(C->F, 1);
    e.v = Poly(C->F);
    return e;
}

Elt negate(const CurvePtr& C, const Elt& a) {
    Model m = model_of(C);
    Elt e;
    e.u = a.u;
    e.v = (-m.h - a.v) % a.u;
    if (a.u.deg() == 0) e.v = Poly(C->F);
    return e;
}

Elt compose(const CurvePtr& C, const Elt& a, const Elt& b) {
    Model m = model_of(C);
    const FieldPtr& F = C->F;
    // d0 = gcd(u1, u2) = e1 u1 + e2 u2
    Poly e1(F), e2(F);
    Poly d0 = poly::xgcd(a.u, b.u, e1, e2);
    // d = gcd(d0, v1 + v2 + h) = c1 d0 + c2 (v1 + v2 + h)
    Poly c1(F), c2(F);
    Poly d = poly::xgcd(d0, a.v + b.v + m.h, c1, c2);
    Poly s1 = c1 * e1, s2 = c1 * e2, s3 = c2;
    Poly u3 = (a.u * b.u) / (d * d);
    Poly num = s1 * a.u * b.v + s2 * b.u * a.v + s3 * (a.v * b.v + m.f);
    auto [q, r] = num.divmod(d);
    if (!r.is_zero()) throw InternalError("Cantor composition: division by d failed");
    Poly v3 = q % u3;
    Elt e;
    e.u = u3.monic();
    e.v = v3;
    // ensure the Mumford invariant (debug-grade check, cheap at these sizes)
    {
        Poly chk = (e.v * e.v + e.v * m.h - m.f) % e.u;
        if (!chk.is_zero()) throw InternalError("Cantor composition invariant failed");
    }
    return reduce(m, e);
}

Elt from_place(const CurvePtr& C, const curves::Place* P) {
    Model m = model_of(C);
    const FieldPtr& F = C->F;
    if (P->at_infinity) return identity(C);
    // inert places are full fibers: principal
    int d0 = P->seed.pi.deg();
    if (P->degree == 2 * d0 && P->ram_over_x == 1) {
        // check it is genuinely inert (degree doubled without ramification)
        return identity(C);
    }
    auto ev = C->evaluate(model_y(C), P);
    if (ev.is_pole) throw InternalError("model y has a pole at a finite place");
    Poly v = poly_rep(C, P, ev.value);
    Elt e;
    e.u = P->seed.pi;
    e.v = v;
    Poly chk = (e.v * e.v + e.v * m.h - m.f) % e.u;
    if (!chk.is_zero()) throw InternalError("place does not satisfy the Mumford invariant");
    return reduce(m, e);
}

} // namespace hunt::jacobian::mumford
