#include "hunt/series.hpp"

#include <algorithm>
#include <climits>

namespace hunt::series {

// ------------------------------------------------------------------ LSeries

LSeries LSeries::zero(FieldPtr F) {
    LSeries s;
    s.F_ = std::move(F);
    s.exact_ = true;
    return s;
}

LSeries LSeries::constant(FieldPtr F, elt c, int prec) {
    return monomial(std::move(F), c, 0, prec);
}

LSeries LSeries::monomial(FieldPtr F, elt c, int exp, int prec) {
    if (c == 0) return zero(std::move(F));
    LSeries s;
    s.F_ = std::move(F);
    s.lo_ = exp;
    s.c_ = {c};
    s.exact_ = true;
    (void)prec;
    return s;
}

LSeries LSeries::from_coeffs(FieldPtr F, int lo, std::vector<elt> c) {
    LSeries s;
    s.F_ = std::move(F);
    s.lo_ = lo;
    s.c_ = std::move(c);
    s.exact_ = true; // interpreted as an exact (Laurent) polynomial
    s.trim();
    return s;
}

void LSeries::trim() {
    // drop leading zeros (shift lo up); keep semantics
    size_t i = 0;
    while (i < c_.size() && c_[i] == 0) ++i;
    if (i > 0) {
        c_.erase(c_.begin(), c_.begin() + i);
        lo_ += int(i);
    }
    if (exact_) {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
}

int LSeries::prec() const { return exact_ ? INT_MAX : lo_ + int(c_.size()); }

elt LSeries::coeff(int e) const {
    if (e < lo_) return 0;
    if (e < lo_ + int(c_.size())) return c_[e - lo_];
    if (exact_) return 0;
    throw PrecisionError();
}

std::optional<int> LSeries::val() const {
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i]) return lo_ + int(i);
    if (exact_) return INT_MAX; // exact zero
    return std::nullopt;
}

int LSeries::val_or_throw() const {
    auto v = val();
    if (!v) throw PrecisionError();
    return *v;
}

LSeries LSeries::operator+(const LSeries& o) const {
    if (exact_zero()) return o;
    if (o.exact_zero()) return *this;
    LSeries r;
    r.F_ = F_;
    int lo = std::min(lo_, o.lo_);
    long long pr = std::min<long long>(prec(), o.prec());
    r.exact_ = pr == INT_MAX;
    if (pr == INT_MAX) pr = std::max<long long>(lo_ + c_.size(), o.lo_ + o.c_.size());
    r.lo_ = lo;
    r.c_.assign(size_t(pr - lo), 0);
    for (long long e = lo; e < pr; ++e) r.c_[size_t(e - lo)] = F_->add(coeff(int(e)), o.coeff(int(e)));
    r.trim();
    return r;
}

LSeries LSeries::operator-() const {
    LSeries r = *this;
    for (auto& x : r.c_) x = F_->neg(x);
    return r;
}

LSeries LSeries::operator-(const LSeries& o) const { return *this + (-o); }

LSeries LSeries::operator*(const LSeries& o) const {
    if (exact_zero() || o.exact_zero()) return zero(F_ ? F_ : o.F_);
    LSeries r;
    r.F_ = F_;
    r.lo_ = lo_ + o.lo_;
    long long p1 = exact_ ? LLONG_MAX : (long long)prec() + o.lo_;
    long long p2 = o.exact_ ? LLONG_MAX : (long long)o.prec() + lo_;
    long long pr = std::min(p1, p2);
    r.exact_ = pr == LLONG_MAX;
    if (r.exact_) pr = (long long)lo_ + (long long)c_.size() + o.lo_ + (long long)o.c_.size() - 1;
    int len = int(pr - r.lo_);
    if (len <= 0) {
        // nothing known beyond; represent as unknown-from-lo
        r.c_.clear();
        r.exact_ = false;
        r.lo_ = int(pr);
        return r;
    }
    r.c_.assign(len, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) {
            if (!o.c_[j]) continue;
            size_t k = i + j;
            if (k >= size_t(len)) break;
            r.c_[k] = F_->add(r.c_[k], F_->mul(c_[i], o.c_[j]));
        }
    }
    r.trim();
    return r;
}

LSeries LSeries::scaled(elt s) const {
    if (s == 0) return zero(F_);
    LSeries r = *this;
    for (auto& x : r.c_) x = F_->mul(x, s);
    return r;
}

LSeries LSeries::shifted(int n) const {
    LSeries r = *this;
    r.lo_ += n;
    return r;
}

LSeries LSeries::inv() const {
    if (exact_zero()) throw Error("series", "inverse", "division by zero series");
    if (exact_ && c_.size() == 1) return monomial(F_, F_->inv(c_[0]), -lo_, 0);
    int v = val_or_throw();
    int len = exact_ ? int(c_.size()) : prec() - v;
    if (len <= 0) throw PrecisionError();
    // normalized unit part a_0 + a_1 t + ... (a_i = coeff(v+i))
    std::vector<elt> a(len), b(len, 0);
    for (int i = 0; i < len; ++i) a[i] = coeff(v + i);
    elt inv0 = F_->inv(a[0]);
    b[0] = inv0;
    for (int n = 1; n < len; ++n) {
        elt acc = 0;
        for (int i = 1; i <= n; ++i)
            if (a[i] && b[n - i]) acc = F_->add(acc, F_->mul(a[i], b[n - i]));
        b[n] = F_->neg(F_->mul(acc, inv0));
    }
    LSeries r;
    r.F_ = F_;
    r.lo_ = -v;
    r.c_ = std::move(b);
    r.exact_ = false;
    r.trim();
    return r;
}

LSeries LSeries::pth_power() const {
    if (exact_zero()) return *this;
    int p = F_->p;
    LSeries r;
    r.F_ = F_;
    r.lo_ = lo_ * p;
    r.exact_ = exact_;
    int n = int(c_.size());
    if (n == 0) { // empty known window: only the starting exponent scales
        r.exact_ = false;
        return r;
    }
    r.c_.assign(exact_ ? (n - 1) * p + 1 : (prec() - 1 - lo_) * p + 1, 0);
    for (int i = 0; i < n; ++i)
        if (c_[i]) r.c_[i * p] = F_->pow(c_[i], p);
    r.trim();
    return r;
}

LSeries LSeries::pow(int n) const {
    LSeries r = constant(F_, 1, 0);
    LSeries b = *this;
    while (n > 0) {
        if (n & 1) r = r * b;
        if (n > 1) b = b * b;
        n >>= 1;
    }
    return r;
}

LSeries LSeries::truncated(int new_prec) const {
    if (exact_zero()) return *this;
    if (!exact_ && new_prec >= prec()) return *this;
    LSeries r;
    r.F_ = F_;
    r.lo_ = lo_;
    r.exact_ = false;
    int len = std::max(0, new_prec - lo_);
    r.c_.assign(len, 0);
    for (int i = 0; i < len && i < int(c_.size()); ++i) r.c_[i] = c_[i];
    r.trim();
    return r;
}

LSeries LSeries::padded(int prec) const {
    LSeries r;
    r.F_ = F_;
    r.lo_ = std::min(lo_, prec);
    r.exact_ = false;
    int len = std::max(0, prec - r.lo_);
    r.c_.assign(len, 0);
    for (int i = 0; i < len; ++i) {
        int e = r.lo_ + i;
        if (e >= lo_ && e < lo_ + int(c_.size())) r.c_[i] = c_[e - lo_];
    }
    return r;
}

LSeries LSeries::artin_schreier_solve(int target_prec) const {
    if (exact_zero()) return *this;
    int v = val_or_throw();
    if (v < 1) throw Error("series", "as_solve", "valuation must be positive");
    int target = target_prec > 0 ? target_prec : (exact_ ? (lo_ + int(c_.size())) * F_->p : prec());
    LSeries u = truncated(target);
    LSeries s = zero(F_);
    LSeries term = u;
    while (true) {
        auto tv = term.val();
        int bound = tv ? (*tv == INT_MAX ? INT_MAX : *tv) : term.prec();
        if (bound >= target) break;
        s = s + term;
        term = term.pth_power().truncated(target);
    }
    return -s;
}

LSeries LSeries::sqrt() const {
    if (F_->p == 2) throw InternalError("sqrt in characteristic 2");
    if (exact_zero()) return *this;
    int v = val_or_throw();
    if (v % 2 != 0) throw Error("series", "sqrt", "odd valuation has no square root");
    int len = exact_ ? int(c_.size()) : prec() - v;
    std::vector<elt> a(len);
    for (int i = 0; i < len; ++i) a[i] = coeff(v + i);
    elt r0;
    if (!F_->sqrt(a[0], r0)) throw Error("series", "sqrt", "leading coefficient is a non-residue");
    if (r0 == 0) throw InternalError("sqrt leading zero");
    std::vector<elt> b(len, 0);
    b[0] = r0;
    elt inv2r0 = F_->inv(F_->add(r0, r0));
    for (int n = 1; n < len; ++n) {
        elt acc = a[n];
        for (int i = 1; i < n; ++i)
            if (b[i] && b[n - i]) acc = F_->sub(acc, F_->mul(b[i], b[n - i]));
        b[n] = F_->mul(acc, inv2r0);
    }
    LSeries r;
    r.F_ = F_;
    r.lo_ = v / 2;
    r.c_ = std::move(b);
    r.exact_ = false;
    r.trim();
    return r;
}

LSeries LSeries::mapped(const ff::Embedding& emb) const {
    LSeries r;
    r.F_ = emb.dst();
    r.lo_ = lo_;
    r.exact_ = exact_;
    r.c_.resize(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = emb.map(c_[i]);
    return r;
}

std::string LSeries::to_string(const std::string& var) const {
    if (exact_zero()) return "0";
    std::string s;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        if (!s.empty()) s += " + ";
        int e = lo_ + int(i);
        s += F_->to_string(c_[i]);
        if (e != 0) s += "*" + var + "^" + std::to_string(e);
    }
    if (s.empty()) s = "0";
    if (!exact_) s += " + O(" + var + "^" + std::to_string(prec()) + ")";
    return s;
}

// -------------------------------------------------------------- LocalAlgebra

bool LocalAlgebra::Elem::exact_zero() const {
    for (auto& s : comp)
        if (!s.exact_zero()) return false;
    return true;
}

int LocalAlgebra::t_weight() const {
    int w = 1;
    for (size_t i = 0; i < levels_.size(); ++i) w *= k_->p;
    return w;
}

int LocalAlgebra::w_weight(int l) const {
    int w = -levels_[l].m;
    for (size_t i = l + 1; i < levels_.size(); ++i) w *= k_->p;
    return w;
}

LocalAlgebra::Elem LocalAlgebra::zero() const {
    Elem e;
    int n = 1;
    for (size_t i = 0; i < levels_.size(); ++i) n *= k_->p;
    e.comp.assign(n, LSeries::zero(k_));
    return e;
}

LocalAlgebra::Elem LocalAlgebra::one(int) const { return constant(1, 0); }

LocalAlgebra::Elem LocalAlgebra::from_series(LSeries s) const {
    Elem e = zero();
    e.comp[0] = std::move(s);
    return e;
}

LocalAlgebra::Elem LocalAlgebra::constant(elt c, int prec) const {
    return from_series(LSeries::constant(k_, c, prec));
}

LocalAlgebra::Elem LocalAlgebra::generator(int l, int prec) const {
    Elem e = zero();
    int idx = 1;
    for (int i = 0; i < l; ++i) idx *= k_->p;
    e.comp[idx] = LSeries::constant(k_, 1, prec);
    return e;
}

LocalAlgebra::Elem LocalAlgebra::monomial(elt c, int t_exp, const std::vector<int>& w_exp,
                                          int prec) const {
    Elem e = zero();
    int idx = 0, stride = 1;
    for (size_t l = 0; l < levels_.size(); ++l) {
        idx += w_exp[l] * stride;
        stride *= k_->p;
    }
    e.comp[idx] = LSeries::monomial(k_, c, t_exp, prec);
    return e;
}

LocalAlgebra::Elem LocalAlgebra::add(const Elem& a, const Elem& b) const {
    Elem r;
    r.comp.resize(a.comp.size());
    for (size_t i = 0; i < a.comp.size(); ++i) r.comp[i] = a.comp[i] + b.comp[i];
    return r;
}

LocalAlgebra::Elem LocalAlgebra::sub(const Elem& a, const Elem& b) const {
    return add(a, neg(b));
}

LocalAlgebra::Elem LocalAlgebra::neg(const Elem& a) const {
    Elem r;
    r.comp.resize(a.comp.size());
    for (size_t i = 0; i < a.comp.size(); ++i) r.comp[i] = -a.comp[i];
    return r;
}

LocalAlgebra::Elem LocalAlgebra::scaled(const Elem& a, elt s) const {
    Elem r;
    r.comp.resize(a.comp.size());
    for (size_t i = 0; i < a.comp.size(); ++i) r.comp[i] = a.comp[i].scaled(s);
    return r;
}

// multiply within the algebra restricted to the first `lvl` levels
LocalAlgebra::Elem LocalAlgebra::mul_level(const Elem& a, const Elem& b, int lvl) const {
    if (lvl == 0) {
        Elem r;
        r.comp = {a.comp[0] * b.comp[0]};
        return r;
    }
    int p = k_->p;
    int stride = 1;
    for (int i = 0; i < lvl - 1; ++i) stride *= p;
    auto slice = [&](const Elem& x, int d) {
        Elem s;
        s.comp.assign(x.comp.begin() + d * stride, x.comp.begin() + (d + 1) * stride);
        return s;
    };
    // polynomial product in w_{lvl-1} of degree <= 2p-2
    std::vector<Elem> conv(2 * p - 1);
    for (auto& c : conv) {
        c.comp.assign(stride, LSeries::zero(k_));
    }
    for (int i = 0; i < p; ++i) {
        Elem ai = slice(a, i);
        if (ai.exact_zero()) continue;
        for (int j = 0; j < p; ++j) {
            Elem bj = slice(b, j);
            if (bj.exact_zero()) continue;
            Elem t = mul_level(ai, bj, lvl - 1);
            for (int u = 0; u < stride; ++u) conv[i + j].comp[u] = conv[i + j].comp[u] + t.comp[u];
        }
    }
    // reduce w^e for e >= p using w^p = w + R  (R = levels_[lvl-1].R, an element
    // of the algebra with lvl-1 levels)
    const Elem& R = levels_[lvl - 1].R;
    for (int e = 2 * p - 2; e >= p; --e) {
        Elem ce = conv[e];
        if (ce.exact_zero()) continue;
        // w^e = w^(e-p) * (w + R):  add ce to conv[e-p+1] and ce*R to conv[e-p]
        for (int u = 0; u < stride; ++u) conv[e - p + 1].comp[u] = conv[e - p + 1].comp[u] + ce.comp[u];
        Elem ceR = mul_level(ce, R, lvl - 1);
        for (int u = 0; u < stride; ++u) conv[e - p].comp[u] = conv[e - p].comp[u] + ceR.comp[u];
        conv[e].comp.assign(stride, LSeries::zero(k_));
    }
    Elem r;
    r.comp.assign(stride * p, LSeries::zero(k_));
    for (int d = 0; d < p; ++d)
        for (int u = 0; u < stride; ++u) r.comp[d * stride + u] = conv[d].comp[u];
    return r;
}

LocalAlgebra::Elem LocalAlgebra::mul(const Elem& a, const Elem& b) const {
    return mul_level(a, b, int(levels_.size()));
}

LocalAlgebra::Elem LocalAlgebra::pth_power(const Elem& a) const {
    Elem r = a;
    for (int i = 1; i < k_->p; ++i) r = mul(r, a);
    return r;
}

LocalAlgebra::Elem LocalAlgebra::artin_schreier_solve(const Elem& u) const {
    int v = val_or_throw(u);
    if (v == INT_MAX) return u;
    if (v < 1) throw Error("series", "as_solve", "valuation must be positive");
    int tw = t_weight();
    int p = k_->p;
    long long horizon = LLONG_MAX;
    for (size_t j = 0; j < u.comp.size(); ++j) {
        long long wshift = 0;
        size_t jj = j;
        for (size_t l = 0; l < levels_.size(); ++l) {
            wshift += (long long)(jj % p) * w_weight(int(l));
            jj /= p;
        }
        if (u.comp[j].prec() != INT_MAX)
            horizon = std::min(horizon, (long long)u.comp[j].prec() * tw + wshift);
    }
    if (horizon == LLONG_MAX) horizon = (long long)v * 64;
    Elem s = zero();
    Elem term = u;
    int guard = 0;
    while (true) {
        if (++guard > 64) throw InternalError("as_solve did not converge");
        auto tv = val(term);
        long long bound = tv ? (*tv == INT_MAX ? LLONG_MAX : *tv) : horizon;
        if (bound >= horizon) break;
        s = add(s, term);
        term = pth_power(term);
    }
    return neg(s);
}

LocalAlgebra::Elem LocalAlgebra::pow(const Elem& a, int n) const {
    Elem r = one(0);
    Elem b = a;
    while (n > 0) {
        if (n & 1) r = mul(r, b);
        if (n > 1) b = mul(b, b);
        n >>= 1;
    }
    return r;
}

std::optional<int> LocalAlgebra::val(const Elem& a) const {
    int tw = t_weight();
    int p = k_->p;
    long long best = LLONG_MAX;
    bool undetermined = false;
    long long undet_bound = LLONG_MAX;
    for (size_t j = 0; j < a.comp.size(); ++j) {
        long long wshift = 0;
        size_t jj = j;
        for (size_t l = 0; l < levels_.size(); ++l) {
            wshift += (long long)(jj % p) * w_weight(int(l));
            jj /= p;
        }
        auto v = a.comp[j].val();
        if (v) {
            if (*v == INT_MAX) continue; // exact zero component
            best = std::min(best, (long long)*v * tw + wshift);
        } else {
            undetermined = true;
            undet_bound = std::min(undet_bound, (long long)a.comp[j].prec() * tw + wshift);
        }
    }
    if (undetermined && undet_bound <= best) return std::nullopt;
    if (best == LLONG_MAX) return INT_MAX; // exact zero
    return int(best);
}

int LocalAlgebra::val_or_throw(const Elem& a) const {
    auto v = val(a);
    if (!v) throw PrecisionError();
    return *v;
}

LocalAlgebra::Lead LocalAlgebra::lead(const Elem& a) const {
    int v = val_or_throw(a);
    if (v == INT_MAX) throw InternalError("lead of zero element");
    int tw = t_weight();
    int p = k_->p;
    for (size_t j = 0; j < a.comp.size(); ++j) {
        long long wshift = 0;
        std::vector<int> wexp(levels_.size(), 0);
        size_t jj = j;
        for (size_t l = 0; l < levels_.size(); ++l) {
            wexp[l] = int(jj % p);
            wshift += (long long)wexp[l] * w_weight(int(l));
            jj /= p;
        }
        auto sv = a.comp[j].val();
        if (sv && *sv != INT_MAX && (long long)*sv * tw + wshift == v) {
            Lead L;
            L.c = a.comp[j].coeff(*sv);
            L.t_exp = *sv;
            L.w_exp = wexp;
            return L;
        }
    }
    throw InternalError("lead not found");
}

elt LocalAlgebra::residue(const Elem& a) const {
    int v = val_or_throw(a);
    if (v > 0 || v == INT_MAX) return 0;
    if (v < 0) throw InternalError("residue of a polar element");
    return a.comp[0].coeff(0);
}

void LocalAlgebra::add_level(int m, const Elem& R) { levels_.push_back({m, R}); }

LocalAlgebra::Elem LocalAlgebra::lift(const Elem& a) const {
    Elem r = zero();
    for (size_t i = 0; i < a.comp.size(); ++i) r.comp[i] = a.comp[i];
    return r;
}

void LocalAlgebra::extend_residue(const FieldPtr& new_k, const ff::Embedding& emb) {
    for (auto& lv : levels_)
        for (auto& s : lv.R.comp) s = s.mapped(emb);
    k_ = new_k;
}

LocalAlgebra::Elem LocalAlgebra::mapped(const Elem& a, const ff::Embedding& emb) const {
    Elem r;
    r.comp.resize(a.comp.size());
    for (size_t i = 0; i < a.comp.size(); ++i) r.comp[i] = a.comp[i].mapped(emb);
    return r;
}

LocalAlgebra::Reduction LocalAlgebra::reduce_as(Elem f) const {
    Reduction out;
    out.corrector = zero();
    int p = k_->p;
    int tw = t_weight();
    int guard = 0;
    while (true) {
        if (++guard > 4096) throw InternalError("artin-schreier reduction did not terminate");
        int v = val_or_throw(f);
        if (v == INT_MAX || v >= 0) {
            out.m = 0;
            out.residual = (v == INT_MAX) ? 0 : residue(f);
            out.reduced = f;
            return out;
        }
        int m = -v;
        if (m % p != 0) {
            out.m = m;
            out.reduced = f;
            return out;
        }
        Lead L = lead(f);
        // find psi = c' t^a' prod w^b' with val = v/p and lead(psi^p) matching
        bool found = false;
        int nb = 1;
        for (size_t i = 0; i < levels_.size(); ++i) nb *= p;
        for (int code = 0; code < nb && !found; ++code) {
            std::vector<int> b(levels_.size());
            int cc = code;
            long long wshift = 0;
            for (size_t l = 0; l < levels_.size(); ++l) {
                b[l] = cc % p;
                cc /= p;
                wshift += (long long)b[l] * w_weight(int(l));
            }
            long long need = (long long)v / p - wshift;
            if (need % tw != 0) continue;
            int aexp = int(need / tw);
            Elem psi0 = monomial(1, aexp, b, 0);
            Elem psi0p = pow(psi0, p);
            Lead Lp = lead(psi0p);
            if (Lp.t_exp == L.t_exp && Lp.w_exp == L.w_exp) {
                elt cprime = k_->inv_frob(k_->div(L.c, Lp.c));
                Elem psi = scaled(psi0, cprime);
                Elem psip = pow(psi, p);
                Elem delta = sub(psip, psi);
                f = sub(f, delta);
                out.corrector = add(out.corrector, psi);
                int nv = val_or_throw(f);
                if (nv != INT_MAX && nv <= v) throw InternalError("reduction failed to raise valuation");
                found = true;
            }
        }
        if (!found) throw InternalError("no reduction monomial found");
    }
}

} // namespace hunt::series
