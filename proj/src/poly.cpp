#include "hunt/poly.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace hunt::poly {

// ------------------------------------------------------------------ Poly

Poly::Poly(FieldPtr F, std::vector<elt> coeffs) : F_(std::move(F)), c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(FieldPtr F, elt c) {
    Poly r(F);
    if (c != 0) r.c_ = {c};
    return r;
}

Poly Poly::x(FieldPtr F) {
    Poly r(F);
    r.c_ = {0, 1};
    return r;
}

Poly Poly::monomial(FieldPtr F, int deg, elt c) {
    Poly r(F);
    if (c != 0) {
        r.c_.assign(deg + 1, 0);
        r.c_[deg] = c;
    }
    return r;
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::operator+(const Poly& o) const {
    Poly r(F_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = F_->add(coeff(int(i)), o.coeff(int(i)));
    r.trim();
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r(F_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = F_->sub(coeff(int(i)), o.coeff(int(i)));
    r.trim();
    return r;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& c : r.c_) c = F_->neg(c);
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    Poly r(F_);
    if (is_zero() || o.is_zero()) return r;
    r.c_.assign(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            if (o.c_[j]) r.c_[i + j] = F_->add(r.c_[i + j], F_->mul(c_[i], o.c_[j]));
    }
    return r;
}

Poly Poly::scaled(elt s) const {
    Poly r(F_);
    if (s == 0) return r;
    r.c_ = c_;
    for (auto& c : r.c_) c = F_->mul(c, s);
    return r;
}

Poly Poly::shifted(int n) const {
    if (is_zero()) return *this;
    Poly r(F_);
    r.c_.assign(c_.size() + n, 0);
    std::copy(c_.begin(), c_.end(), r.c_.begin() + n);
    return r;
}

Poly Poly::pow(int n) const {
    Poly r = Poly::constant(F_, 1);
    Poly b = *this;
    while (n > 0) {
        if (n & 1) r = r * b;
        b = b * b;
        n >>= 1;
    }
    return r;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
    if (d.is_zero()) throw Error("poly", "divmod", "division by zero polynomial");
    Poly q(F_), r = *this;
    int dd = d.deg();
    elt li = F_->inv(d.lead());
    if (r.deg() >= dd) q.c_.assign(r.deg() - dd + 1, 0);
    while (r.deg() >= dd) {
        int sh = r.deg() - dd;
        elt f = F_->mul(r.lead(), li);
        q.c_[sh] = f;
        for (int i = 0; i <= dd; ++i)
            r.c_[sh + i] = F_->sub(r.c_[sh + i], F_->mul(f, d.c_[i]));
        r.trim();
    }
    q.trim();
    return {q, r};
}

bool Poly::divides(const Poly& other) const { return other.divmod(*this).second.is_zero(); }

Poly Poly::monic() const {
    if (is_zero() || lead() == 1) return *this;
    return scaled(F_->inv(lead()));
}

Poly Poly::derivative() const {
    Poly r(F_);
    if (deg() < 1) return r;
    r.c_.assign(c_.size() - 1, 0);
    for (int i = 1; i <= deg(); ++i) r.c_[i - 1] = F_->mul(c_[i], F_->from_int(i));
    r.trim();
    return r;
}

elt Poly::eval(elt x) const {
    elt r = 0;
    for (int i = deg(); i >= 0; --i) r = F_->add(F_->mul(r, x), c_[i]);
    return r;
}

elt Poly::eval_ext(elt x, const ff::Embedding& emb) const {
    const Field& E = *emb.dst();
    elt r = 0;
    for (int i = deg(); i >= 0; --i) r = E.add(E.mul(r, x), emb.map(c_[i]));
    return r;
}

std::vector<elt> Poly::expand_at(elt c, const ff::Embedding& emb) const {
    // repeated synthetic division by (x - c) over the extension
    const Field& E = *emb.dst();
    int n = deg();
    if (n < 0) return {0};
    std::vector<elt> w(n + 1);
    for (int i = 0; i <= n; ++i) w[i] = emb.map(coeff(i));
    std::vector<elt> out(n + 1, 0);
    for (int j = 0; j <= n; ++j) {
        int m = n - j;
        if (m == 0) {
            out[j] = w[0];
            break;
        }
        std::vector<elt> q(m);
        q[m - 1] = w[m];
        for (int i = m - 1; i >= 1; --i) q[i - 1] = E.add(w[i], E.mul(c, q[i]));
        out[j] = E.add(w[0], E.mul(c, q[0]));
        w = std::move(q);
    }
    return out;
}

Poly gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x % y;
        x = y;
        y = r;
    }
    return x.monic();
}

Poly xgcd(const Poly& a, const Poly& b, Poly& u, Poly& v) {
    FieldPtr F = a.field() ? a.field() : b.field();
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::constant(F, 1), s1(F);
    Poly t0(F), t1 = Poly::constant(F, 1);
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        r0 = r1;
        r1 = r;
        Poly s = s0 - q * s1;
        s0 = s1;
        s1 = s;
        Poly t = t0 - q * t1;
        t0 = t1;
        t1 = t;
    }
    if (!r0.is_zero() && r0.lead() != 1) {
        elt li = F->inv(r0.lead());
        s0 = s0.scaled(li);
        t0 = t0.scaled(li);
        r0 = r0.scaled(li);
    }
    u = s0;
    v = t0;
    return r0;
}

namespace {
// x^(q^e) mod f by iterated p-th powering
Poly frob_power_mod(const Poly& f, int e) {
    const FieldPtr& F = f.field();
    Poly r = Poly::x(F) % f;
    std::int64_t reps = std::int64_t(e) * F->k;
    for (std::int64_t it = 0; it < reps; ++it) {
        // r <- r^p mod f
        Poly acc = Poly::constant(F, 1);
        Poly base = r;
        int n = F->p;
        while (n) {
            if (n & 1) acc = (acc * base) % f;
            base = (base * base) % f;
            n >>= 1;
        }
        r = acc;
    }
    return r;
}
} // namespace

bool Poly::irreducible() const {
    int n = deg();
    if (n <= 0) return false;
    if (n == 1) return true;
    Poly f = monic();
    Poly xq = frob_power_mod(f, n);
    if (!((xq - Poly::x(F_)) % f).is_zero()) return false;
    int nn = n;
    std::vector<int> primes;
    for (int d = 2; d * d <= nn; ++d)
        while (nn % d == 0) {
            primes.push_back(d);
            nn /= d;
        }
    if (nn > 1) primes.push_back(nn);
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (int ell : primes) {
        Poly xe = frob_power_mod(f, n / ell);
        Poly g = gcd(f, xe - Poly::x(F_));
        if (g.deg() != 0) return false;
    }
    return true;
}

bool Poly::squarefree() const {
    if (deg() <= 0) return false;
    Poly d = derivative();
    if (d.is_zero()) return false;
    return gcd(*this, d).deg() == 0;
}

Poly::Factorization Poly::factor() const {
    if (is_zero()) throw Error("poly", "factor", "cannot factor the zero polynomial");
    Factorization out;
    out.lead = lead();
    std::vector<std::pair<Poly, int>> stack{{monic(), 1}}; // (poly, multiplicity carried)
    // first: squarefree split via gcd with derivative, handling p-th powers
    std::vector<std::pair<Poly, int>> sqfree;
    while (!stack.empty()) {
        auto [f, mult] = stack.back();
        stack.pop_back();
        if (f.deg() <= 0) continue;
        Poly d = f.derivative();
        if (d.is_zero()) {
            // f = g(x^p) = (inv-frobenius of coefficients)(x)^p
            Poly g(F_);
            std::vector<elt> gc(f.deg() / F_->p + 1, 0);
            for (int i = 0; i <= f.deg(); i += F_->p) gc[i / F_->p] = F_->inv_frob(f.coeff(i));
            stack.push_back({Poly(F_, gc), mult * F_->p});
            continue;
        }
        Poly g = gcd(f, d);
        if (g.deg() == 0) {
            sqfree.push_back({f, mult});
        } else {
            stack.push_back({f / g, mult});
            stack.push_back({g, mult});
        }
    }
    // merge repeated squarefree parts: factor each part, collect with multiplicity
    std::map<std::vector<elt>, std::pair<Poly, int>> acc;
    for (auto& [f, mult] : sqfree) {
        // distinct-degree then equal-degree on the squarefree f
        Poly rem = f;
        for (int d = 1; rem.deg() > 0 && d <= rem.deg(); ++d) {
            if (rem.deg() < 2 * d) {
                if (rem.deg() == d) {
                    auto key = rem.coeffs();
                    if (acc.count(key))
                        acc[key].second += mult;
                    else
                        acc[key] = {rem, mult};
                    rem = Poly::constant(F_, 1);
                }
                break;
            }
            Poly xq = frob_power_mod(rem, d);
            Poly g = gcd(rem, xq - Poly::x(F_));
            if (g.deg() > 0) {
                // g = product of all irreducible factors of degree d: split it
                std::vector<Poly> parts{g};
                std::vector<Poly> done;
                std::uint64_t tweak = 0;
                while (!parts.empty()) {
                    Poly h = parts.back();
                    parts.pop_back();
                    if (h.deg() == d) {
                        done.push_back(h);
                        continue;
                    }
                    bool split = false;
                    for (std::uint64_t att = 0; att < 4096 && !split; ++att, ++tweak) {
                        // deterministic splitting element: (x + c)^..., via trace map for p=2
                        Poly base(F_);
                        {
                            elt c = elt(tweak % F_->q);
                            base = Poly(F_, {c, 1});
                            if (tweak / F_->q > 0) base = base.pow(int(1 + tweak / F_->q));
                            base = base % h;
                        }
                        Poly probe(F_);
                        if (F_->p == 2) {
                            Poly acc2(F_), term = base;
                            std::int64_t reps = std::int64_t(d) * F_->k;
                            for (std::int64_t i = 0; i < reps; ++i) {
                                acc2 = acc2 + term;
                                term = (term * term) % h;
                            }
                            probe = acc2;
                        } else {
                            // base^((q^d-1)/2) mod h, exponent via square-and-multiply on big exponent
                            // compute exponent in limbs of the loop: ((q^d)-1)/2 = (q-1)/2 * (q^(d-1)+...+1)
                            // simpler: repeated exponentiation: e = (q^d - 1)/2 done as binary over u128
                            unsigned __int128 e = 1;
                            for (int i = 0; i < d; ++i) e *= F_->q;
                            e = (e - 1) / 2;
                            Poly r = Poly::constant(F_, 1), b = base;
                            while (e) {
                                if (e & 1) r = (r * b) % h;
                                b = (b * b) % h;
                                e >>= 1;
                            }
                            probe = r - Poly::constant(F_, 1);
                        }
                        Poly g1 = gcd(h, probe);
                        if (g1.deg() > 0 && g1.deg() < h.deg()) {
                            parts.push_back(g1);
                            parts.push_back(h / g1);
                            split = true;
                        }
                    }
                    if (!split) throw Error("poly", "factor", "equal-degree splitting failed");
                }
                for (auto& h : done) {
                    auto key = h.coeffs();
                    if (acc.count(key))
                        acc[key].second += mult;
                    else
                        acc[key] = {h, mult};
                }
                rem = rem / g;
            }
        }
        if (rem.deg() > 0) {
            auto key = rem.coeffs();
            if (acc.count(key))
                acc[key].second += mult;
            else
                acc[key] = {rem, mult};
        }
    }
    for (auto& [k, v] : acc) out.factors.push_back(v);
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return Poly::cmp(a.first, b.first) < 0; });
    return out;
}

std::vector<elt> Poly::roots_in(const ff::Embedding& emb) const {
    const FieldPtr& E = emb.dst();
    // embed coefficients, then find roots over E
    std::vector<elt> ec(deg() + 1);
    for (int i = 0; i <= deg(); ++i) ec[i] = emb.map(coeff(i));
    Poly f(E, ec);
    if (f.is_zero()) throw Error("poly", "roots", "zero polynomial");
    std::vector<elt> out;
    // strip x factors
    while (f.deg() > 0 && f.coeff(0) == 0) {
        out.push_back(0);
        f = f / Poly::x(E);
    }
    if (f.deg() <= 0) {
        std::sort(out.begin(), out.end());
        return out;
    }
    // g = gcd(f, x^|E| - x)
    Poly xq = frob_power_mod(f.monic(), 1);
    Poly g = gcd(f, xq - Poly::x(E));
    std::vector<Poly> parts;
    if (g.deg() > 0) parts.push_back(g);
    std::uint64_t tweak = 1;
    while (!parts.empty()) {
        Poly h = parts.back();
        parts.pop_back();
        if (h.deg() == 1) {
            out.push_back(E->neg(h.coeff(0)));
            continue;
        }
        bool split = false;
        for (std::uint64_t att = 0; att < E->q + 4096 && !split; ++att, ++tweak) {
            elt c = elt(tweak % E->q);
            Poly probe(E);
            if (E->p == 2) {
                Poly term = Poly(E, {0, c ? c : 1}) % h;
                Poly acc2(E);
                for (int i = 0; i < E->k; ++i) {
                    acc2 = acc2 + term;
                    term = (term * term) % h;
                }
                probe = acc2;
            } else {
                Poly b = Poly(E, {c, 1});
                std::uint64_t e = (E->q - 1) / 2;
                Poly r = Poly::constant(E, 1);
                Poly bb = b % h;
                while (e) {
                    if (e & 1) r = (r * bb) % h;
                    bb = (bb * bb) % h;
                    e >>= 1;
                }
                probe = r - Poly::constant(E, 1);
            }
            Poly g1 = gcd(h, probe);
            if (g1.deg() > 0 && g1.deg() < h.deg()) {
                parts.push_back(g1);
                parts.push_back(h / g1);
                split = true;
            }
        }
        if (!split) throw Error("poly", "roots", "deterministic root splitting failed");
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<elt> Poly::roots() const {
    auto self = ff::get_embedding(F_, F_);
    return roots_in(*self);
}

std::string Poly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = deg(); i >= 0; --i) {
        elt c = coeff(i);
        if (!c) continue;
        if (!s.empty()) s += "+";
        std::string cs = F_->to_string(c);
        bool needs_paren = cs.find('+') != std::string::npos;
        if (i == 0) {
            s += needs_paren ? "(" + cs + ")" : cs;
        } else {
            if (c != 1) s += needs_paren ? "(" + cs + ")" : cs;
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

int Poly::cmp(const Poly& a, const Poly& b) {
    if (a.deg() != b.deg()) return a.deg() < b.deg() ? -1 : 1;
    for (int i = a.deg(); i >= 0; --i)
        if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i) ? -1 : 1;
    return 0;
}

namespace {
std::mutex g_irr_mutex;
std::map<std::pair<const Field*, int>, std::vector<Poly>> g_irr_cache;
} // namespace

const std::vector<Poly>& monic_irreducibles(const FieldPtr& F, int d) {
    std::lock_guard<std::mutex> lk(g_irr_mutex);
    auto key = std::make_pair(F.get(), d);
    auto it = g_irr_cache.find(key);
    if (it != g_irr_cache.end()) return it->second;
    std::vector<Poly> out;
    // iterate monic degree-d polynomials in coefficient order (low digits vary fastest
    // on the HIGH coefficient so the order matches Poly::cmp)
    std::uint64_t total = 1;
    for (int i = 0; i < d; ++i) {
        if (total > (std::uint64_t(1) << 26) / (F->q ? F->q : 2))
            throw Error("poly", "irreducibles", "too many polynomials to enumerate");
        total *= F->q;
    }
    std::vector<elt> c(d + 1, 0);
    c[d] = 1;
    for (std::uint64_t n = 0; n < total; ++n) {
        std::uint64_t v = n;
        for (int i = d - 1; i >= 0; --i) {
            c[i] = elt(v % F->q);
            v /= F->q;
        }
        Poly f(F, c);
        if (f.irreducible()) out.push_back(f);
    }
    std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) { return Poly::cmp(a, b) < 0; });
    auto& slot = g_irr_cache[key];
    slot = std::move(out);
    return slot;
}

// ------------------------------------------------------------------ RatFun

RatFun::RatFun(Poly num) : num_(std::move(num)) {
    den_ = Poly::constant(num_.field(), 1);
}

RatFun::RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error("poly", "ratfun", "zero denominator");
    if (num_.is_zero()) {
        den_ = Poly::constant(num_.field(), 1);
        return;
    }
    Poly g = gcd(num_, den_);
    if (g.deg() > 0) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
    if (den_.lead() != 1) {
        elt li = num_.field()->inv(den_.lead());
        num_ = num_.scaled(li);
        den_ = den_.scaled(li);
    }
}

RatFun RatFun::operator+(const RatFun& o) const {
    return RatFun(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}
RatFun RatFun::operator-(const RatFun& o) const {
    return RatFun(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}
RatFun RatFun::operator*(const RatFun& o) const { return RatFun(num_ * o.num_, den_ * o.den_); }
RatFun RatFun::operator/(const RatFun& o) const {
    if (o.is_zero()) throw Error("poly", "ratfun", "division by zero");
    return RatFun(num_ * o.den_, den_ * o.num_);
}
RatFun RatFun::operator-() const { return RatFun(-num_, den_); }

RatFun RatFun::pow(int n) const {
    if (n < 0) return RatFun(den_, num_).pow(-n);
    return RatFun(num_.pow(n), den_.pow(n));
}

int RatFun::val_at(const Poly& pi) const {
    if (is_zero()) throw Error("poly", "valuation", "valuation of zero");
    auto count = [&](const Poly& f) {
        int v = 0;
        Poly r = f;
        while (true) {
            auto [q, rem] = r.divmod(pi);
            if (!rem.is_zero()) break;
            ++v;
            r = q;
        }
        return v;
    };
    return count(num_) - count(den_);
}

int RatFun::val_at_infinity() const {
    if (is_zero()) throw Error("poly", "valuation", "valuation of zero");
    return den_.deg() - num_.deg();
}

std::optional<elt> RatFun::eval_ext(elt x, const ff::Embedding& emb) const {
    elt d = den_.eval_ext(x, emb);
    if (d == 0) {
        elt n = num_.eval_ext(x, emb);
        if (n != 0) return std::nullopt;
        // remove the common factor exactly: evaluate reduced form at the place
        // (num and den are coprime, so num(x)=den(x)=0 cannot happen)
        throw InternalError("reduced rational function with common root");
    }
    return emb.dst()->div(num_.eval_ext(x, emb), d);
}

std::optional<elt> RatFun::eval(elt x) const {
    auto self = ff::get_embedding(num_.field(), num_.field());
    return eval_ext(x, *self);
}

std::string RatFun::to_string(const std::string& var) const {
    if (is_poly()) {
        if (den_.coeff(0) == 1) return num_.to_string(var);
        return RatFun(num_.scaled(field()->inv(den_.coeff(0)))).to_string(var);
    }
    std::string n = num_.to_string(var);
    std::string d = den_.to_string(var);
    bool np = num_.deg() > 0 && (n.find('+') != std::string::npos);
    bool dp = den_.deg() > 0;
    return (np ? "(" + n + ")" : n) + "/" + (dp ? "(" + d + ")" : d);
}

int RatFun::cmp(const RatFun& a, const RatFun& b) {
    int c = Poly::cmp(a.den_, b.den_);
    if (c) return c;
    return Poly::cmp(a.num_, b.num_);
}

// ------------------------------------------------------------------ TriForm

TriForm::TriForm(FieldPtr F, int degree) : F_(std::move(F)), d_(degree) {
    c_.assign((d_ + 1) * (d_ + 1), 0);
}

bool TriForm::is_zero() const {
    for (auto v : c_)
        if (v) return false;
    return true;
}

TriForm TriForm::operator*(const TriForm& o) const {
    TriForm r(F_, d_ + o.d_);
    for (int i = 0; i <= d_; ++i)
        for (int j = 0; i + j <= d_; ++j) {
            elt a = coeff(i, j);
            if (!a) continue;
            for (int i2 = 0; i2 <= o.d_; ++i2)
                for (int j2 = 0; i2 + j2 <= o.d_; ++j2) {
                    elt b = o.coeff(i2, j2);
                    if (!b) continue;
                    r.set_coeff(i + i2, j + j2, F_->add(r.coeff(i + i2, j + j2), F_->mul(a, b)));
                }
        }
    return r;
}

TriForm TriForm::operator+(const TriForm& o) const {
    if (d_ != o.d_) throw InternalError("adding forms of different degree");
    TriForm r(F_, d_);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = F_->add(c_[i], o.c_[i]);
    return r;
}

TriForm TriForm::scaled(elt s) const {
    TriForm r(F_, d_);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = F_->mul(c_[i], s);
    return r;
}

TriForm TriForm::pow(int n) const {
    TriForm r(F_, 0);
    r.set_coeff(0, 0, 1);
    TriForm b = *this;
    while (n > 0) {
        if (n & 1) r = r * b;
        if (n > 1) b = b * b;
        n >>= 1;
    }
    return r;
}

TriForm TriForm::partial(int var) const {
    TriForm r(F_, d_ > 0 ? d_ - 1 : 0);
    if (d_ == 0) return r;
    for (int i = 0; i <= d_; ++i)
        for (int j = 0; i + j <= d_; ++j) {
            elt a = coeff(i, j);
            if (!a) continue;
            int kk = d_ - i - j;
            if (var == 0 && i > 0) r.set_coeff(i - 1, j, F_->add(r.coeff(i - 1, j), F_->mul(a, F_->from_int(i))));
            if (var == 1 && j > 0) r.set_coeff(i, j - 1, F_->add(r.coeff(i, j - 1), F_->mul(a, F_->from_int(j))));
            if (var == 2 && kk > 0) r.set_coeff(i, j, F_->add(r.coeff(i, j), F_->mul(a, F_->from_int(kk))));
        }
    return r;
}

elt TriForm::eval(elt x, elt y, elt z, const ff::Embedding& emb) const {
    const Field& E = *emb.dst();
    std::vector<elt> xp(d_ + 1, 1), yp(d_ + 1, 1), zp(d_ + 1, 1);
    for (int i = 1; i <= d_; ++i) {
        xp[i] = E.mul(xp[i - 1], x);
        yp[i] = E.mul(yp[i - 1], y);
        zp[i] = E.mul(zp[i - 1], z);
    }
    elt r = 0;
    for (int i = 0; i <= d_; ++i)
        for (int j = 0; i + j <= d_; ++j) {
            elt a = coeff(i, j);
            if (!a) continue;
            elt t = E.mul(emb.map(a), E.mul(xp[i], E.mul(yp[j], zp[d_ - i - j])));
            r = E.add(r, t);
        }
    return r;
}

elt TriForm::eval(elt x, elt y, elt z) const {
    auto self = ff::get_embedding(F_, F_);
    return eval(x, y, z, *self);
}

Poly TriForm::restrict_line(const std::array<elt, 3>& P, const std::array<elt, 3>& Q,
                            const ff::Embedding& emb) const {
    const FieldPtr& E = emb.dst();
    // coordinates are P + s*Q
    Poly X(E, {P[0], Q[0]});
    Poly Y(E, {P[1], Q[1]});
    Poly Z(E, {P[2], Q[2]});
    std::vector<Poly> xp{Poly::constant(E, 1)}, yp{Poly::constant(E, 1)}, zp{Poly::constant(E, 1)};
    for (int i = 1; i <= d_; ++i) {
        xp.push_back(xp.back() * X);
        yp.push_back(yp.back() * Y);
        zp.push_back(zp.back() * Z);
    }
    Poly r(E);
    for (int i = 0; i <= d_; ++i)
        for (int j = 0; i + j <= d_; ++j) {
            elt a = coeff(i, j);
            if (!a) continue;
            r = r + (xp[i] * yp[j] * zp[d_ - i - j]).scaled(emb.map(a));
        }
    return r;
}

std::vector<Poly> TriForm::affinize_z() const {
    // poly in y: coefficient of y^j is a Poly in x
    std::vector<Poly> out(d_ + 1, Poly(F_));
    for (int j = 0; j <= d_; ++j) {
        std::vector<elt> cs(d_ + 1, 0);
        for (int i = 0; i + j <= d_; ++i) cs[i] = coeff(i, j);
        out[j] = Poly(F_, cs);
    }
    while (!out.empty() && out.back().is_zero()) out.pop_back();
    return out;
}

std::vector<Poly> TriForm::affinize_y() const {
    // variables (x, z), poly in z: coefficient of z^m is Poly in x
    std::vector<Poly> out(d_ + 1, Poly(F_));
    for (int m = 0; m <= d_; ++m) {
        std::vector<elt> cs(d_ + 1, 0);
        for (int i = 0; i + m <= d_; ++i) cs[i] = coeff(i, d_ - i - m);
        out[m] = Poly(F_, cs);
    }
    while (!out.empty() && out.back().is_zero()) out.pop_back();
    return out;
}

std::vector<Poly> TriForm::affinize_x() const {
    // variables (y, z), poly in z: coefficient of z^m is Poly in y
    std::vector<Poly> out(d_ + 1, Poly(F_));
    for (int m = 0; m <= d_; ++m) {
        std::vector<elt> cs(d_ + 1, 0);
        for (int j = 0; j + m <= d_; ++j) cs[j] = coeff(d_ - j - m, j);
        out[m] = Poly(F_, cs);
    }
    while (!out.empty() && out.back().is_zero()) out.pop_back();
    return out;
}

TriForm TriForm::frobenius(int times) const {
    TriForm r(F_, d_);
    for (int i = 0; i <= d_; ++i)
        for (int j = 0; i + j <= d_; ++j) {
            elt a = coeff(i, j);
            for (int t = 0; t < times; ++t) a = F_->frob(a);
            r.set_coeff(i, j, a);
        }
    return r;
}

std::string TriForm::to_string() const {
    std::string s;
    for (int i = d_; i >= 0; --i)
        for (int j = d_ - i; j >= 0; --j) {
            elt a = coeff(i, j);
            if (!a) continue;
            if (!s.empty()) s += "+";
            int kk = d_ - i - j;
            std::string cs = F_->to_string(a);
            bool paren = cs.find('+') != std::string::npos;
            bool any_var = i || j || kk;
            if (a != 1 || !any_var) s += paren ? "(" + cs + ")" : cs;
            auto piece = [&](const char* v, int e) {
                if (!e) return std::string();
                std::string t = v;
                if (e > 1) t += "^" + std::to_string(e);
                return t;
            };
            s += piece("x", i) + piece("y", j) + piece("z", kk);
        }
    return s.empty() ? "0" : s;
}

int TriForm::cmp(const TriForm& a, const TriForm& b) {
    if (a.d_ != b.d_) return a.d_ < b.d_ ? -1 : 1;
    if (a.c_ != b.c_) return a.c_ < b.c_ ? -1 : 1;
    return 0;
}

} // namespace hunt::poly
