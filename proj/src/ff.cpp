#include "hunt/ff.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <unordered_map>

namespace hunt::ff {

namespace {

constexpr std::uint64_t kAddTableMax = 1024;  // q*q uint32 entries
constexpr std::uint64_t kTableMax = 1u << 20; // exp/log + unary tables
constexpr int kMaxDegreeDigits = 40;

std::uint64_t ipow(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// ---- arithmetic on Z/p polynomials as int vectors (modulus search) ----

using ZpPoly = std::vector<int>; // c0..cn, cn != 0 unless empty

void zp_trim(ZpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

ZpPoly zp_mul(const ZpPoly& a, const ZpPoly& b, int p) {
    if (a.empty() || b.empty()) return {};
    ZpPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    zp_trim(r);
    return r;
}

ZpPoly zp_mod(ZpPoly a, const ZpPoly& m, int p) {
    zp_trim(a);
    int dm = int(m.size()) - 1;
    int lead_inv = 1;
    { // inverse of m's leading coefficient mod p
        int lm = m.back();
        for (int i = 1; i < p; ++i)
            if (lm * i % p == 1) lead_inv = i;
    }
    while (int(a.size()) - 1 >= dm) {
        int da = int(a.size()) - 1;
        int c = a.back() * lead_inv % p;
        for (int i = 0; i <= dm; ++i) {
            int& t = a[da - dm + i];
            t = ((t - c * m[i]) % p + p) % p;
        }
        zp_trim(a);
    }
    return a;
}

ZpPoly zp_gcd(ZpPoly a, ZpPoly b, int p) {
    zp_trim(a);
    zp_trim(b);
    while (!b.empty()) {
        ZpPoly r = zp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

ZpPoly zp_powmod_x(std::uint64_t, const ZpPoly&, int); // fwd

ZpPoly zp_mulmod(const ZpPoly& a, const ZpPoly& b, const ZpPoly& m, int p) {
    return zp_mod(zp_mul(a, b, p), m, p);
}

// x^(p^e) mod m via iterated p-th powering
ZpPoly zp_frob_iter(const ZpPoly& m, int p, int e) {
    ZpPoly x = {0, 1};
    ZpPoly r = zp_mod(x, m, p);
    for (int it = 0; it < e; ++it) {
        // r <- r^p mod m
        ZpPoly acc = {1};
        ZpPoly base = r;
        int n = p;
        while (n > 0) {
            if (n & 1) acc = zp_mulmod(acc, base, m, p);
            base = zp_mulmod(base, base, m, p);
            n >>= 1;
        }
        r = std::move(acc);
    }
    return r;
}

// Rabin irreducibility test over Z/p
bool zp_irreducible(const ZpPoly& f, int p) {
    int n = int(f.size()) - 1;
    if (n <= 0) return false;
    if (n == 1) return true;
    ZpPoly x = {0, 1};
    // x^(p^n) == x mod f
    ZpPoly xq = zp_frob_iter(f, p, n);
    ZpPoly diff = xq;
    diff.resize(std::max<size_t>(diff.size(), 2), 0);
    diff[1] = ((diff[1] - 1) % p + p) % p;
    zp_trim(diff);
    if (!diff.empty()) return false;
    std::vector<int> primes;
    int nn = n;
    for (int d = 2; d * d <= nn; ++d)
        while (nn % d == 0) {
            primes.push_back(d);
            nn /= d;
        }
    if (nn > 1) primes.push_back(nn);
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (int ell : primes) {
        ZpPoly xe = zp_frob_iter(f, p, n / ell);
        ZpPoly d2 = xe;
        d2.resize(std::max<size_t>(d2.size(), 2), 0);
        d2[1] = ((d2[1] - 1) % p + p) % p;
        zp_trim(d2);
        ZpPoly g = zp_gcd(f, d2, p);
        if (int(g.size()) - 1 != 0) return false;
    }
    return true;
}

// Lexicographically least monic irreducible of degree k over Z/p,
// comparing coefficient tuples (c_{k-1}, ..., c_0).
ZpPoly least_irreducible(int p, int k) {
    if (k == 1) return {0, 1}; // x
    std::vector<int> hi(k, 0);  // c_{k-1}..c_0
    while (true) {
        ZpPoly f(k + 1, 0);
        f[k] = 1;
        for (int i = 0; i < k; ++i) f[k - 1 - i] = hi[i];
        if (zp_irreducible(f, p)) return f;
        int pos = k - 1;
        while (pos >= 0 && hi[pos] == p - 1) hi[pos--] = 0;
        if (pos < 0) throw InternalError("no irreducible polynomial found");
        hi[pos]++;
    }
}

} // namespace

// small Gaussian elimination data mod p for the Artin-Schreier solver
struct Field::ASolver {
    int p = 0, k = 0;
    std::vector<int> rowops; // k x k row-operation matrix R
    std::vector<int> ref;    // k x k reduced form of M
    std::vector<int> pivcol; // pivot column per row
};

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> r;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            r.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) r.push_back(n);
    return r;
}

// ---------------------------------------------------------------- Field

namespace {
std::mutex g_reg_mutex;
std::map<std::tuple<int, int, std::vector<int>>, FieldPtr> g_fields;
std::map<std::pair<const Field*, const Field*>, EmbeddingPtr> g_embeddings;
} // namespace

FieldPtr Field::make(int p, int k, const std::vector<int>* modulus, std::uint64_t enum_bound) {
    if (!is_prime(std::uint64_t(p))) throw Error("ff", "build_field", "characteristic " + std::to_string(p) + " is not prime");
    if (k < 1 || k > kMaxDegreeDigits) throw Error("ff", "build_field", "bad extension degree");
    long double qf = powl((long double)p, k);
    if (qf > (long double)enum_bound)
        throw Error("ff", "build_field", "cardinality p^k exceeds the enumeration bound");
    auto F = std::shared_ptr<Field>(new Field());
    F->p = p;
    F->k = k;
    F->q = ipow(p, k);
    if (modulus) {
        ZpPoly m = *modulus;
        zp_trim(m);
        if (int(m.size()) - 1 != k || m.back() != 1)
            throw Error("ff", "build_field", "modulus must be monic of degree k");
        for (int c : m)
            if (c < 0 || c >= p) throw Error("ff", "build_field", "modulus coefficients must be reduced mod p");
        if (!zp_irreducible(m, p)) throw Error("ff", "build_field", "modulus is reducible over Z/p");
        F->modulus = m;
    } else {
        F->modulus = least_irreducible(p, k);
    }
    F->build_tables();
    return F;
}

FieldPtr Field::make_internal(int p, int k) {
    if (k < 1 || k > kMaxDegreeDigits) throw InternalError("field degree too large");
    long double qf = powl((long double)p, k);
    if (qf > 9.2e18) throw InternalError("field cardinality overflows");
    auto F = std::shared_ptr<Field>(new Field());
    F->p = p;
    F->k = k;
    F->q = ipow(p, k);
    F->modulus = least_irreducible(p, k);
    F->build_tables();
    return F;
}

FieldPtr get_field(int p, int k) {
    {
        std::lock_guard<std::mutex> lk(g_reg_mutex);
        auto it = g_fields.find({p, k, {}});
        if (it != g_fields.end()) return it->second;
    }
    FieldPtr F = (ipow(p, std::min(k, 30)) <= kDefaultEnumBound && k <= 30) ? Field::make(p, k)
                                                                            : Field::make_internal(p, k);
    std::lock_guard<std::mutex> lk(g_reg_mutex);
    auto& slot = g_fields[{p, k, {}}];
    if (!slot) slot = F;
    return slot;
}

void Field::build_tables() {
    powp_.resize(k + 1);
    powp_[0] = 1;
    for (int i = 1; i <= k; ++i) powp_[i] = powp_[i - 1] * std::uint64_t(p);
    // x^(k+i) mod modulus, packed
    xk_red_.clear();
    {
        std::vector<int> cur(modulus.begin(), modulus.end() - 1); // x^k = -(c0..c_{k-1})
        for (auto& c : cur) c = (p - c) % p;
        for (int i = 0; i <= k - 2; ++i) {
            std::uint64_t packed = 0;
            for (int j = 0; j < k; ++j) packed += std::uint64_t(cur[j]) * powp_[j];
            xk_red_.push_back(packed);
            // multiply by x
            int carry = cur[k - 1];
            for (int j = k - 1; j > 0; --j) cur[j] = cur[j - 1];
            cur[0] = 0;
            if (carry) {
                for (int j = 0; j < k; ++j)
                    cur[j] = (cur[j] + carry * ((p - modulus[j]) % p)) % p;
            }
        }
    }
    if (q <= kTableMax) {
        tabled_ = true;
        // find generator using generic multiply
        auto fac = prime_factors(q - 1);
        for (elt g = 1; g < q; ++g) {
            bool ok = g != 0;
            for (auto ell : fac) {
                // g^((q-1)/ell) via generic pow
                std::uint64_t e = (q - 1) / ell;
                elt r = 1, b = g;
                while (e) {
                    if (e & 1) r = mul_generic(r, b);
                    b = mul_generic(b, b);
                    e >>= 1;
                }
                if (r == 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                gen_ = g;
                break;
            }
        }
        if (gen_ == 0 && q > 2) throw InternalError("no multiplicative generator found");
        if (q == 2) gen_ = 1;
        exp_.resize(q - 1);
        log_.assign(q, -1);
        elt cur = 1;
        for (std::uint64_t i = 0; i < q - 1; ++i) {
            exp_[i] = std::uint32_t(cur);
            log_[cur] = std::int32_t(i);
            cur = mul_generic(cur, gen_);
        }
        frobt_.resize(q);
        ifrobt_.resize(q);
        tracet_.resize(q);
        for (elt a = 0; a < q; ++a) {
            elt f = 1;
            if (a != 0) {
                std::uint64_t e = std::uint64_t(p) % (q - 1);
                f = exp_[(std::uint64_t(log_[a]) * e) % (q - 1)];
            } else
                f = 0;
            frobt_[a] = std::uint32_t(f);
            ifrobt_[f] = std::uint32_t(a);
            elt t = 0, x = a;
            for (int i = 0; i < k; ++i) {
                t = add(t, x);
                elt xp = 0;
                if (x != 0) {
                    std::uint64_t e = std::uint64_t(p) % (q - 1);
                    xp = exp_[(std::uint64_t(log_[x]) * e) % (q - 1)];
                }
                x = xp;
            }
            tracet_[a] = std::uint8_t(t); // trace lands in prime field: packed == value
        }
        if (q * q <= kAddTableMax * kAddTableMax && q <= kAddTableMax && p != 2) {
            addt_.resize(q * q);
            for (elt a = 0; a < q; ++a)
                for (elt b = 0; b < q; ++b) {
                    // digitwise add
                    elt r = 0;
                    std::uint64_t aa = a, bb = b;
                    for (int i = 0; i < k; ++i) {
                        int da = int(aa % p), db = int(bb % p);
                        r += std::uint64_t((da + db) % p) * powp_[i];
                        aa /= p;
                        bb /= p;
                    }
                    addt_[a * q + b] = std::uint32_t(r);
                }
        }
    }
}

elt Field::from_int(std::int64_t n) const {
    std::int64_t r = n % p;
    if (r < 0) r += p;
    return elt(r);
}

elt Field::add(elt a, elt b) const {
    if (p == 2) return a ^ b;
    if (!addt_.empty()) return addt_[a * q + b];
    elt r = 0;
    std::uint64_t aa = a, bb = b;
    for (int i = 0; i < k; ++i) {
        int s = int(aa % p) + int(bb % p);
        if (s >= p) s -= p;
        r += std::uint64_t(s) * powp_[i];
        aa /= p;
        bb /= p;
    }
    return r;
}

elt Field::neg(elt a) const {
    if (p == 2) return a;
    elt r = 0;
    std::uint64_t aa = a;
    for (int i = 0; i < k; ++i) {
        int d = int(aa % p);
        r += std::uint64_t(d == 0 ? 0 : p - d) * powp_[i];
        aa /= p;
    }
    return r;
}

elt Field::sub(elt a, elt b) const { return add(a, neg(b)); }

elt Field::mul_generic(elt a, elt b) const {
    if (a == 0 || b == 0) return 0;
    int da[kMaxDegreeDigits], db[kMaxDegreeDigits];
    int conv[2 * kMaxDegreeDigits];
    std::uint64_t aa = a, bb = b;
    for (int i = 0; i < k; ++i) {
        da[i] = int(aa % p);
        db[i] = int(bb % p);
        aa /= p;
        bb /= p;
    }
    for (int i = 0; i < 2 * k - 1; ++i) conv[i] = 0;
    for (int i = 0; i < k; ++i) {
        if (!da[i]) continue;
        for (int j = 0; j < k; ++j) conv[i + j] += da[i] * db[j];
    }
    // fold conv[k..2k-2] using xk_red_
    elt r = 0;
    int low[kMaxDegreeDigits];
    for (int i = 0; i < k; ++i) low[i] = conv[i] % p;
    for (int i = k; i <= 2 * k - 2; ++i) {
        int c = conv[i] % p;
        if (!c) continue;
        std::uint64_t red = xk_red_[i - k];
        for (int j = 0; j < k; ++j) {
            low[j] = (low[j] + c * int(red % p)) % p;
            red /= p;
        }
    }
    for (int i = 0; i < k; ++i) r += std::uint64_t(low[i]) * powp_[i];
    return r;
}

elt Field::mul(elt a, elt b) const {
    if (tabled_) {
        if (a == 0 || b == 0) return 0;
        std::uint64_t s = std::uint64_t(log_[a]) + std::uint64_t(log_[b]);
        if (s >= q - 1) s -= q - 1;
        return exp_[s];
    }
    return mul_generic(a, b);
}

elt Field::inv(elt a) const {
    if (a == 0) throw Error("ff", "invert", "division by zero");
    if (tabled_) {
        std::uint64_t l = std::uint64_t(log_[a]);
        return exp_[l == 0 ? 0 : q - 1 - l];
    }
    return pow(a, std::int64_t(q - 2));
}

elt Field::pow(elt a, std::int64_t n) const {
    if (a == 0) {
        if (n == 0) return 1;
        if (n < 0) throw Error("ff", "power", "zero to negative power");
        return 0;
    }
    std::uint64_t e;
    if (n < 0) {
        std::uint64_t m = q - 1;
        e = m - (std::uint64_t(-n) % m);
        if (e == m) e = 0;
    } else
        e = std::uint64_t(n) % (q - 1);
    if (tabled_) {
        if (q == 2) return 1;
        return exp_[(std::uint64_t(log_[a]) * (e % (q - 1))) % (q - 1)];
    }
    elt r = 1, b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

elt Field::frob(elt a) const {
    if (tabled_) return frobt_[a];
    return pow(a, p);
}

elt Field::inv_frob(elt a) const {
    if (tabled_) return ifrobt_[a];
    // a^(p^(k-1))
    elt r = a;
    for (int i = 0; i < k - 1; ++i) r = pow(r, p);
    return r;
}

elt Field::pow_q(elt a, std::uint64_t subq) const {
    elt r = a;
    while (subq > 1) {
        r = frob(r);
        subq /= std::uint64_t(p);
    }
    return r;
}

int Field::trace_to_prime(elt a) const {
    if (tabled_) return int(tracet_[a]);
    elt t = 0, x = a;
    for (int i = 0; i < k; ++i) {
        t = add(t, x);
        x = frob(x);
    }
    return int(t);
}

elt Field::generator() const {
    if (!tabled_) throw Error("ff", "generator", "field too large for generator search");
    return gen_;
}

std::uint64_t Field::mult_order(elt a) const {
    if (a == 0) throw Error("ff", "mult_order", "zero has no multiplicative order");
    std::uint64_t ord = q - 1;
    for (auto ell : prime_factors(q - 1)) {
        while (ord % ell == 0 && pow(a, std::int64_t(ord / ell)) == 1) ord /= ell;
    }
    return ord;
}

std::int64_t Field::dlog(elt a) const {
    if (!tabled_ || a == 0) throw Error("ff", "dlog", "not available");
    return log_[a];
}

bool Field::sqrt(elt a, elt& out) const {
    if (p == 2) {
        out = inv_frob(a);
        return true;
    }
    if (a == 0) {
        out = 0;
        return true;
    }
    if (tabled_) {
        std::uint64_t l = std::uint64_t(log_[a]);
        if (l & 1) return false;
        out = exp_[l / 2];
        return true;
    }
    // Euler criterion + Tonelli-Shanks with deterministic non-residue search
    if (pow(a, std::int64_t((q - 1) / 2)) != 1) return false;
    std::uint64_t s = q - 1;
    int e = 0;
    while (s % 2 == 0) {
        s /= 2;
        ++e;
    }
    elt n = 2;
    while (n < q && pow(n, std::int64_t((q - 1) / 2)) == 1) ++n;
    elt x = pow(a, std::int64_t((s + 1) / 2));
    elt b = pow(a, std::int64_t(s));
    elt g = pow(n, std::int64_t(s));
    int r = e;
    while (true) {
        elt t = b;
        int m = 0;
        while (t != 1 && m < r) {
            t = mul(t, t);
            ++m;
        }
        if (m == 0) {
            out = x;
            return true;
        }
        elt gs = g;
        for (int i = 0; i < r - m - 1; ++i) gs = mul(gs, gs);
        x = mul(x, gs);
        g = mul(gs, gs);
        b = mul(b, g);
        r = m;
    }
}

bool Field::artin_schreier_root(elt c, elt& out) const {
    if (trace_to_prime(c) != 0) return false;
    std::call_once(asolver_once_, [&] {
        ASolver s;
        s.p = p;
        s.k = k;
        // matrix of w -> w^p - w on digit vectors (columns = images of basis digits)
        std::vector<int> M(k * k, 0);
        for (int j = 0; j < k; ++j) {
            elt img = sub(frob(powp_[j] /*a^j*/), powp_[j]);
            std::uint64_t v = img;
            for (int i = 0; i < k; ++i) {
                M[i * k + j] = int(v % p);
                v /= p;
            }
        }
        std::vector<int> R(k * k, 0);
        for (int i = 0; i < k; ++i) R[i * k + i] = 1;
        int row = 0;
        std::vector<int> piv;
        for (int col = 0; col < k && row < k; ++col) {
            int sel = -1;
            for (int i = row; i < k; ++i)
                if (M[i * k + col] != 0) {
                    sel = i;
                    break;
                }
            if (sel < 0) continue;
            for (int j = 0; j < k; ++j) {
                std::swap(M[sel * k + j], M[row * k + j]);
                std::swap(R[sel * k + j], R[row * k + j]);
            }
            int pivv = M[row * k + col];
            int pinv = 1;
            for (int i = 1; i < p; ++i)
                if (pivv * i % p == 1) pinv = i;
            for (int j = 0; j < k; ++j) {
                M[row * k + j] = M[row * k + j] * pinv % p;
                R[row * k + j] = R[row * k + j] * pinv % p;
            }
            for (int i = 0; i < k; ++i) {
                if (i == row) continue;
                int f = M[i * k + col];
                if (!f) continue;
                for (int j = 0; j < k; ++j) {
                    M[i * k + j] = ((M[i * k + j] - f * M[row * k + j]) % p + p) % p;
                    R[i * k + j] = ((R[i * k + j] - f * R[row * k + j]) % p + p) % p;
                }
            }
            piv.push_back(col);
            ++row;
        }
        s.ref = M;
        s.rowops = R;
        s.pivcol = piv;
        asolver_ = std::make_shared<const ASolver>(std::move(s));
    });
    const ASolver& s = *asolver_;
    // solve M w = c  using recorded reduction: rhs' = R c, then w[pivcol[i]] = rhs'[i]
    std::vector<int> cd(k);
    {
        std::uint64_t v = c;
        for (int i = 0; i < k; ++i) {
            cd[i] = int(v % p);
            v /= p;
        }
    }
    std::vector<int> rhs(k, 0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) rhs[i] = (rhs[i] + s.rowops[i * k + j] * cd[j]) % p;
    std::vector<int> w(k, 0);
    for (size_t i = 0; i < s.pivcol.size(); ++i) w[s.pivcol[i]] = rhs[i];
    elt cand = 0;
    for (int i = 0; i < k; ++i) cand += std::uint64_t(w[i]) * powp_[i];
    if (sub(frob(cand), cand) != c) return false; // inconsistent (trace != 0 handled above)
    // normalize to least of the p solutions cand + j
    elt best = cand;
    for (int j = 1; j < p; ++j) {
        elt alt = add(cand, from_int(j));
        if (alt < best) best = alt;
    }
    out = best;
    return true;
}

std::vector<int> Field::coeffs(elt a) const {
    std::vector<int> c(k);
    std::uint64_t v = a;
    for (int i = 0; i < k; ++i) {
        c[i] = int(v % p);
        v /= p;
    }
    return c;
}

elt Field::from_coeffs(const std::vector<int>& c) const {
    if (int(c.size()) > k) throw Error("ff", "element", "coefficient vector too long");
    elt r = 0;
    for (size_t i = 0; i < c.size(); ++i) {
        int d = ((c[i] % p) + p) % p;
        r += std::uint64_t(d) * powp_[i];
    }
    return r;
}

std::string Field::to_string(elt a) const {
    if (k == 1) return std::to_string(a);
    if (a == 0) return "0";
    auto c = coeffs(a);
    std::string s;
    for (int i = k - 1; i >= 0; --i) {
        if (!c[i]) continue;
        if (!s.empty()) s += "+";
        if (i == 0)
            s += std::to_string(c[i]);
        else {
            if (c[i] != 1) s += std::to_string(c[i]);
            s += "a";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

std::vector<elt> enumerate(const Field& F) {
    if (F.q > kDefaultEnumBound) throw Error("ff", "enumerate", "field exceeds enumeration bound");
    std::vector<elt> r(F.q);
    std::iota(r.begin(), r.end(), 0);
    return r;
}

// ---------------------------------------------------------------- Embedding

namespace {

// polynomial helpers over an arbitrary Field (coeff vectors of elt, c0..cn)
using FPoly = std::vector<elt>;

void fp_trim(FPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

FPoly fp_mulmod(const Field& F, const FPoly& a, const FPoly& b, const FPoly& m) {
    if (a.empty() || b.empty()) return {};
    FPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            if (b[j]) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    // reduce mod m (monic assumed after normalization)
    int dm = int(m.size()) - 1;
    while (int(r.size()) - 1 >= dm) {
        elt c = r.back();
        int sh = int(r.size()) - 1 - dm;
        if (c != 0)
            for (int i = 0; i <= dm; ++i) r[sh + i] = F.sub(r[sh + i], F.mul(c, m[i]));
        fp_trim(r);
        if (r.empty()) break;
    }
    return r;
}

FPoly fp_monic(const Field& F, FPoly a) {
    fp_trim(a);
    if (a.empty()) return a;
    elt li = F.inv(a.back());
    for (auto& c : a) c = F.mul(c, li);
    return a;
}

FPoly fp_gcd(const Field& F, FPoly a, FPoly b) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        // a mod b
        FPoly m = fp_monic(F, b);
        FPoly r = a;
        int dm = int(m.size()) - 1;
        while (int(r.size()) - 1 >= dm) {
            elt c = r.back();
            int sh = int(r.size()) - 1 - dm;
            if (c != 0)
                for (int i = 0; i <= dm; ++i) r[sh + i] = F.sub(r[sh + i], F.mul(c, m[i]));
            fp_trim(r);
            if (r.empty()) break;
        }
        a = std::move(b);
        b = std::move(r);
    }
    return fp_monic(F, a);
}

FPoly fp_powmod(const Field& F, FPoly base, std::uint64_t e, const FPoly& m) {
    FPoly r = {1};
    while (e) {
        if (e & 1) r = fp_mulmod(F, r, base, m);
        base = fp_mulmod(F, base, base, m);
        e >>= 1;
    }
    return r;
}

// All roots in F of a squarefree-ish polynomial f over F (deterministic).
std::vector<elt> fp_roots(const Field& F, FPoly f) {
    std::vector<elt> out;
    f = fp_monic(F, f);
    if (f.empty()) throw InternalError("root finding on zero polynomial");
    // strip x | f
    while (f.size() > 1 && f[0] == 0) {
        out.push_back(0);
        f.erase(f.begin());
    }
    if (f.size() <= 1) return out;
    // g = gcd(f, x^q - x): product of distinct linear factors
    // x^q mod f via p-power chain
    FPoly xq = {0, 1};
    for (int i = 0; i < F.k; ++i) xq = fp_powmod(F, xq, std::uint64_t(F.p), f);
    FPoly d = xq;
    if (d.size() < 2) d.resize(2, 0);
    d[1] = F.sub(d[1], 1);
    fp_trim(d);
    FPoly g = fp_gcd(F, f, d);
    if (g.size() <= 1) return out;

    // split g into linear factors deterministically
    std::vector<FPoly> work{g};
    std::uint64_t shift = 0;
    while (!work.empty()) {
        FPoly h = work.back();
        work.pop_back();
        if (h.size() == 2) {
            out.push_back(F.neg(h[0]));
            continue;
        }
        bool split = false;
        for (std::uint64_t attempt = 0; attempt < F.q + 64 && !split; ++attempt) {
            elt c = elt((shift + attempt) % F.q);
            FPoly probe;
            if (F.p == 2) {
                // trace polynomial T(c*x) = sum (c x)^(2^i)
                FPoly cx = {0, c ? c : 1};
                FPoly acc = {0};
                FPoly term = cx;
                for (int i = 0; i < F.k; ++i) {
                    acc.resize(std::max(acc.size(), term.size()), 0);
                    for (size_t t = 0; t < term.size(); ++t) acc[t] = F.add(acc[t], term[t]);
                    term = fp_mulmod(F, term, term, h);
                }
                fp_trim(acc);
                probe = acc;
            } else {
                FPoly xc = {c, 1};
                probe = fp_powmod(F, xc, (F.q - 1) / 2, h);
                if (probe.empty()) probe = {0};
                probe[0] = F.sub(probe[0], 1);
                fp_trim(probe);
            }
            if (probe.empty()) continue;
            FPoly g1 = fp_gcd(F, h, probe);
            if (g1.size() > 1 && g1.size() < h.size()) {
                // divide h by g1
                FPoly quot;
                FPoly rem = h;
                int dg = int(g1.size()) - 1;
                quot.assign(h.size() - g1.size() + 1, 0);
                while (int(rem.size()) - 1 >= dg) {
                    elt cc = rem.back();
                    int sh = int(rem.size()) - 1 - dg;
                    quot[sh] = cc;
                    for (int i = 0; i <= dg; ++i) rem[sh + i] = F.sub(rem[sh + i], F.mul(cc, g1[i]));
                    fp_trim(rem);
                    if (rem.empty()) break;
                }
                work.push_back(g1);
                work.push_back(quot);
                split = true;
                shift += attempt + 1;
            }
        }
        if (!split) throw InternalError("deterministic root splitting failed");
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

Embedding::Embedding(FieldPtr src, FieldPtr dst) : src_(std::move(src)), dst_(std::move(dst)) {
    if (src_->p != dst_->p) throw Error("ff", "embed", "incompatible characteristics");
    if (dst_->k % src_->k != 0)
        throw Error("ff", "embed",
                    std::to_string(src_->k) + " does not divide " + std::to_string(dst_->k));
    if (src_->same(*dst_)) {
        root_ = src_->k > 1 ? elt(src_->p) : 0; // 'a' itself, i.e. x -> packed p
        if (src_->k == 1) root_ = 0;
    } else {
        FPoly m(src_->modulus.size());
        for (size_t i = 0; i < m.size(); ++i) m[i] = dst_->from_int(src_->modulus[i]);
        auto roots = fp_roots(*dst_, m);
        if (roots.empty()) throw InternalError("modulus has no root in extension");
        root_ = roots.front();
    }
    root_pow_.resize(src_->k);
    root_pow_[0] = 1;
    for (int i = 1; i < src_->k; ++i) root_pow_[i] = dst_->mul(root_pow_[i - 1], root_);
    if (src_->q <= (1u << 16)) {
        tabledmap_ = true;
        table_.resize(src_->q);
        for (elt a = 0; a < src_->q; ++a) {
            elt r = 0;
            std::uint64_t v = a;
            for (int i = 0; i < src_->k; ++i) {
                int d = int(v % src_->p);
                v /= src_->p;
                if (d) r = dst_->add(r, dst_->mul(dst_->from_int(d), root_pow_[i]));
            }
            table_[a] = std::uint32_t(r);
        }
    }
}

elt Embedding::map(elt a) const {
    if (tabledmap_) return table_[a];
    elt r = 0;
    std::uint64_t v = a;
    for (int i = 0; i < src_->k; ++i) {
        int d = int(v % src_->p);
        v /= src_->p;
        if (d) r = dst_->add(r, dst_->mul(dst_->from_int(d), root_pow_[i]));
    }
    return r;
}

bool Embedding::preimage(elt b, elt& out) const {
    // solve sum d_i root^i = b over prime-field digits
    int p = src_->p;
    int K = dst_->k, k = src_->k;
    std::vector<int> M(K * k);
    for (int j = 0; j < k; ++j) {
        auto c = dst_->coeffs(root_pow_[j]);
        for (int i = 0; i < K; ++i) M[i * k + j] = c[i];
    }
    std::vector<int> rhs = dst_->coeffs(b);
    // gaussian elimination
    std::vector<int> piv(k, -1);
    int row = 0;
    for (int col = 0; col < k && row < K; ++col) {
        int sel = -1;
        for (int i = row; i < K; ++i)
            if (M[i * k + col]) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        for (int j = 0; j < k; ++j) std::swap(M[sel * k + j], M[row * k + j]);
        std::swap(rhs[sel], rhs[row]);
        int pv = M[row * k + col], pinv = 1;
        for (int i = 1; i < p; ++i)
            if (pv * i % p == 1) pinv = i;
        for (int j = 0; j < k; ++j) M[row * k + j] = M[row * k + j] * pinv % p;
        rhs[row] = rhs[row] * pinv % p;
        for (int i = 0; i < K; ++i) {
            if (i == row) continue;
            int f = M[i * k + col];
            if (!f) continue;
            for (int j = 0; j < k; ++j) M[i * k + j] = ((M[i * k + j] - f * M[row * k + j]) % p + p) % p;
            rhs[i] = ((rhs[i] - f * rhs[row]) % p + p) % p;
        }
        piv[col] = row;
        ++row;
    }
    std::vector<int> sol(k, 0);
    for (int col = 0; col < k; ++col)
        if (piv[col] >= 0) sol[col] = rhs[piv[col]];
    // rows beyond rank must be consistent
    elt cand = src_->from_coeffs(sol);
    if (map(cand) != b) return false;
    out = cand;
    return true;
}

EmbeddingPtr get_embedding(const FieldPtr& src, const FieldPtr& dst) {
    std::lock_guard<std::mutex> lk(g_reg_mutex);
    auto key = std::make_pair(src.get(), dst.get());
    auto it = g_embeddings.find(key);
    if (it != g_embeddings.end()) return it->second;
    auto e = std::make_shared<const Embedding>(src, dst);
    g_embeddings[key] = e;
    return e;
}

} // namespace hunt::ff
