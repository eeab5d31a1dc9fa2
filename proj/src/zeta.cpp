#include "hunt/zeta.hpp"

#include <cmath>
#include <complex>

namespace hunt::zeta {

namespace {
Int ipow(std::uint64_t b, int e) {
    Int r = 1;
    while (e-- > 0) r *= b;
    return r;
}
} // namespace

LPolynomial::LPolynomial(std::uint64_t q, int g, std::vector<Int> coeffs)
    : q_(q), g_(g), a_(std::move(coeffs)) {
    if (int(a_.size()) != 2 * g_ + 1) throw Error("zeta", "lpolynomial", "coefficient count must be 2g+1");
    validate();
}

LPolynomial LPolynomial::from_counts(const std::vector<std::int64_t>& counts, std::uint64_t q, int g) {
    if (int(counts.size()) != g)
        throw Error("zeta", "l_from_counts", "need exactly g point counts");
    // power sums s_n = q^n + 1 - N_n, Weil: s_n^2 <= 4 g^2 q^n
    std::vector<Int> s(g + 1);
    for (int n = 1; n <= g; ++n) {
        s[n] = ipow(q, n) + 1 - counts[n - 1];
        if (s[n] * s[n] > Int(4) * g * g * ipow(q, n))
            throw Error("zeta", "l_from_counts",
                        "count N_" + std::to_string(n) + " violates the Weil bound");
    }
    // Newton: e_k = (-1)^(k-1) (s_k - sum_{i=1}^{k-1} (-1)^(i-1) e_i s_{k-i}) / k
    std::vector<Int> e(g + 1);
    e[0] = 1;
    for (int k = 1; k <= g; ++k) {
        Int acc = s[k];
        for (int i = 1; i < k; ++i) {
            Int term = e[i] * s[k - i];
            if ((i - 1) % 2 == 0)
                acc -= term;
            else
                acc += term;
        }
        if ((k - 1) % 2 == 1) acc = -acc;
        if (acc % k != 0)
            throw Error("zeta", "l_from_counts", "counts are inconsistent (non-integral coefficient)");
        e[k] = acc / k;
    }
    std::vector<Int> a(2 * g + 1);
    a[0] = 1;
    for (int k = 1; k <= g; ++k) a[k] = (k % 2 == 0) ? e[k] : -e[k];
    for (int j = g + 1; j <= 2 * g; ++j) a[j] = ipow(q, j - g) * a[2 * g - j];
    return LPolynomial(q, g, std::move(a));
}

Int LPolynomial::count(int n) const {
    if (n < 1) throw Error("zeta", "counts_from_l", "extension degree must be >= 1");
    // p_k = sum_{i=1}^{min(k-1,2g)} (-1)^(i-1) e_i p_{k-i} + ((-1)^(k-1) k e_k if k <= 2g)
    int m = 2 * g_;
    std::vector<Int> e(m + 1);
    for (int i = 0; i <= m; ++i) e[i] = (i % 2 == 0) ? a_[i] : -a_[i];
    std::vector<Int> p(n + 1);
    for (int k = 1; k <= n; ++k) {
        Int acc = 0;
        for (int i = 1; i <= std::min(k - 1, m); ++i) {
            Int term = e[i] * p[k - i];
            if ((i - 1) % 2 == 0)
                acc += term;
            else
                acc -= term;
        }
        if (k <= m) {
            Int term = Int(k) * e[k];
            if ((k - 1) % 2 == 0)
                acc += term;
            else
                acc -= term;
        }
        p[k] = acc;
    }
    return ipow(q_, n) + 1 - p[n];
}

std::int64_t LPolynomial::count_i64(int n) const {
    Int c = count(n);
    if (c < 0 || c > Int(std::int64_t(1) << 62))
        throw Error("zeta", "counts_from_l", "count does not fit in 64 bits");
    return std::int64_t(c);
}

Int LPolynomial::class_number() const {
    Int r = 0;
    for (auto& c : a_) r += c;
    return r;
}

Int resultant(std::vector<Int> A, std::vector<Int> B) {
    auto trim = [](std::vector<Int>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    };
    trim(A);
    trim(B);
    if (A.empty() || B.empty()) return 0;
    int n = int(A.size()) - 1, m = int(B.size()) - 1;
    if (n == 0) {
        Int r = 1;
        for (int i = 0; i < m; ++i) r *= A[0];
        return r;
    }
    if (m == 0) {
        Int r = 1;
        for (int i = 0; i < n; ++i) r *= B[0];
        return r;
    }
    // Sylvester matrix, Bareiss fraction-free elimination
    int N = n + m;
    std::vector<Int> M(N * N, 0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) M[i * N + i + j] = A[n - j];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) M[(m + i) * N + i + j] = B[m - j];
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < N - 1; ++k) {
        if (M[k * N + k] == 0) {
            int sel = -1;
            for (int i = k + 1; i < N; ++i)
                if (M[i * N + k] != 0) {
                    sel = i;
                    break;
                }
            if (sel < 0) return 0;
            for (int j = 0; j < N; ++j) std::swap(M[k * N + j], M[sel * N + j]);
            sign = -sign;
        }
        for (int i = k + 1; i < N; ++i) {
            for (int j = k + 1; j < N; ++j) {
                Int v = M[i * N + j] * M[k * N + k] - M[i * N + k] * M[k * N + j];
                M[i * N + j] = v / prev; // exact division (Bareiss)
            }
            M[i * N + k] = 0;
        }
        prev = M[k * N + k];
    }
    return sign > 0 ? M[(N - 1) * N + (N - 1)] : -M[(N - 1) * N + (N - 1)];
}

Int LPolynomial::extension_index(int n) const {
    if (n < 1) throw Error("zeta", "extension_index", "n must be >= 1");
    if (n == 1) return 1;
    std::vector<Int> tn(n + 1, 0);
    tn[0] = -1;
    tn[n] = 1;
    Int res = resultant(tn, a_);
    Int h = class_number();
    if (h == 0 || res % h != 0)
        throw InternalError("extension index is not an integer multiple of the class number");
    Int d = res / h;
    if (d <= 0) throw InternalError("extension index must be positive");
    return d;
}

LPolynomial LPolynomial::base_change(int n) const {
    std::vector<std::int64_t> counts(g_);
    for (int i = 1; i <= g_; ++i) {
        Int c = count(n * i);
        if (c > Int(std::int64_t(1) << 62)) throw Error("zeta", "base_change", "counts overflow");
        counts[i - 1] = std::int64_t(c);
    }
    std::uint64_t qn = 1;
    for (int i = 0; i < n; ++i) {
        if (qn > (std::uint64_t(1) << 62) / q_) throw Error("zeta", "base_change", "q^n overflows");
        qn *= q_;
    }
    return from_counts(counts, qn, g_);
}

void LPolynomial::validate() const {
    if (a_[0] != 1) throw Error("zeta", "lpolynomial", "a_0 must be 1");
    if (a_[2 * g_] != ipow(q_, g_)) throw Error("zeta", "lpolynomial", "a_2g must be q^g");
    for (int i = 0; i <= g_; ++i)
        if (a_[2 * g_ - i] != ipow(q_, g_ - i) * a_[i])
            throw Error("zeta", "lpolynomial", "functional equation fails");
    if (class_number() < 1) throw Error("zeta", "lpolynomial", "L(1) must be >= 1");
    if (g_ == 0) return;
    // numeric: all roots of L lie on |t| = q^(-1/2).  Durand-Kerner on the
    // squarefree part (repeated roots stall the iteration otherwise).
    auto trim = [](std::vector<Int>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    };
    auto content = [](const std::vector<Int>& v) {
        Int g = 0;
        for (auto& x : v) g = boost::multiprecision::gcd(g, x < 0 ? Int(-x) : x);
        return g == 0 ? Int(1) : g;
    };
    auto primpart = [&](std::vector<Int> v) {
        Int ct = content(v);
        for (auto& x : v) x /= ct;
        return v;
    };
    // pseudo-remainder gcd over Z
    std::vector<Int> A = a_, B(2 * g_);
    for (int i = 1; i <= 2 * g_; ++i) B[i - 1] = Int(i) * a_[i];
    trim(A);
    trim(B);
    while (!B.empty()) {
        // pseudo-remainder of A by B
        std::vector<Int> R = A;
        int db = int(B.size()) - 1;
        while (int(R.size()) - 1 >= db && !R.empty()) {
            int dr = int(R.size()) - 1;
            Int lead = R.back();
            std::vector<Int> nR(R.size(), 0);
            for (size_t i = 0; i < R.size(); ++i) nR[i] = R[i] * B.back();
            for (int i = 0; i <= db; ++i) nR[dr - db + i] -= lead * B[i];
            R = primpart(nR);
            trim(R);
        }
        A = B;
        B = R;
    }
    std::vector<Int> sf;
    {
        // divide a_ by the gcd A (exact over Q; do rational-free synthetic division)
        std::vector<Int> num = a_;
        trim(num);
        std::vector<Int> den = primpart(A);
        if (den.empty()) den = {1};
        if (int(den.size()) == 1) {
            sf = num;
        } else {
            // long division with rational safety: multiply num by den.lead^k first
            int k = int(num.size()) - int(den.size()) + 1;
            Int scale = 1;
            for (int i = 0; i < k; ++i) scale *= den.back();
            for (auto& x : num) x *= scale;
            std::vector<Int> quo(k, 0);
            while (int(num.size()) >= int(den.size()) && !num.empty()) {
                int sh = int(num.size()) - int(den.size());
                Int f = num.back() / den.back();
                quo[sh] = f;
                for (size_t i = 0; i < den.size(); ++i) num[sh + i] -= f * den[i];
                trim(num);
            }
            sf = primpart(quo);
        }
        trim(sf);
    }
    int d = int(sf.size()) - 1;
    if (d <= 0) return;
    std::vector<std::complex<double>> c(d + 1);
    for (int i = 0; i <= d; ++i) c[i] = std::complex<double>(double(sf[i]), 0.0);
    for (int i = 0; i <= d; ++i) c[i] /= std::complex<double>(double(sf[d]), 0.0);
    std::vector<std::complex<double>> r(d);
    std::complex<double> seed(0.4, 0.9);
    r[0] = seed;
    for (int i = 1; i < d; ++i) r[i] = r[i - 1] * seed;
    (void)g_;
    for (int it = 0; it < 500; ++it) {
        double delta = 0;
        for (int i = 0; i < d; ++i) {
            std::complex<double> num = c[d];
            for (int j = d - 1; j >= 0; --j) num = num * r[i] + c[j];
            std::complex<double> den(1, 0);
            for (int j = 0; j < d; ++j)
                if (j != i) den *= (r[i] - r[j]);
            std::complex<double> step = num / den;
            r[i] -= step;
            delta = std::max(delta, std::abs(step));
        }
        if (delta < 1e-13) break;
    }
    double target = 1.0 / std::sqrt(double(q_));
    for (int i = 0; i < d; ++i)
        if (std::abs(std::abs(r[i]) - target) > 1e-9)
            throw Error("zeta", "lpolynomial", "a root is off the Weil circle |t| = q^{-1/2}");
}

std::string LPolynomial::to_string_ascending(const std::string& var) const {
    std::string s;
    for (int i = 0; i <= 2 * g_; ++i) {
        const Int& c = a_[i];
        if (c == 0) continue;
        Int abs = c < 0 ? -c : c;
        if (s.empty())
            s += (c < 0 ? "-" : "");
        else
            s += (c < 0 ? " - " : " + ");
        bool unit = (abs == 1);
        if (i == 0 || !unit) s += abs.str();
        if (i >= 1) {
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s.empty() ? "0" : s;
}

std::string LPolynomial::to_string_descending(const std::string& var) const {
    std::string s;
    for (int i = 2 * g_; i >= 0; --i) {
        const Int& c = a_[i];
        if (c == 0) continue;
        Int abs = c < 0 ? -c : c;
        if (s.empty())
            s += (c < 0 ? "-" : "");
        else
            s += (c < 0 ? " - " : " + ");
        bool unit = (abs == 1);
        if (i == 0 || !unit) s += abs.str();
        if (i >= 1) {
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s.empty() ? "0" : s;
}

} // namespace hunt::zeta
