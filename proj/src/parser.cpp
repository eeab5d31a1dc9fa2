// Equation parser: the displayed-equation grammar over F_q.
//
//   input    := equation (';' equation)*
//   equation := expr '=' expr
//   expr     := ('-')? term (('+'|'-') term)*
//   term     := factor (factor | ('*'|'/') factor)*   (juxtaposition multiplies)
//   factor   := base ('^' nat)?
//   base     := '(' expr ')' | nat | var
//   var      := x | y | z | a | w<digits>

#include <array>
#include <cctype>
#include <map>

#include "hunt/curves.hpp"

namespace hunt::curves {

namespace {

constexpr int NV = 8; // x, y, z, w1..w5
using Exp = std::array<int, NV>;

struct MPoly {
    ff::FieldPtr F;
    std::map<Exp, ff::elt> t;
    explicit MPoly(ff::FieldPtr f) : F(std::move(f)) {}
    static MPoly constant(ff::FieldPtr F, ff::elt c) {
        MPoly r(F);
        if (c) r.t[Exp{}] = c;
        return r;
    }
    static MPoly var(ff::FieldPtr F, int i) {
        MPoly r(F);
        Exp e{};
        e[i] = 1;
        r.t[e] = 1;
        return r;
    }
    bool is_zero() const { return t.empty(); }
    MPoly operator+(const MPoly& o) const {
        MPoly r = *this;
        for (auto& [e, c] : o.t) {
            auto it = r.t.find(e);
            ff::elt v = F->add(it == r.t.end() ? 0 : it->second, c);
            if (v)
                r.t[e] = v;
            else if (it != r.t.end())
                r.t.erase(e);
        }
        return r;
    }
    MPoly operator-() const {
        MPoly r = *this;
        for (auto& [e, c] : r.t) c = F->neg(c);
        return r;
    }
    MPoly operator-(const MPoly& o) const { return *this + (-o); }
    MPoly operator*(const MPoly& o) const {
        MPoly r(F);
        for (auto& [e1, c1] : t)
            for (auto& [e2, c2] : o.t) {
                Exp e{};
                for (int i = 0; i < NV; ++i) e[i] = e1[i] + e2[i];
                ff::elt v = F->add(r.t.count(e) ? r.t[e] : 0, F->mul(c1, c2));
                if (v)
                    r.t[e] = v;
                else
                    r.t.erase(e);
            }
        return r;
    }
    MPoly pow(int n) const {
        MPoly r = constant(F, 1), b = *this;
        while (n > 0) {
            if (n & 1) r = r * b;
            if (n > 1) b = b * b;
            n >>= 1;
        }
        return r;
    }
    bool uses(int i) const {
        for (auto& [e, c] : t)
            if (e[i]) return true;
        return false;
    }
    int deg_in(int i) const {
        int d = 0;
        for (auto& [e, c] : t) d = std::max(d, e[i]);
        return d;
    }
};

struct MRat {
    MPoly num, den;
    MRat(MPoly n, MPoly d) : num(std::move(n)), den(std::move(d)) {}
    static MRat from(MPoly p) {
        auto F = p.F;
        return MRat(std::move(p), MPoly::constant(F, 1));
    }
    MRat operator+(const MRat& o) const { return MRat(num * o.den + o.num * den, den * o.den); }
    MRat operator-(const MRat& o) const { return MRat(num * o.den - o.num * den, den * o.den); }
    MRat operator*(const MRat& o) const { return MRat(num * o.num, den * o.den); }
    MRat operator/(const MRat& o) const {
        if (o.num.is_zero()) throw Error("curves", "parse_curve", "division by zero expression");
        return MRat(num * o.den, den * o.num);
    }

    MRat pow(int n) const { return MRat(num.pow(n), den.pow(n)); }
};

struct Token {
    enum Kind { Num, Var, Op, End } kind;
    std::string text;
    int pos;
};

struct Lexer {
    const std::string& s;
    size_t i = 0;
    explicit Lexer(const std::string& str) : s(str) {}
    Token next() {
        while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
        if (i >= s.size()) return {Token::End, "", int(i)};
        int pos = int(i);
        char c = s[i];
        if (std::isdigit((unsigned char)c)) {
            std::string n;
            while (i < s.size() && std::isdigit((unsigned char)s[i])) n += s[i++];
            return {Token::Num, n, pos};
        }
        if (c == 'w') {
            std::string v = "w";
            ++i;
            while (i < s.size() && std::isdigit((unsigned char)s[i])) v += s[i++];
            return {Token::Var, v, pos};
        }
        if (c == 'x' || c == 'y' || c == 'z' || c == 'a') {
            ++i;
            return {Token::Var, std::string(1, c), pos};
        }
        if (std::string("+-*/^()=;").find(c) != std::string::npos) {
            ++i;
            return {Token::Op, std::string(1, c), pos};
        }
        throw Error("curves", "parse_curve",
                    std::string("unexpected character '") + c + "' at position " + std::to_string(pos));
    }
};

struct Parser {
    std::vector<Token> toks;
    size_t at = 0;
    ff::FieldPtr F;

    const Token& peek() const { return toks[at]; }
    Token take() { return toks[at++]; }
    bool is_op(const char* o) const { return peek().kind == Token::Op && peek().text == o; }
    [[noreturn]] void fail(const std::string& what) const {
        throw Error("curves", "parse_curve",
                    what + " at position " + std::to_string(peek().pos));
    }

    int var_index(const std::string& v, int pos) {
        if (v == "x") return 0;
        if (v == "y") return 1;
        if (v == "z") return 2;
        if (v == "a") return -1; // constant symbol
        if (v.size() >= 2 && v[0] == 'w') {
            int n = std::stoi(v.substr(1));
            if (n < 1 || n > NV - 3)
                throw Error("curves", "parse_curve",
                            "tower variable out of range at position " + std::to_string(pos));
            return 2 + n; // w1 -> 3
        }
        if (v == "w")
            throw Error("curves", "parse_curve",
                        "bare 'w' is not a variable (use y or w1) at position " + std::to_string(pos));
        throw Error("curves", "parse_curve", "unknown symbol at position " + std::to_string(pos));
    }

    MRat parse_base() {
        if (is_op("(")) {
            take();
            MRat e = parse_expr();
            if (!is_op(")")) fail("expected ')'");
            take();
            return e;
        }
        if (peek().kind == Token::Num) {
            Token t = take();
            long long n = std::stoll(t.text);
            return MRat::from(MPoly::constant(F, F->from_int(n)));
        }
        if (peek().kind == Token::Var) {
            Token t = take();
            int vi = var_index(t.text, t.pos);
            if (vi == -1) {
                if (F->k == 1)
                    throw Error("curves", "parse_curve",
                                "the symbol a needs an extension field (position " +
                                    std::to_string(t.pos) + ")");
                // the root of the field modulus
                return MRat::from(MPoly::constant(F, ff::elt(F->p)));
            }
            return MRat::from(MPoly::var(F, vi));
        }
        fail("expected a factor");
    }

    MRat parse_factor() {
        MRat b = parse_base();
        if (is_op("^")) {
            take();
            if (peek().kind != Token::Num) fail("expected an integer exponent");
            Token t = take();
            int n = std::stoi(t.text);
            return b.pow(n);
        }
        return b;
    }

    bool factor_start() const {
        return peek().kind == Token::Num || peek().kind == Token::Var || is_op("(");
    }

    MRat parse_term() {
        MRat r = parse_factor();
        while (true) {
            if (is_op("*")) {
                take();
                r = r * parse_factor();
            } else if (is_op("/")) {
                take();
                r = r / parse_factor();
            } else if (factor_start()) {
                r = r * parse_factor();
            } else
                break;
        }
        return r;
    }

    MRat parse_expr() {
        bool neg = false;
        if (is_op("-")) {
            take();
            neg = true;
        } else if (is_op("+"))
            take();
        MRat r = parse_term();
        if (neg) r = MRat::from(MPoly::constant(F, 0)) - r;
        while (is_op("+") || is_op("-")) {
            bool minus = peek().text == "-";
            take();
            MRat t = parse_term();
            r = minus ? r - t : r + t;
        }
        return r;
    }
};

RatFun ratfun_from(const MPoly& num, const MPoly& den) {
    // num/den in x only
    auto F = num.F;
    auto to_poly = [&](const MPoly& m) {
        std::vector<ff::elt> c(m.deg_in(0) + 1, 0);
        for (auto& [e, v] : m.t) c[e[0]] = v;
        return Poly(F, c);
    };
    return RatFun(to_poly(num), to_poly(den));
}

} // namespace

CurvePtr parse_curve(const std::string& text, const ff::FieldPtr& F) {
    // split on ';'
    std::vector<std::pair<MRat, MRat>> eqs; // (lhs, rhs)
    std::vector<int> cover_vars;
    {
        Parser P;
        P.F = F;
        Lexer lx(text);
        while (true) {
            Token t = lx.next();
            P.toks.push_back(t);
            if (t.kind == Token::End) break;
        }
        while (!P.toks.empty() && P.peek().kind != Token::End) {
            MRat lhs = P.parse_expr();
            if (!P.is_op("=")) P.fail("expected '='");
            P.take();
            if (P.peek().kind == Token::End || P.is_op(";")) P.fail("missing right-hand side");
            MRat rhs = P.parse_expr();
            eqs.push_back({lhs, rhs});
            if (P.is_op(";")) {
                P.take();
                continue;
            }
            if (P.peek().kind != Token::End) P.fail("unexpected trailing input");
        }
        if (eqs.empty())
            throw Error("curves", "parse_curve", "empty input");
    }

    // classify
    bool uses_z = false;
    for (auto& [l, r] : eqs)
        if (l.num.uses(2) || l.den.uses(2) || r.num.uses(2) || r.den.uses(2)) uses_z = true;

    if (uses_z) {
        if (eqs.size() != 1)
            throw Error("curves", "parse_curve", "plane models take a single equation");
        auto& [lhs, rhs] = eqs[0];
        if (!rhs.num.is_zero())
            throw Error("curves", "parse_curve", "plane models must be given as F(x,y,z) = 0");
        MPoly N = lhs.num;
        if (lhs.den.deg_in(0) + lhs.den.deg_in(1) + lhs.den.deg_in(2) > 0)
            throw Error("curves", "parse_curve", "plane models must be polynomial");
        for (int i = 3; i < NV; ++i)
            if (N.uses(i))
                throw Error("curves", "parse_curve", "plane models use only x, y, z");
        int d = -1;
        for (auto& [e, c] : N.t) {
            int s = e[0] + e[1] + e[2];
            if (d < 0) d = s;
            if (s != d) throw Error("curves", "parse_curve", "plane equation is not homogeneous");
        }
        if (d < 1) throw Error("curves", "parse_curve", "zero or constant plane equation");
        TriForm T(F, d);
        for (auto& [e, c] : N.t) T.set_coeff(e[0], e[1], c);
        return CurveModel::make_plane(F, T);
    }

    // affine shapes: each equation in x and exactly one cover variable
    struct EqData {
        int var;
        MPoly N;
    };
    std::vector<EqData> data;
    for (auto& [lhs, rhs] : eqs) {
        MRat diff = lhs - rhs;
        MPoly N = diff.num;
        MPoly D = diff.den;
        int var = -1;
        for (int i = 1; i < NV; ++i) {
            if (i == 2) continue;
            if (N.uses(i) || D.uses(i)) {
                if (var >= 0 && var != i)
                    throw Error("curves", "parse_curve", "each equation takes one cover variable");
                var = i;
            }
        }
        if (var < 0) throw Error("curves", "parse_curve", "equation has no y or w variable");
        if (D.uses(var))
            throw Error("curves", "parse_curve", "denominators may only involve x");
        data.push_back({var, N});
    }

    int p = F->p;
    auto collect_coeffs = [&](const MPoly& N, int var) {
        // coefficients of var^j as (numerator MPoly in x)
        std::map<int, MPoly> byj;
        for (auto& [e, c] : N.t) {
            int j = e[var];
            Exp e2 = e;
            e2[var] = 0;
            auto it = byj.find(j);
            if (it == byj.end()) it = byj.insert({j, MPoly(F)}).first;
            auto& m = it->second;
            ff::elt v = F->add(m.t.count(e2) ? m.t[e2] : 0, c);
            if (v)
                m.t[e2] = v;
            else
                m.t.erase(e2);
        }
        return byj;
    };

    if (eqs.size() == 1) {
        auto& [var, N] = data[0];
        auto byj = collect_coeffs(N, var);
        int D = 0;
        for (auto& [j, m] : byj)
            if (!m.is_zero()) D = std::max(D, j);
        if (D == p) {
            // candidate Artin-Schreier: c_p (y^p - y) + c_0
            bool as_ok = true;
            for (int j = 2; j < p; ++j)
                if (byj.count(j) && !byj.at(j).is_zero()) as_ok = false;
            MPoly cp = byj.count(p) ? byj.at(p) : MPoly(F);
            MPoly c1 = byj.count(1) ? byj.at(1) : MPoly(F);
            if (!(c1 + cp).is_zero()) as_ok = false; // need c1 = -cp
            if (as_ok) {
                MPoly c0 = byj.count(0) ? byj.at(0) : MPoly(F);
                RatFun f = ratfun_from(-c0, cp);
                return CurveModel::make_tower(F, {f});
            }
        }
        if (D == 2) {
            MPoly c2 = byj.count(2) ? byj.at(2) : MPoly(F);
            MPoly c1 = byj.count(1) ? byj.at(1) : MPoly(F);
            MPoly c0 = byj.count(0) ? byj.at(0) : MPoly(F);
            RatFun H = ratfun_from(c1, c2);
            RatFun FFr = ratfun_from(-c0, c2);
            // clear denominators: Y = w y with w = lcm(den H, den FF)
            Poly w = (H.den() * FFr.den()) / poly::gcd(H.den(), FFr.den());
            RatFun wr(w);
            RatFun h = H * wr;
            RatFun fr = FFr * wr * wr;
            if (!h.is_poly() || !fr.is_poly()) throw InternalError("denominator clearing failed");
            return CurveModel::make_hyperelliptic(F, h.num().scaled(F->inv(h.den().coeff(0))),
                                                  fr.num().scaled(F->inv(fr.den().coeff(0))));
        }
        throw Error("curves", "parse_curve", "equation matches no supported shape");
    }

    // tower with several equations
    std::vector<RatFun> fs;
    for (auto& [var, N] : data) {
        auto byj = collect_coeffs(N, var);
        int D = 0;
        for (auto& [j, m] : byj)
            if (!m.is_zero()) D = std::max(D, j);
        if (D != p)
            throw Error("curves", "parse_curve", "tower equations must have degree p in the w variable");
        for (int j = 2; j < p; ++j)
            if (byj.count(j) && !byj.at(j).is_zero())
                throw Error("curves", "parse_curve", "tower equations must be w^p - w = f");
        MPoly cp = byj.count(p) ? byj.at(p) : MPoly(F);
        MPoly c1 = byj.count(1) ? byj.at(1) : MPoly(F);
        if (!(c1 + cp).is_zero())
            throw Error("curves", "parse_curve", "tower equations must be w^p - w = f");
        MPoly c0 = byj.count(0) ? byj.at(0) : MPoly(F);
        fs.push_back(ratfun_from(-c0, cp));
    }
    return CurveModel::make_tower(F, fs);
}

} // namespace hunt::curves
