#include "hunt/search.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "json.hpp"

namespace hunt::search {

using covers::ASCoverSpec;
using covers::CoverReport;
using covers::Subgroup;
using curves::CurveModel;
using poly::Poly;
using poly::RatFun;
using poly::TriForm;
using ff::elt;
using ff::FieldPtr;

// ---------------------------------------------------------- plane encoding

namespace {
// degree-4 monomial exponents in descending lexicographic order, x > y > z
std::vector<std::array<int, 3>> quartic_monomials() {
    std::vector<std::array<int, 3>> out;
    for (int a = 4; a >= 0; --a)
        for (int b = 4 - a; b >= 0; --b) out.push_back({a, b, 4 - a - b});
    return out;
}
} // namespace

curves::CurvePtr decode_plane_curve(std::uint64_t m, const FieldPtr& F) {
    if (F->p != 3 || F->k != 1)
        throw Error("search", "decode_plane_curve", "the encoding is defined over F_3");
    std::uint64_t limit = 1;
    for (int i = 0; i < 15; ++i) limit *= 3;
    if (m < 1 || m >= limit)
        throw Error("search", "decode_plane_curve", "code out of range [1, 3^15)");
    auto mons = quartic_monomials();
    TriForm T(F, 4);
    std::uint64_t v = m;
    for (int i = 0; i < 15; ++i) {
        int c = int(v % 3);
        v /= 3;
        if (c) T.set_coeff(mons[i][0], mons[i][1], elt(c));
    }
    if (T.is_zero()) throw Error("search", "decode_plane_curve", "zero polynomial");
    return CurveModel::make_plane(F, T); // singular models are rejected here
}

std::uint64_t encode_plane_curve(const CurvePtr& C) {
    if (C->shape != curves::Shape::Plane || C->plane_form.degree() != 4 || C->F->p != 3 ||
        C->F->k != 1)
        throw Error("search", "encode_plane_curve", "not a plane quartic over F_3");
    auto mons = quartic_monomials();
    std::uint64_t m = 0, pw = 1;
    for (int i = 0; i < 15; ++i) {
        m += std::uint64_t(C->plane_form.coeff(mons[i][0], mons[i][1])) * pw;
        pw *= 3;
    }
    return m;
}

// ------------------------------------------------------------- AS censuses

namespace {

struct ASData {
    // finite pole terms A/pi^m, plus a polynomial part (pole at infinity) or a constant
    struct Term {
        Poly pi;
        int m;
        Poly A;
    };
    std::vector<Term> terms;
    Poly polypart; // includes the constant term; empty unless there is an infinite pole
    elt constant = 0;
    bool inf_pole = false;

    RatFun to_ratfun(const FieldPtr& F) const {
        RatFun acc = inf_pole ? RatFun(polypart) : RatFun(Poly::constant(F, constant));
        for (auto& t : terms) acc = acc + RatFun(t.A, t.pi.pow(t.m));
        return acc;
    }
    std::string id(const FieldPtr& F) const { return to_ratfun(F).to_string(); }
};

// N_n for the degree-p cover w^p - w = f of the x-line
std::int64_t as_count(const ASData& d, const FieldPtr& F, int n) {
    auto E = (n == 1) ? F : ff::get_field(F->p, F->k * n);
    auto emb = ff::get_embedding(F, E);
    int p = F->p;
    std::int64_t N = 0;
    std::vector<std::vector<elt>> pis, As, poly1;
    for (auto& t : d.terms) {
        std::vector<elt> pc, ac;
        for (int i = 0; i <= t.pi.deg(); ++i) pc.push_back(emb->map(t.pi.coeff(i)));
        for (int i = 0; i <= t.A.deg(); ++i) ac.push_back(emb->map(t.A.coeff(i)));
        pis.push_back(pc);
        As.push_back(ac);
    }
    std::vector<elt> pp;
    for (int i = 0; i <= d.polypart.deg(); ++i) pp.push_back(emb->map(d.polypart.coeff(i)));
    auto horner = [&](const std::vector<elt>& c, elt x) {
        elt r = 0;
        for (int i = int(c.size()) - 1; i >= 0; --i) r = E->add(E->mul(r, x), c[i]);
        return r;
    };
    for (elt x = 0; x < E->q; ++x) {
        bool ram = false;
        elt acc = d.inf_pole ? horner(pp, x) : emb->map(d.constant);
        for (size_t i = 0; i < pis.size() && !ram; ++i) {
            elt pv = horner(pis[i], x);
            if (pv == 0) {
                ram = true;
                break;
            }
            elt ppow = pv;
            for (int t = 1; t < d.terms[i].m; ++t) ppow = E->mul(ppow, pv);
            acc = E->add(acc, E->mul(horner(As[i], x), E->inv(ppow)));
        }
        if (ram)
            N += 1;
        else
            N += (E->trace_to_prime(acc) == 0) ? p : 0;
    }
    // infinity
    if (d.inf_pole)
        N += 1;
    else
        N += (E->trace_to_prime(emb->map(d.constant)) == 0) ? p : 0;
    return N;
}

// enumerate reduced pole configurations of total conductor degree D
struct CfgPart {
    int d, m;
}; // a place of degree d with reduced pole order m: contributes (m+1)d

void enumerate_as_family(const FieldPtr& F, int D, FamilyDescriptor::Dedup dedup,
                         std::uint64_t budget, std::vector<FamilyMember>& out) {
    if (F->p != 2)
        throw Error("search", "enumerate_family", "the Artin-Schreier census needs characteristic 2");
    if (D % 2 != 0 || D < 4) throw Error("search", "enumerate_family", "bad conductor degree");
    int g = (D - 2) / 2;
    // all part multisets
    std::vector<std::vector<CfgPart>> partitions;
    std::vector<CfgPart> kinds; // possible parts
    for (int d = 1; d <= D; ++d)
        for (int m = 1; (m + 1) * d <= D; m += 2) kinds.push_back({d, m});
    std::vector<CfgPart> cur;
    std::function<void(int, int)> rec = [&](int remaining, int from) {
        if (remaining == 0) {
            partitions.push_back(cur);
            return;
        }
        for (int i = from; i < int(kinds.size()); ++i) {
            int c = (kinds[i].m + 1) * kinds[i].d;
            if (c > remaining) continue;
            cur.push_back(kinds[i]);
            rec(remaining - c, i);
            cur.pop_back();
        }
    };
    rec(D, 0);
    std::map<std::vector<std::int64_t>, ASData> found; // counts signature -> first rep
    std::uint64_t tried = 0;
    (void)dedup;
    // place pools per degree
    auto places_of_degree = [&](int d) {
        std::vector<std::optional<Poly>> ps;
        if (d == 1) ps.push_back(std::nullopt); // infinity
        for (auto& pi : poly::monic_irreducibles(F, d)) ps.push_back(pi);
        return ps;
    };
    for (auto& parts : partitions) {
        // choose distinct places for the parts, then numerators
        std::vector<std::vector<std::optional<Poly>>> pools;
        for (auto& pt : parts) pools.push_back(places_of_degree(pt.d));
        std::vector<int> choice(parts.size(), 0);
        std::function<void(size_t)> assign = [&](size_t i) {
            if (tried > budget) throw Error("search", "enumerate_family", "budget exhausted");
            if (i == parts.size()) {
                // distinctness check
                std::set<std::string> used;
                for (size_t j = 0; j < parts.size(); ++j) {
                    auto& pl = pools[j][choice[j]];
                    std::string key = pl ? pl->to_string() : "inf";
                    if (!used.insert(key).second) return;
                }
                // numerators: iterate all
                ASData base;
                bool has_inf = false;
                int inf_m = 0;
                for (size_t j = 0; j < parts.size(); ++j) {
                    auto& pl = pools[j][choice[j]];
                    if (!pl) {
                        has_inf = true;
                        inf_m = parts[j].m;
                    } else
                        base.terms.push_back({*pl, parts[j].m, Poly(F)});
                }
                base.inf_pole = has_inf;
                // odometer over numerators (and the polynomial part / constant)
                std::vector<std::uint64_t> sizes;
                for (auto& t : base.terms) {
                    std::uint64_t s = 1;
                    for (int i2 = 0; i2 < t.m * t.pi.deg(); ++i2) s *= F->q;
                    sizes.push_back(s);
                }
                std::uint64_t csize = 1; // polynomial part or constant
                if (has_inf) {
                    for (int i2 = 0; i2 < inf_m + 1; ++i2) csize *= F->q;
                } else
                    csize = F->q;
                std::uint64_t total = csize;
                for (auto s : sizes) total *= s;
                for (std::uint64_t code = 0; code < total; ++code) {
                    if (++tried > budget)
                        throw Error("search", "enumerate_family", "budget exhausted");
                    std::uint64_t v = code;
                    ASData d2 = base;
                    bool valid = true;
                    for (size_t j = 0; j < d2.terms.size(); ++j) {
                        std::uint64_t a = v % sizes[j];
                        v /= sizes[j];
                        auto& t = d2.terms[j];
                        std::vector<elt> cs(t.m * t.pi.deg(), 0);
                        for (auto& c : cs) {
                            c = elt(a % F->q);
                            a /= F->q;
                        }
                        t.A = Poly(F, cs);
                        // exact pole order m needs v_pi(A) = 0
                        if (t.A.is_zero() || (t.A % t.pi).is_zero()) {
                            valid = false;
                            break;
                        }
                    }
                    if (!valid) continue;
                    if (has_inf) {
                        std::uint64_t a = v % csize;
                        std::vector<elt> cs(inf_m + 1, 0);
                        for (auto& c : cs) {
                            c = elt(a % F->q);
                            a /= F->q;
                        }
                        if (cs.back() == 0) continue; // exact degree
                        d2.polypart = Poly(F, cs);
                    } else {
                        d2.constant = elt(v % csize);
                    }
                    // counts and dedup
                    std::vector<std::int64_t> counts;
                    bool weil_ok = true;
                    for (int nn = 1; nn <= g; ++nn) {
                        std::int64_t Nn = as_count(d2, F, nn);
                        counts.push_back(Nn);
                    }
                    auto key = counts;
                    if (found.count(key)) continue;
                    try {
                        zeta::LPolynomial::from_counts(counts, F->q, g);
                    } catch (const Error&) {
                        weil_ok = false;
                    }
                    if (!weil_ok) continue;
                    found.emplace(key, d2);
                }
            } else {
                for (choice[i] = 0; choice[i] < int(pools[i].size()); ++choice[i]) assign(i + 1);
            }
        };
        assign(0);
    }
    for (auto& [counts, d2] : found) {
        FamilyMember m;
        m.id = d2.id(F);
        m.counts = counts;
        m.L = zeta::LPolynomial::from_counts(counts, F->q, g);
        out.push_back(std::move(m));
    }
    std::sort(out.begin(), out.end(),
              [](const FamilyMember& a, const FamilyMember& b) { return a.counts < b.counts; });
    // representatives (lazy curves): construct models now, they are few
    for (auto& m : out) {
        // parse the representative back through the front door
        m.curve = curves::parse_curve("y^2+y=" + m.id, F);
    }
}

void enumerate_hyp_family(const FieldPtr& F, int max_deg, std::uint64_t budget,
                          std::vector<FamilyMember>& out) {
    if (F->p == 2) throw Error("search", "enumerate_family", "odd characteristic expected");
    // f = lc * monic, squarefree, deg in [3, max_deg]
    elt nonsq = 0;
    for (elt a = 2; a < F->q; ++a) {
        elt r;
        if (!F->sqrt(a, r)) {
            nonsq = a;
            break;
        }
    }
    std::map<std::pair<int, std::vector<std::int64_t>>, Poly> found;
    std::uint64_t tried = 0;
    for (int D = 3; D <= max_deg; ++D) {
        int g = (D % 2 == 1) ? (D - 1) / 2 : D / 2 - 1;
        if (g < 1) continue;
        std::uint64_t total = 1;
        for (int i = 0; i < D; ++i) total *= F->q;
        for (elt lc : std::vector<elt>{1, nonsq}) {
            if (lc == 0) continue;
            for (std::uint64_t code = 0; code < total; ++code) {
                if (++tried > budget) throw Error("search", "enumerate_family", "budget exhausted");
                std::vector<elt> cs(D + 1, 0);
                std::uint64_t v = code;
                for (int i = 0; i < D; ++i) {
                    cs[i] = elt(v % F->q);
                    v /= F->q;
                }
                cs[D] = lc;
                Poly f(F, cs);
                if (!f.squarefree()) continue;
                // counts via the quadratic character
                std::vector<std::int64_t> counts;
                for (int nn = 1; nn <= g; ++nn) {
                    auto E = (nn == 1) ? F : ff::get_field(F->p, F->k * nn);
                    auto emb = ff::get_embedding(F, E);
                    std::int64_t N = 0;
                    for (elt x = 0; x < E->q; ++x) {
                        elt fv = f.eval_ext(x, *emb);
                        if (fv == 0)
                            N += 1;
                        else {
                            elt r;
                            N += E->sqrt(fv, r) ? 2 : 0;
                        }
                    }
                    if (D % 2 == 1)
                        N += 1;
                    else {
                        elt r;
                        N += E->sqrt(emb->map(lc), r) ? 2 : 0;
                    }
                    counts.push_back(N);
                }
                auto key = std::make_pair(g, counts);
                if (found.count(key)) continue;
                found.emplace(key, f);
            }
        }
    }
    for (auto& [key, f] : found) {
        FamilyMember m;
        m.id = "y^2=" + RatFun(f).to_string();
        m.counts = key.second;
        m.L = zeta::LPolynomial::from_counts(key.second, F->q, key.first);
        m.curve = CurveModel::make_hyperelliptic(F, Poly(F), f);
        out.push_back(std::move(m));
    }
    std::sort(out.begin(), out.end(), [](const FamilyMember& a, const FamilyMember& b) {
        if (a.L.genus() != b.L.genus()) return a.L.genus() < b.L.genus();
        return a.counts < b.counts;
    });
}

} // namespace

std::vector<FamilyMember> enumerate_family(const FamilyDescriptor& desc) {
    std::vector<FamilyMember> out;
    switch (desc.kind) {
    case FamilyDescriptor::Kind::Genus2ArtinSchreier:
        enumerate_as_family(desc.F, 6, desc.dedup, desc.budget, out);
        break;
    case FamilyDescriptor::Kind::ArtinSchreierByConductor:
        enumerate_as_family(desc.F, desc.conductor_degree, desc.dedup, desc.budget, out);
        break;
    case FamilyDescriptor::Kind::HyperellipticOdd:
        enumerate_hyp_family(desc.F, desc.max_deg, desc.budget, out);
        break;
    case FamilyDescriptor::Kind::PlaneQuarticCodes: {
        std::map<std::vector<std::int64_t>, FamilyMember> dedup;
        for (auto code : desc.codes) {
            CurvePtr C;
            try {
                C = decode_plane_curve(code, desc.F);
            } catch (const Error&) {
                continue; // singular or invalid codes are filtered out
            }
            FamilyMember m;
            m.curve = C;
            m.id = std::to_string(code);
            for (int nn = 1; nn <= 3; ++nn) m.counts.push_back(C->count_points(nn));
            m.L = zeta::LPolynomial::from_counts(m.counts, desc.F->q, 3);
            if (!dedup.count(m.counts)) dedup.emplace(m.counts, std::move(m));
        }
        for (auto& [k, m] : dedup) out.push_back(std::move(m));
        break;
    }
    }
    return out;
}

// ---------------------------------------------------------------- relations

std::vector<RelationVector> search_relations(const jacobian::ClassGroupStructure& G,
                                             const RelationBounds& bounds) {
    const CurvePtr& C = G.curve;
    std::vector<const Place*> places = C->places(1);
    for (auto* P : bounds.extra_places) places.push_back(P);
    int n = int(places.size());
    std::vector<std::vector<std::int64_t>> phis;
    for (auto* P : places) phis.push_back(jacobian::abel_jacobi(G, P));
    int p = C->F->p;
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) {
        total *= std::uint64_t(2 * bounds.max_abs + 1);
        if (total > bounds.budget)
            throw Error("search", "search_relations", "bounds exceed the search budget");
    }
    std::vector<RelationVector> out;
    std::vector<int> a(n, -bounds.max_abs);
    auto inv = G.invariants;
    while (true) {
        // degree and class filters
        long long deg = 0;
        for (int i = 0; i < n; ++i) deg += (long long)a[i] * places[i]->degree;
        if (deg == 0) {
            bool allzero = true;
            for (int i = 0; i < n; ++i)
                if (a[i]) allzero = false;
            if (!allzero) {
                bool classzero = true;
                for (size_t t = 0; t < inv.size() && classzero; ++t) {
                    long long s = 0;
                    for (int i = 0; i < n; ++i) s += (long long)a[i] * phis[i][t];
                    if (((s % inv[t]) + inv[t]) % inv[t] != 0) classzero = false;
                }
                if (classzero) {
                    Divisor D;
                    for (int i = 0; i < n; ++i) D.add(places[i], a[i]);
                    if (jacobian::is_principal(C, D)) {
                        RelationVector rv;
                        rv.places = places;
                        rv.coeffs = a;
                        rv.divisor = D;
                        int cond = 0;
                        std::int64_t pts = 0;
                        for (int i = 0; i < n; ++i) {
                            if (a[i] < 0) {
                                int m = -a[i];
                                if (m % p == 0) m -= 1; // reduction lowers it at least this far
                                cond += (m + 1) * places[i]->degree;
                                if (places[i]->degree == 1) pts += 1;
                            } else if (a[i] > 0 && places[i]->degree == 1)
                                pts += p;
                        }
                        rv.predicted_conductor = cond;
                        int gC = C->curve_genus();
                        rv.predicted_genus = p * (gC - 1) + 1 + (p - 1) * cond / 2;
                        rv.predicted_points = pts;
                        if (bounds.max_conductor == 0 || cond <= bounds.max_conductor)
                            out.push_back(std::move(rv));
                    }
                }
            }
        }
        int pos = n - 1;
        while (pos >= 0 && a[pos] == bounds.max_abs) a[pos--] = -bounds.max_abs;
        if (pos < 0) break;
        a[pos]++;
    }
    std::sort(out.begin(), out.end(), [](const RelationVector& x, const RelationVector& y) {
        if (x.predicted_points != y.predicted_points) return x.predicted_points > y.predicted_points;
        if (x.predicted_genus != y.predicted_genus) return x.predicted_genus < y.predicted_genus;
        return x.coeffs < y.coeffs;
    });
    return out;
}

// ---------------------------------------------------------------- subgroups

std::vector<SubgroupHit> search_subgroups(const std::vector<std::int64_t>& invariants,
                                          const std::vector<std::vector<std::int64_t>>& images,
                                          std::int64_t index_min, std::int64_t index_max) {
    std::int64_t h = 1;
    for (auto d : invariants) h *= d;
    if (h > 200000) throw Error("search", "search_subgroups", "group order exceeds the bound");
    int r = int(invariants.size());
    std::int64_t D = invariants.empty() ? 1 : invariants.back();
    // all elements of the (abstract) dual group, same invariants
    std::vector<std::vector<std::int64_t>> all;
    {
        std::vector<std::int64_t> v(r, 0);
        while (true) {
            all.push_back(v);
            int pos = r - 1;
            while (pos >= 0 && v[pos] == invariants[pos] - 1) v[pos--] = 0;
            if (pos < 0) break;
            v[pos]++;
        }
    }
    auto pair_val = [&](const std::vector<std::int64_t>& s, const std::vector<std::int64_t>& v) {
        long long acc = 0;
        for (int i = 0; i < r; ++i) acc += s[i] * v[i] % D * (D / invariants[i]) % D;
        return ((acc % D) + D) % D;
    };
    // subgroups of the dual with order in [index_min, index_max], by closure BFS
    struct Sub {
        std::vector<std::vector<std::int64_t>> els; // sorted
        std::vector<std::vector<std::int64_t>> gens;
    };
    std::map<std::vector<std::vector<std::int64_t>>, Sub> subs;
    {
        Sub triv;
        triv.els = {std::vector<std::int64_t>(r, 0)};
        subs[triv.els] = triv;
        // precompute element orders for pruning
        auto order_of = [&](const std::vector<std::int64_t>& v) {
            std::int64_t o = 1;
            for (int i = 0; i < r; ++i) {
                if (!v[i]) continue;
                std::int64_t d = invariants[i] / std::gcd(invariants[i], v[i]);
                o = std::lcm(o, d);
            }
            return o;
        };
        std::vector<Sub> frontier{triv};
        while (!frontier.empty()) {
            Sub s = frontier.back();
            frontier.pop_back();
            if (std::int64_t(s.els.size()) * 2 > index_max) continue; // cannot grow in range
            for (auto& x : all) {
                if (order_of(x) > index_max) continue;
                if (std::binary_search(s.els.begin(), s.els.end(), x)) continue;
                // closure of s.els and x, abort when too large
                std::set<std::vector<std::int64_t>> cl(s.els.begin(), s.els.end());
                std::vector<std::vector<std::int64_t>> work{x};
                cl.insert(x);
                bool toobig = false;
                while (!work.empty() && !toobig) {
                    auto w = work.back();
                    work.pop_back();
                    // add w to every element
                    std::vector<std::vector<std::int64_t>> adds;
                    for (auto& e : cl) {
                        std::vector<std::int64_t> u(r);
                        for (int i = 0; i < r; ++i) u[i] = (e[i] + w[i]) % invariants[i];
                        adds.push_back(u);
                    }
                    for (auto& u : adds)
                        if (cl.insert(u).second) {
                            work.push_back(u);
                            if (std::int64_t(cl.size()) > index_max) {
                                toobig = true;
                                break;
                            }
                        }
                }
                if (toobig) continue;
                Sub s2;
                s2.els.assign(cl.begin(), cl.end());
                if (subs.count(s2.els)) continue;
                s2.gens = s.gens;
                s2.gens.push_back(x);
                subs[s2.els] = s2;
                frontier.push_back(s2);
            }
        }
    }
    std::vector<SubgroupHit> out;
    for (auto& [els, s] : subs) {
        std::int64_t d = std::int64_t(els.size());
        if (d < index_min || d > index_max) continue;
        // annihilator in the group
        SubgroupHit hit;
        hit.index = d;
        hit.H.invariants = invariants;
        hit.H.gens = {};
        for (auto& v : all) {
            bool in = true;
            for (auto& g : s.gens)
                if (pair_val(g, v) != 0) {
                    in = false;
                    break;
                }
            if (in) hit.H.known_elements.push_back(v);
        }
        std::sort(hit.H.known_elements.begin(), hit.H.known_elements.end());
        hit.H.gens = hit.H.known_elements; // generators: the full list works
        if (std::int64_t(hit.H.known_elements.size()) * d != h)
            throw InternalError("annihilator size mismatch");
        for (auto& im : images) {
            std::vector<std::int64_t> rr(r);
            for (int i = 0; i < r; ++i) rr[i] = ((im[i] % invariants[i]) + invariants[i]) % invariants[i];
            if (std::binary_search(hit.H.known_elements.begin(), hit.H.known_elements.end(), rr))
                ++hit.covered;
        }
        out.push_back(std::move(hit));
    }
    std::sort(out.begin(), out.end(), [](const SubgroupHit& a, const SubgroupHit& b) {
        if (a.index * a.covered != b.index * b.covered) return a.index * a.covered > b.index * b.covered;
        if (a.index != b.index) return a.index < b.index;
        return a.H.known_elements < b.H.known_elements;
    });
    return out;
}

// -------------------------------------------------------------------- hunt

std::string HuntItem::json() const {
    nlohmann::json j;
    j["q"] = report.q;
    j["g"] = report.genus;
    j["N"] = report.points;
    j["bound_flag"] = report.lower_bound_only ? "lower" : "exact";
    j["certificate"] = report.kind == covers::CertKind::ExplicitAS
                           ? "explicit-AS"
                           : (report.kind == covers::CertKind::ClassFieldSubgroup
                                  ? "class-field-subgroup"
                                  : "class-field-extension");
    j["degree"] = report.degree;
    j["base"] = report.base_id;
    j["classification"] = records::to_string(vs_current);
    j["vs_baseline"] = records::to_string(vs_baseline);
    return j.dump();
}

std::string HuntReport::to_jsonl() const {
    std::string s;
    for (auto& it : items) s += it.json() + "\n";
    return s;
}

HuntReport hunt(const HuntConfig& cfg, const records::RecordSet& records) {
    HuntReport rep;
    auto push = [&](const CoverReport& r) {
        HuntItem it;
        it.report = r;
        it.vs_current = records.current.classify(r.q, r.genus, r.points);
        it.vs_baseline = records.baseline.classify(r.q, r.genus, r.points);
        if (it.vs_current == records::Classification::ExceedsUpper) rep.any_exceeds_upper = true;
        rep.items.push_back(std::move(it));
    };
    if (cfg.base) {
        // explicit AS covers from subsets of the relations
        if (!cfg.relations.empty() && cfg.fibre_max >= 1) {
            std::vector<curves::CurveFunction> funs;
            for (auto& D : cfg.relations) funs.push_back(jacobian::function_with_divisor(cfg.base, D));
            int n = int(funs.size());
            std::vector<int> idx;
            std::function<void(int, int)> rec = [&](int from, int depth) {
                if (!idx.empty()) {
                    std::vector<curves::CurveFunction> fs;
                    for (int i : idx) fs.push_back(funs[i]);
                    try {
                        ASCoverSpec spec(cfg.base, fs);
                        push(covers::as_cover_report(spec));
                    } catch (const Error&) {
                        // dependent subsets are skipped
                    }
                }
                if (depth == cfg.fibre_max) return;
                for (int i = from; i < n; ++i) {
                    idx.push_back(i);
                    rec(i + 1, depth + 1);
                    idx.pop_back();
                }
            };
            rec(0, 0);
        }
        if (cfg.subgroups) {
            auto G = jacobian::class_group_structure(cfg.base);
            std::vector<std::vector<std::int64_t>> images;
            for (auto* P : cfg.base->places(1)) images.push_back(jacobian::abel_jacobi(G, P));
            auto hits = search_subgroups(G.invariants, images, cfg.index_min, cfg.index_max);
            std::set<std::tuple<int, std::int64_t>> seen;
            for (auto& h : hits) {
                covers::SubgroupCoverSpec spec;
                spec.structure = G;
                spec.H = h.H;
                auto r = covers::subgroup_cover_report(spec);
                if (seen.insert({r.genus, r.points}).second) push(r);
            }
        }
        for (int next : cfg.extensions) push(covers::extension_cover_report(cfg.base, next));
    }
    if (cfg.family) {
        auto members = enumerate_family(*cfg.family);
        size_t lo = std::min(cfg.chunk_offset, members.size());
        size_t hi = cfg.chunk_size ? std::min(lo + cfg.chunk_size, members.size()) : members.size();
        for (size_t i = lo; i < hi; ++i) {
            for (int nn : cfg.family_extensions)
                push(covers::extension_cover_report(members[i].L, members[i].counts[0],
                                                    members[i].id, nn));
        }
    }
    return rep;
}

} // namespace hunt::search
