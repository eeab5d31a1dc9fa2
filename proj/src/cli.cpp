#include "hunt/cli.hpp"

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hunt/covers.hpp"
#include "hunt/curves.hpp"
#include "hunt/jacobian.hpp"
#include "hunt/records.hpp"
#include "hunt/search.hpp"
#include "hunt/verify.hpp"

namespace hunt::cli {

namespace {

using curves::CurvePtr;
using curves::Divisor;
using curves::Place;

ff::FieldPtr field_from_q(std::uint64_t q) {
    for (int p : {2, 3, 5, 7, 11, 13}) {
        std::uint64_t v = q;
        int k = 0;
        while (v % p == 0) {
            v /= p;
            ++k;
        }
        if (v == 1 && k >= 1) return ff::get_field(p, k);
    }
    throw UsageError("field size must be a power of a small prime");
}

CurvePtr load_curve(const std::string& text, std::uint64_t q) {
    return curves::parse_curve(text, field_from_q(q));
}

// "[a0,a1,...]" over the rational points in label order, with optional
// higher-degree terms appended as ";Qd_i:c"
Divisor parse_relation(const CurvePtr& C, const std::string& text) {
    Divisor D;
    std::string s = text;
    auto semi = s.find(';');
    std::string vec = s.substr(0, semi);
    std::string rest = semi == std::string::npos ? "" : s.substr(semi + 1);
    if (vec.size() < 2 || vec.front() != '[' || vec.back() != ']')
        throw UsageError("relation must look like [-3,-1,2,1,1]");
    vec = vec.substr(1, vec.size() - 2);
    std::vector<int> coeffs;
    std::istringstream is(vec);
    std::string tok;
    while (std::getline(is, tok, ',')) coeffs.push_back(std::stoi(tok));
    auto rat = C->places(1);
    if (coeffs.size() > rat.size())
        throw UsageError("relation has more coefficients than rational points");
    for (size_t i = 0; i < coeffs.size(); ++i) D.add(rat[i], coeffs[i]);
    std::istringstream rs(rest);
    while (std::getline(rs, tok, ';')) {
        if (tok.empty()) continue;
        auto colon = tok.find(':');
        if (colon == std::string::npos) throw UsageError("place term must look like Q2_0:-4");
        std::string label = tok.substr(0, colon);
        int mult = std::stoi(tok.substr(colon + 1));
        if (label.size() < 2 || label[0] != 'Q') throw UsageError("unknown place label " + label);
        auto us = label.find('_');
        int deg = std::stoi(label.substr(1, us - 1));
        int idx = std::stoi(label.substr(us + 1));
        D.add(C->place(deg, idx), mult);
    }
    return D;
}

void print_report_human(std::ostream& os, const covers::CoverReport& r) {
    const char* kind = r.kind == covers::CertKind::ExplicitAS
                           ? "explicit Artin-Schreier cover"
                           : (r.kind == covers::CertKind::ClassFieldSubgroup
                                  ? "class field cover (subgroup certificate)"
                                  : "class field cover (extension certificate)");
    os << kind << "\n";
    os << "  base:   " << r.base_id << "\n";
    os << "  degree: " << r.degree << "\n";
    os << "  field:  F_" << r.q << "\n";
    os << "  genus:  " << r.genus << "\n";
    os << "  points: " << (r.lower_bound_only ? ">= " : "") << r.points << "\n";
    for (auto& [chi, cond] : r.conductors) {
        os << "  conductor chi=(";
        for (size_t i = 0; i < chi.size(); ++i) os << (i ? "," : "") << chi[i];
        os << "): " << cond.to_string() << "\n";
    }
    os << r.to_line() << "\n";
}

int cmd_count(const std::string& curve, std::uint64_t q, int ext, bool json) {
    auto C = load_curve(curve, q);
    auto n = C->count_points(ext);
    if (json) {
        nlohmann::json j{{"q", q}, {"ext", ext}, {"N", n}, {"genus", C->curve_genus()}};
        std::cout << j.dump() << "\n";
    } else
        std::cout << n << "\n";
    return 0;
}

int cmd_lpoly(const std::string& curve, std::uint64_t q, bool descending, bool json) {
    auto C = load_curve(curve, q);
    auto L = jacobian::l_polynomial(C);
    if (json) {
        nlohmann::json j;
        j["q"] = q;
        j["genus"] = L.genus();
        std::vector<std::string> cs;
        for (auto& c : L.coeffs()) cs.push_back(c.str());
        j["coefficients"] = cs;
        j["class_number"] = L.class_number().str();
        std::cout << j.dump() << "\n";
    } else
        std::cout << (descending ? L.to_string_descending() : L.to_string_ascending()) << "\n";
    return 0;
}

int cmd_classgroup(const std::string& curve, std::uint64_t q, int depth, bool json) {
    auto C = load_curve(curve, q);
    auto G = jacobian::class_group_structure(C);
    if (json) {
        nlohmann::json j;
        j["order"] = G.order;
        j["invariants"] = G.invariants;
        nlohmann::json tbl = nlohmann::json::array();
        for (int d = 1; d <= depth; ++d)
            for (auto* P : C->places(d)) {
                nlohmann::json e{{"place", P->label}, {"degree", d},
                                 {"phi", jacobian::abel_jacobi(G, P)}};
                tbl.push_back(e);
            }
        j["phi"] = tbl;
        std::cout << j.dump() << "\n";
        return 0;
    }
    std::cout << "class group: " << G.to_string() << " (order " << G.order << ")\n";
    for (int d = 1; d <= depth; ++d)
        for (auto* P : C->places(d)) {
            auto v = jacobian::abel_jacobi(G, P);
            std::cout << "  phi(" << P->label << ") = (";
            for (size_t i = 0; i < v.size(); ++i) std::cout << (i ? "," : "") << v[i];
            std::cout << ")\n";
        }
    return 0;
}

int cmd_cover_as(const std::string& curve, std::uint64_t q, const std::vector<std::string>& rels,
                 const std::vector<std::string>& exprs, bool json) {
    auto C = load_curve(curve, q);
    std::vector<curves::CurveFunction> fs;
    for (auto& r : rels) {
        Divisor D = parse_relation(C, r);
        fs.push_back(jacobian::function_with_divisor(C, D));
    }
    for (auto& e : exprs) {
        // an explicit rational function of x (Artin-Schreier right side)
        auto F = C->F;
        auto tmp = curves::parse_curve((F->p == 2 ? "y^2+y=" : "y^3-y=") + e, F);
        fs.push_back(C->fun_ratfun(tmp->tower_fs.at(0)));
    }
    if (fs.empty()) throw UsageError("cover as needs --relation or --f");
    covers::ASCoverSpec spec(C, fs);
    auto r = covers::as_cover_report(spec);
    if (json)
        std::cout << nlohmann::json{{"q", r.q}, {"g", r.genus}, {"N", r.points},
                                    {"degree", r.degree}, {"line", r.to_line()}}
                         .dump()
                  << "\n";
    else
        print_report_human(std::cout, r);
    return 0;
}

int cmd_cover_subgroup(const std::string& curve, std::uint64_t q, int index,
                       const std::string& gens, bool json) {
    auto C = load_curve(curve, q);
    auto G = jacobian::class_group_structure(C);
    covers::CoverReport best;
    bool have = false;
    if (!gens.empty()) {
        covers::Subgroup H;
        H.invariants = G.invariants;
        std::istringstream is(gens);
        std::string tok;
        while (std::getline(is, tok, ';')) {
            std::vector<std::int64_t> v;
            std::istringstream ts(tok);
            std::string c;
            while (std::getline(ts, c, ',')) v.push_back(std::stoll(c));
            if (v.size() != G.invariants.size()) throw UsageError("generator length mismatch");
            H.gens.push_back(v);
        }
        covers::SubgroupCoverSpec sp;
        sp.structure = G;
        sp.H = H;
        sp.expected_index = index;
        best = covers::subgroup_cover_report(sp);
        have = true;
    } else {
        // search: best coverage at this index over all base points
        auto rats = C->places(1);
        std::vector<std::vector<std::int64_t>> images;
        for (auto* P : rats) images.push_back(jacobian::abel_jacobi(G, P));
        for (size_t b = 0; b < rats.size(); ++b) {
            auto shifted = images;
            for (auto& v : shifted)
                for (size_t i = 0; i < v.size(); ++i)
                    v[i] = ((v[i] - images[b][i]) % G.invariants[i] + G.invariants[i]) %
                           G.invariants[i];
            auto hits = search::search_subgroups(G.invariants, shifted, index, index);
            if (hits.empty()) continue;
            covers::SubgroupCoverSpec sp;
            sp.structure = G;
            sp.H = hits.front().H;
            sp.aj_base = rats[b];
            auto r = covers::subgroup_cover_report(sp);
            if (!have || r.points > best.points) {
                best = r;
                have = true;
            }
        }
    }
    if (!have) throw Error("covers", "subgroup_cover_report", "no subgroup of that index");
    if (json)
        std::cout << nlohmann::json{{"q", best.q}, {"g", best.genus}, {"N", best.points},
                                    {"degree", best.degree}, {"line", best.to_line()}}
                         .dump()
                  << "\n";
    else
        print_report_human(std::cout, best);
    return 0;
}

int cmd_cover_extend(const std::string& curve, std::uint64_t q, int n, bool json) {
    auto C = load_curve(curve, q);
    auto r = covers::extension_cover_report(C, n);
    if (json)
        std::cout << nlohmann::json{{"q", r.q}, {"g", r.genus}, {"N", r.points},
                                    {"degree", r.degree}, {"lower_bound", r.lower_bound_only},
                                    {"line", r.to_line()}}
                         .dump()
                  << "\n";
    else
        print_report_human(std::cout, r);
    return 0;
}

int cmd_enumerate(const std::string& family, std::uint64_t q, int conductor, int maxdeg,
                  const std::vector<std::uint64_t>& codes, bool json) {
    search::FamilyDescriptor d;
    d.F = field_from_q(q);
    if (family == "genus2-as")
        d.kind = search::FamilyDescriptor::Kind::Genus2ArtinSchreier;
    else if (family == "as-conductor") {
        d.kind = search::FamilyDescriptor::Kind::ArtinSchreierByConductor;
        d.conductor_degree = conductor;
    } else if (family == "hyperelliptic") {
        d.kind = search::FamilyDescriptor::Kind::HyperellipticOdd;
        d.max_deg = maxdeg;
    } else if (family == "plane-quartic") {
        d.kind = search::FamilyDescriptor::Kind::PlaneQuarticCodes;
        d.codes = codes;
    } else
        throw UsageError("unknown family '" + family + "'");
    auto members = search::enumerate_family(d);
    for (auto& m : members) {
        if (json) {
            nlohmann::json j{{"id", m.id}, {"counts", m.counts},
                             {"class_number", m.L.class_number().str()},
                             {"L", m.L.to_string_ascending()}};
            std::cout << j.dump() << "\n";
        } else {
            std::cout << m.id << "  [";
            for (size_t i = 0; i < m.counts.size(); ++i)
                std::cout << (i ? "," : "") << m.counts[i];
            std::cout << "]  h=" << m.L.class_number() << "  L=" << m.L.to_string_ascending()
                      << "\n";
        }
    }
    return 0;
}

int cmd_records(const std::string& what, std::uint64_t q, int g, std::int64_t N,
                const std::string& table, const std::string& dir, bool json) {
    auto rs = records::load_shipped(dir);
    const records::RecordTable& t = table == "baseline" ? rs.baseline : rs.current;
    if (what == "lookup") {
        auto e = t.lookup(q, g);
        if (json) {
            nlohmann::json j{{"q", q}, {"g", g}};
            if (e) {
                j["lower"] = e->lower;
                if (e->upper) j["upper"] = *e->upper;
                j["improved"] = e->improved;
            } else
                j["absent"] = true;
            std::cout << j.dump() << "\n";
        } else if (!e)
            std::cout << "absent\n";
        else {
            std::cout << "[" << e->lower << ", " << (e->upper ? std::to_string(*e->upper) : "?")
                      << "]" << (e->improved ? " (new)" : "") << "\n";
        }
        return 0;
    }
    auto c = t.classify(q, g, N);
    if (json)
        std::cout << nlohmann::json{{"q", q}, {"g", g}, {"N", N},
                                    {"classification", records::to_string(c)}}
                         .dump()
                  << "\n";
    else
        std::cout << records::to_string(c) << "\n";
    return c == records::Classification::ExceedsUpper ? 1 : 0;
}

int cmd_hunt(const std::string& curve, std::uint64_t q, const std::vector<std::string>& rels,
             int fibre_max, bool subgroups, int imin, int imax, const std::string& exts,
             const std::string& family, int conductor, int maxdeg, const std::string& fam_exts,
             std::size_t chunk_offset, std::size_t chunk_size, const std::string& dir,
             const std::string& out) {
    search::HuntConfig cfg;
    auto parse_ints = [](const std::string& s) {
        std::vector<int> v;
        std::istringstream is(s);
        std::string tok;
        while (std::getline(is, tok, ',')) v.push_back(std::stoi(tok));
        return v;
    };
    if (!curve.empty()) {
        cfg.base = load_curve(curve, q);
        for (auto& r : rels) cfg.relations.push_back(parse_relation(cfg.base, r));
        cfg.fibre_max = fibre_max;
        cfg.subgroups = subgroups;
        cfg.index_min = imin;
        cfg.index_max = imax;
        cfg.extensions = parse_ints(exts.empty() ? "" : exts);
    }
    if (!family.empty()) {
        search::FamilyDescriptor d;
        d.F = field_from_q(q);
        if (family == "genus2-as")
            d.kind = search::FamilyDescriptor::Kind::Genus2ArtinSchreier;
        else if (family == "as-conductor") {
            d.kind = search::FamilyDescriptor::Kind::ArtinSchreierByConductor;
            d.conductor_degree = conductor;
        } else if (family == "hyperelliptic") {
            d.kind = search::FamilyDescriptor::Kind::HyperellipticOdd;
            d.max_deg = maxdeg;
        } else
            throw UsageError("unknown family '" + family + "'");
        cfg.family = d;
        cfg.family_extensions = parse_ints(fam_exts);
        cfg.chunk_offset = chunk_offset;
        cfg.chunk_size = chunk_size;
    }
    auto rs = records::load_shipped(dir);
    auto rep = search::hunt(cfg, rs);
    if (out.empty() || out == "-")
        std::cout << rep.to_jsonl();
    else {
        std::ofstream f(out);
        if (!f) throw Error("cli", "hunt", "cannot write " + out);
        f << rep.to_jsonl();
        std::cerr << rep.items.size() << " reports written to " << out << "\n";
    }
    if (rep.any_exceeds_upper) {
        std::cerr << "FATAL: a result exceeds a proved upper bound (bug)\n";
        return 1;
    }
    return 0;
}

int cmd_verify(const std::string& scope, int jobs, bool json, const std::string& dir) {
    auto rs = records::load_shipped(dir);
    auto rep = verify::verify_paper(scope.empty() ? "all" : scope, rs, jobs);
    if (json) {
        for (auto& it : rep.items) {
            nlohmann::json j{{"scope", it.scope}, {"check", it.name},
                             {"pass", it.pass}};
            if (!it.detail.empty()) j["detail"] = it.detail;
            std::cout << j.dump() << "\n";
        }
        for (auto& d : rep.discrepancies)
            std::cout << nlohmann::json{{"discrepancy", d}}.dump() << "\n";
    } else {
        for (auto& it : rep.items)
            std::cout << "[" << it.scope << "] " << (it.pass ? "PASS" : "FAIL") << "  " << it.name
                      << (it.detail.empty() || it.pass ? "" : "  (" + it.detail + ")") << "\n";
        if (!rep.discrepancies.empty()) {
            std::cout << "documented discrepancies:\n";
            for (auto& d : rep.discrepancies) std::cout << "  - " << d << "\n";
        }
        std::cout << rep.summary() << "\n";
    }
    return rep.all_pass() ? 0 : 1;
}

} // namespace

int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.push_back(argv[i]);
    return run(args);
}

int run(const std::vector<std::string>& args) {
    CLI::App app{"exact-arithmetic toolkit for curves with many rational points"};
    app.require_subcommand(1);

    std::string curve, scope, family, gens, table = "current", dir, out, exts, fam_exts;
    std::uint64_t q = 2;
    int ext = 1, depth = 1, index = 2, jobs = 1, conductor = 6, maxdeg = 6;
    int fibre_max = 1, imin = 2, imax = 16, g = 1;
    std::int64_t N = 0;
    std::size_t chunk_offset = 0, chunk_size = 0;
    bool json = false, descending = false, subgroups = false;
    std::vector<std::string> rels, fexprs;
    std::vector<std::uint64_t> codes;

    app.add_flag("--json", json, "machine-readable json-lines output");

    auto* c_count = app.add_subcommand("count", "count rational points over an extension");
    c_count->add_option("--curve", curve)->required();
    c_count->add_option("--field", q)->required();
    c_count->add_option("--ext", ext);

    auto* c_lpoly = app.add_subcommand("lpoly", "L-polynomial from exhaustive counts");
    c_lpoly->add_option("--curve", curve)->required();
    c_lpoly->add_option("--field", q)->required();
    c_lpoly->add_flag("--descending", descending);

    auto* c_cg = app.add_subcommand("classgroup", "divisor class group and phi table");
    c_cg->add_option("--curve", curve)->required();
    c_cg->add_option("--field", q)->required();
    c_cg->add_option("--places-depth", depth);

    auto* c_aj = app.add_subcommand("aj", "Abel-Jacobi images of places");
    c_aj->add_option("--curve", curve)->required();
    c_aj->add_option("--field", q)->required();
    c_aj->add_option("--degree", depth);

    auto* c_cover = app.add_subcommand("cover", "construct and certify covers");
    c_cover->require_subcommand(1);
    auto* c_as = c_cover->add_subcommand("as", "explicit Artin-Schreier cover");
    c_as->add_option("--curve", curve)->required();
    c_as->add_option("--field", q)->required();
    c_as->add_option("--relation", rels, "relation vector [a0,a1,...] (repeatable)");
    c_as->add_option("--f", fexprs, "explicit rational function of x (repeatable)");
    auto* c_fibre = c_cover->add_subcommand("fibre", "fibre product (same as `as`)");
    c_fibre->add_option("--curve", curve)->required();
    c_fibre->add_option("--field", q)->required();
    c_fibre->add_option("--relation", rels)->required();
    auto* c_sub = c_cover->add_subcommand("subgroup", "unramified class field cover");
    c_sub->add_option("--curve", curve)->required();
    c_sub->add_option("--field", q)->required();
    c_sub->add_option("--index", index)->required();
    c_sub->add_option("--gens", gens, "subgroup generators 'v1,v2;w1,w2' (default: search)");
    auto* c_ext = c_cover->add_subcommand("extend", "constant field extension cover");
    c_ext->add_option("--curve", curve)->required();
    c_ext->add_option("--field", q)->required();
    c_ext->add_option("--n", ext)->required();

    auto* c_enum = app.add_subcommand("enumerate", "deterministic curve families");
    c_enum->add_option("--family", family, "genus2-as | as-conductor | hyperelliptic | plane-quartic")
        ->required();
    c_enum->add_option("--field", q)->required();
    c_enum->add_option("--conductor", conductor);
    c_enum->add_option("--max-deg", maxdeg);
    c_enum->add_option("--codes", codes);

    auto* c_hunt = app.add_subcommand("hunt", "search and classify against the record tables");
    c_hunt->add_option("--curve", curve);
    c_hunt->add_option("--field", q);
    c_hunt->add_option("--relation", rels);
    c_hunt->add_option("--fibre-max", fibre_max);
    c_hunt->add_flag("--subgroups", subgroups);
    c_hunt->add_option("--index-min", imin);
    c_hunt->add_option("--index-max", imax);
    c_hunt->add_option("--extensions", exts, "comma-separated n values");
    c_hunt->add_option("--family", family);
    c_hunt->add_option("--conductor", conductor);
    c_hunt->add_option("--max-deg", maxdeg);
    c_hunt->add_option("--family-extensions", fam_exts);
    c_hunt->add_option("--chunk-offset", chunk_offset);
    c_hunt->add_option("--chunk-size", chunk_size);
    c_hunt->add_option("--records", dir, "records data directory");
    c_hunt->add_option("--out", out, "output jsonl file ('-' = stdout)");

    auto* c_rec = app.add_subcommand("records", "record table lookup and classification");
    c_rec->require_subcommand(1);
    auto* c_lookup = c_rec->add_subcommand("lookup");
    c_lookup->add_option("--q", q)->required();
    c_lookup->add_option("--g", g)->required();
    c_lookup->add_option("--table", table, "current | baseline");
    c_lookup->add_option("--data", dir);
    auto* c_classify = c_rec->add_subcommand("classify");
    c_classify->add_option("--q", q)->required();
    c_classify->add_option("--g", g)->required();
    c_classify->add_option("--n", N)->required();
    c_classify->add_option("--table", table);
    c_classify->add_option("--data", dir);

    auto* c_verify = app.add_subcommand("verify-paper", "re-run the shipped reproduction suite");
    c_verify->add_option("--scope", scope, "section id or 'all'");
    c_verify->add_option("--jobs", jobs);
    c_verify->add_option("--data", dir);

    try {
        std::vector<const char*> argv{"curvehunt"};
        for (auto& a : args) argv.push_back(a.c_str());
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        CLI::App dummy;
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*c_count) return cmd_count(curve, q, ext, json);
        if (*c_lpoly) return cmd_lpoly(curve, q, descending, json);
        if (*c_cg) return cmd_classgroup(curve, q, depth, json);
        if (*c_aj) return cmd_classgroup(curve, q, depth, json);
        if (*c_as) return cmd_cover_as(curve, q, rels, fexprs, json);
        if (*c_fibre) return cmd_cover_as(curve, q, rels, {}, json);
        if (*c_sub) return cmd_cover_subgroup(curve, q, index, gens, json);
        if (*c_ext) return cmd_cover_extend(curve, q, ext, json);
        if (*c_enum) return cmd_enumerate(family, q, conductor, maxdeg, codes, json);
        if (*c_hunt)
            return cmd_hunt(curve, q, rels, fibre_max, subgroups, imin, imax, exts, family,
                            conductor, maxdeg, fam_exts, chunk_offset, chunk_size, dir, out);
        if (*c_lookup) return cmd_records("lookup", q, g, N, table, dir, json);
        if (*c_classify) return cmd_records("classify", q, g, N, table, dir, json);
        if (*c_verify) return cmd_verify(scope, jobs, json, dir);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        // parse problems are usage errors by contract
        return e.op_name() == "parse_curve" ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace hunt::cli
