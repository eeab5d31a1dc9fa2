#include "hunt/records.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/stat.h>

#include "hunt/error.hpp"

namespace hunt::records {

std::string to_string(Classification c) {
    switch (c) {
    case Classification::BelowLower:
        return "below_lower";
    case Classification::MatchesLower:
        return "matches_lower";
    case Classification::ImprovesLower:
        return "improves_lower";
    case Classification::ExceedsUpper:
        return "exceeds_upper";
    }
    return "?";
}

void RecordTable::insert(const RecordEntry& e) {
    if (e.lower < 1) throw Error("records", "insert", "lower bound must be >= 1");
    if (e.upper && *e.upper < e.lower)
        throw Error("records", "insert", "upper bound below lower bound");
    entries_[{e.q, e.g}] = e;
}

std::optional<RecordEntry> RecordTable::lookup(std::uint64_t q, int g) const {
    auto it = entries_.find({q, g});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

Classification RecordTable::classify(std::uint64_t q, int g, std::int64_t N) const {
    auto e = lookup(q, g);
    if (!e) return N >= 1 ? Classification::ImprovesLower : Classification::BelowLower;
    if (e->upper && N > *e->upper) return Classification::ExceedsUpper;
    if (N < e->lower) return Classification::BelowLower;
    if (N == e->lower) return Classification::MatchesLower;
    return Classification::ImprovesLower;
}

RecordTable RecordTable::load(const std::string& path, const std::string& provenance) {
    std::ifstream in(path);
    if (!in) throw Error("records", "load", "cannot open " + path);
    RecordTable t(provenance);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream is(line);
        RecordEntry e;
        std::string up, flag;
        if (!(is >> e.q >> e.g >> e.lower)) continue;
        if (is >> up) {
            if (up != "-") e.upper = std::stoll(up);
        }
        while (is >> flag) {
            if (flag == "new")
                e.improved = true;
            else
                throw Error("records", "load",
                            "unknown flag '" + flag + "' at " + path + ":" + std::to_string(lineno));
        }
        t.insert(e);
    }
    return t;
}

void RecordTable::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw Error("records", "save", "cannot write " + path);
    out << "# record table: " << provenance_ << "\n";
    out << "# format: q g lower upper flags   (upper '-' when unknown; flag 'new' for improved entries)\n";
    for (auto& [key, e] : entries_) {
        out << e.q << " " << e.g << " " << e.lower << " ";
        if (e.upper)
            out << *e.upper;
        else
            out << "-";
        if (e.improved) out << " new";
        out << "\n";
    }
}

std::string data_dir() {
    if (const char* env = std::getenv("CURVEHUNT_DATA")) return env;
    struct stat st {};
    if (::stat("data/records_current_p2.txt", &st) == 0) return "data";
#ifdef CURVEHUNT_SOURCE_DATA
    return CURVEHUNT_SOURCE_DATA;
#else
    return "data";
#endif
}

RecordSet load_shipped(const std::string& dir) {
    std::string d = dir.empty() ? data_dir() : dir;
    RecordSet s;
    s.current = RecordTable("current");
    for (const char* f : {"/records_current_p2.txt", "/records_current_p3.txt"}) {
        RecordTable t = RecordTable::load(d + f, "current");
        for (auto& [k, e] : t.entries()) s.current.insert(e);
    }
    s.baseline = RecordTable::load(d + "/records_baseline.txt", "baseline");
    return s;
}

} // namespace hunt::records
