#ifndef HUNT_RECORDS_HPP
#define HUNT_RECORDS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace hunt::records {

struct RecordEntry {
    std::uint64_t q = 0;
    int g = 0;
    std::int64_t lower = 0;
    std::optional<std::int64_t> upper;
    bool improved = false; // entry flagged as new in the current snapshot
};

enum class Classification { BelowLower, MatchesLower, ImprovesLower, ExceedsUpper };
std::string to_string(Classification c);

class RecordTable {
public:
    RecordTable() = default;
    explicit RecordTable(std::string provenance) : provenance_(std::move(provenance)) {}

    const std::string& provenance() const { return provenance_; }
    void insert(const RecordEntry& e);
    std::optional<RecordEntry> lookup(std::uint64_t q, int g) const;
    // classification of a result (q, g, N); absent entries improve when N >= 1
    Classification classify(std::uint64_t q, int g, std::int64_t N) const;
    std::size_t size() const { return entries_.size(); }
    const std::map<std::pair<std::uint64_t, int>, RecordEntry>& entries() const { return entries_; }

    static RecordTable load(const std::string& path, const std::string& provenance);
    void save(const std::string& path) const;

private:
    std::string provenance_;
    std::map<std::pair<std::uint64_t, int>, RecordEntry> entries_;
};

struct RecordSet {
    RecordTable current;  // the shipped tables, improvements included
    RecordTable baseline; // intervals as known before the new constructions
};

// locate the data directory: $CURVEHUNT_DATA, ./data, then the built-in source path
std::string data_dir();
RecordSet load_shipped(const std::string& dir = "");

} // namespace hunt::records

#endif
