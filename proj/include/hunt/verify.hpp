#ifndef HUNT_VERIFY_HPP
#define HUNT_VERIFY_HPP

#include <string>
#include <vector>

#include "hunt/records.hpp"

namespace hunt::verify {

struct Item {
    std::string scope;
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Report {
    std::vector<Item> items;
    std::vector<std::string> discrepancies; // documented table/text discrepancies observed
    int passed() const;
    int failed() const;
    bool all_pass() const { return failed() == 0; }
    std::string summary() const;
};

// scopes: 2.1 2.2 2.3 2.4 2.5 2.6 2.7 3.1 3.2 3.3 3.4 3.5
//         4-census 4-ext 4-plane3 improvements, or "all"
const std::vector<std::string>& known_scopes();

Report verify_paper(const std::string& scope, const records::RecordSet& recs, int jobs = 1);

} // namespace hunt::verify

#endif
