#ifndef HUNT_SEARCH_HPP
#define HUNT_SEARCH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hunt/covers.hpp"
#include "hunt/curves.hpp"
#include "hunt/jacobian.hpp"
#include "hunt/records.hpp"
#include "hunt/zeta.hpp"

namespace hunt::search {

using curves::CurvePtr;
using curves::Divisor;
using curves::Place;

// base-3 encoding of plane quartics over F_3: degree-4 monomials in the
// descending lexicographic order with x > y > z, coefficient c_i on digit i-1
curves::CurvePtr decode_plane_curve(std::uint64_t m, const ff::FieldPtr& F);
std::uint64_t encode_plane_curve(const CurvePtr& C);

// ---------------------------------------------------------------- families

struct FamilyDescriptor {
    enum class Kind {
        Genus2ArtinSchreier, // char-2 covers w^2 + w = f with conductor degree 6
        ArtinSchreierByConductor, // char-2 covers with a prescribed conductor degree
        HyperellipticOdd,    // odd characteristic y^2 = f, deg f in [3, max_deg]
        PlaneQuarticCodes,   // explicit m-values over F_3
    };
    Kind kind = Kind::Genus2ArtinSchreier;
    ff::FieldPtr F;
    int conductor_degree = 6; // ArtinSchreierByConductor
    int max_deg = 6;          // HyperellipticOdd
    std::vector<std::uint64_t> codes;
    enum class Dedup { ByCounts, ByLPolynomial } dedup = Dedup::ByLPolynomial;
    std::uint64_t budget = 80'000'000; // candidate cap
};

struct FamilyMember {
    std::string id; // printable defining data
    std::vector<std::int64_t> counts;
    zeta::LPolynomial L;
    // representative model (constructed on demand for census members)
    CurvePtr curve;
};

std::vector<FamilyMember> enumerate_family(const FamilyDescriptor& desc);

// ---------------------------------------------------------------- relations

struct RelationBounds {
    int max_abs = 3;
    int max_conductor = 0; // 0 = unbounded
    std::vector<const Place*> extra_places;
    std::uint64_t budget = 10'000'000;
};

struct RelationVector {
    std::vector<const Place*> places;
    std::vector<int> coeffs;
    Divisor divisor;
    int predicted_conductor = 0;
    int predicted_genus = 0;
    std::int64_t predicted_points = 0;
};

std::vector<RelationVector> search_relations(const jacobian::ClassGroupStructure& G,
                                             const RelationBounds& bounds);

// ---------------------------------------------------------------- subgroups

struct SubgroupHit {
    covers::Subgroup H;
    std::int64_t index = 0;
    std::int64_t covered = 0; // how many of the supplied images lie in H
};

std::vector<SubgroupHit> search_subgroups(const std::vector<std::int64_t>& invariants,
                                          const std::vector<std::vector<std::int64_t>>& images,
                                          std::int64_t index_min, std::int64_t index_max);

// -------------------------------------------------------------------- hunt

struct HuntItem {
    covers::CoverReport report;
    records::Classification vs_current;
    records::Classification vs_baseline;
    std::string json() const;
};

struct HuntConfig {
    // explicit base-curve strategies
    CurvePtr base;
    std::vector<Divisor> relations; // principal divisors to build covers from
    int fibre_max = 1;              // fibre products of up to this many relations
    bool subgroups = false;
    std::int64_t index_min = 2, index_max = 16;
    std::vector<int> extensions; // n values
    // family-driven extension hunts
    std::optional<FamilyDescriptor> family;
    std::vector<int> family_extensions;
    std::size_t chunk_offset = 0; // resume point in the family stream
    std::size_t chunk_size = 0;   // 0 = everything
};

struct HuntReport {
    std::vector<HuntItem> items;
    bool any_exceeds_upper = false;
    std::string to_jsonl() const;
};

HuntReport hunt(const HuntConfig& cfg, const records::RecordSet& records);

} // namespace hunt::search

#endif
