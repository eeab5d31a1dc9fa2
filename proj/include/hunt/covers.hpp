#ifndef HUNT_COVERS_HPP
#define HUNT_COVERS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hunt/curves.hpp"
#include "hunt/jacobian.hpp"
#include "hunt/zeta.hpp"

namespace hunt::covers {

using curves::CurveFunction;
using curves::CurvePtr;
using curves::Divisor;
using curves::Place;

// Reduced local data of f modulo p-th powers at a place:
// m = reduced pole order (0 when regular, otherwise coprime to p);
// residual = the constant term when m = 0 (trace input for splitting).
struct LocalReduction {
    int m = 0;
    ff::elt residual = 0;
};
LocalReduction as_reduce_local(const CurveFunction& f, const Place* P);

// Elementary abelian Artin-Schreier cover: fibre product of w_i^p - w_i = f_i.
class ASCoverSpec {
public:
    ASCoverSpec(CurvePtr base, std::vector<CurveFunction> fs);
    const CurvePtr& base() const { return base_; }
    const std::vector<CurveFunction>& fs() const { return fs_; }
    int rank() const { return int(fs_.size()); }
    int degree() const; // p^r

    // f_chi for a nonzero character chi in (Z/p)^r
    CurveFunction character_function(const std::vector<int>& chi) const;
    // candidate pole places (union over the f_i)
    const std::vector<const Place*>& pole_candidates() const { return poles_; }

private:
    CurvePtr base_;
    std::vector<CurveFunction> fs_;
    std::vector<const Place*> poles_;
};

Divisor character_conductor(const ASCoverSpec& spec, const std::vector<int>& chi);
int cover_genus(const ASCoverSpec& spec);
std::int64_t cover_points(const ASCoverSpec& spec);

enum class CertKind { ExplicitAS, ClassFieldSubgroup, ClassFieldExtension };

struct CoverReport {
    CertKind kind = CertKind::ExplicitAS;
    std::string base_id;
    std::uint64_t q = 0; // field of the reported count
    int degree = 0;
    int genus = 0;
    std::int64_t points = 0;
    bool lower_bound_only = false;
    std::vector<std::pair<std::vector<int>, Divisor>> conductors; // explicit AS only
    std::string to_line() const; // "kind q g N bound_flag degree base_id"
};

CoverReport as_cover_report(const ASCoverSpec& spec);

// subgroup of a finite abelian group in invariant-factor coordinates
struct Subgroup {
    std::vector<std::int64_t> invariants; // ambient group
    std::vector<std::vector<std::int64_t>> gens;
    // optional precomputed sorted element list (filled by searches)
    std::vector<std::vector<std::int64_t>> known_elements;
    std::int64_t order() const;
    std::int64_t index() const;
    bool contains(const std::vector<std::int64_t>& v) const;
    std::vector<std::vector<std::int64_t>> elements() const;
};

struct SubgroupCoverSpec {
    jacobian::ClassGroupStructure structure;
    Subgroup H;
    int expected_index = 0;                 // 0 = no check
    const Place* aj_base = nullptr;         // base point for phi (default: structure's base)
};
CoverReport subgroup_cover_report(const SubgroupCoverSpec& spec);

CoverReport extension_cover_report(const CurvePtr& C, int n);
// certificate from an L-polynomial alone (family searches)
CoverReport extension_cover_report(const zeta::LPolynomial& L, std::int64_t N1,
                                   const std::string& base_id, int n);

} // namespace hunt::covers

#endif
