#ifndef HUNT_INTERNAL_HPP
#define HUNT_INTERNAL_HPP

// Internal plumbing shared between curves.cpp and places.cpp.

#include <optional>

#include "hunt/curves.hpp"

namespace hunt::curves {

struct CurveInternal {
    // dedupe by sort_key; returns the canonical interned object
    static const Place* intern_place(const CurveModel& C, Place&& P);
    // all places above a base prime of the x-line (nullopt = x = infinity)
    static std::vector<const Place*> places_above_prime(const CurveModel& C,
                                                        const std::optional<Poly>& pi);
    // plane: all places with x-coordinate a root of pi (chart z), or on z = 0 (nullopt)
    static std::vector<const Place*> plane_places_over(const CurveModel& C,
                                                       const std::optional<Poly>& pi);
    static std::vector<const Place*> plane_places_over_uncached(const CurveModel& C,
                                                                const std::optional<Poly>& pi);
    static std::shared_ptr<const Completion> build_completion(const CurveModel& C,
                                                              const PlaceSeed& seed, int window,
                                                              int* e_out, int* diff_out,
                                                              ff::FieldPtr* k_out);
    static void enumerate_degree(const CurveModel& C, int d); // fills by-degree cache
};

} // namespace hunt::curves

#endif
