#ifndef HUNT_ZETA_HPP
#define HUNT_ZETA_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hunt/error.hpp"

namespace hunt::zeta {

using Int = boost::multiprecision::cpp_int;

// Integer numerator L(t) of the zeta function Z(C,t) = L(C,t)/((1-t)(1-qt));
// degree 2g, a_0 = 1, a_{2g} = q^g, functional equation a_{2g-i} = q^{g-i} a_i.
class LPolynomial {
public:
    LPolynomial() = default;
    LPolynomial(std::uint64_t q, int g, std::vector<Int> coeffs);

    std::uint64_t q() const { return q_; }
    int genus() const { return g_; }
    const std::vector<Int>& coeffs() const { return a_; }
    const Int& coeff(int i) const { return a_[i]; }
    bool operator==(const LPolynomial& o) const { return q_ == o.q_ && g_ == o.g_ && a_ == o.a_; }

    // Recover a_1..a_g from N_1..N_g by the power-sum recursion, the rest by
    // the functional equation. Errors on Weil violations or non-integrality.
    static LPolynomial from_counts(const std::vector<std::int64_t>& counts, std::uint64_t q, int g);

    // N_n, exactly, via the integer power-sum recursion.
    Int count(int n) const;
    std::int64_t count_i64(int n) const;

    Int class_number() const; // L(1)

    // [J(F_{q^n}) : J(F_q)] = resultant(t^n - 1, L) / L(1), exact.
    Int extension_index(int n) const;

    // L-polynomial of the same curve over F_{q^n}.
    LPolynomial base_change(int n) const;

    // functional equation (exact) and root radius |alpha| = sqrt(q) (numeric, 1e-9)
    void validate() const;

    std::string to_string_ascending(const std::string& var = "t") const;
    std::string to_string_descending(const std::string& var = "t") const;

private:
    std::uint64_t q_ = 0;
    int g_ = 0;
    std::vector<Int> a_;
};

// Exact resultant of two integer polynomials (coefficient vectors, low to high).
Int resultant(std::vector<Int> A, std::vector<Int> B);

} // namespace hunt::zeta

#endif
