#ifndef HUNT_FF_HPP
#define HUNT_FF_HPP

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "hunt/error.hpp"

namespace hunt::ff {

using elt = std::uint64_t; // element of F_{p^k}: base-p digit vector packed as an integer,
                           // digit i = coefficient of a^i where a is the modulus root

// Exhaustive element enumeration is only offered up to this cardinality.
inline constexpr std::uint64_t kDefaultEnumBound = 1u << 20;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// F_{p^k} with a fixed monic irreducible modulus over Z/p.
// Arithmetic is exact; log/exp and add tables are built for small fields,
// larger fields fall back to digit-wise polynomial arithmetic.
class Field : public std::enable_shared_from_this<Field> {
public:
    int p;                    // characteristic (prime)
    int k;                    // extension degree
    std::uint64_t q;          // p^k
    std::vector<int> modulus; // c0..ck, monic (ck = 1), irreducible over Z/p

    static FieldPtr make(int p, int k, const std::vector<int>* modulus = nullptr,
                         std::uint64_t enum_bound = kDefaultEnumBound);
    // Internal-use constructor that skips the enumeration bound (no element
    // enumeration or generator is available above the bound).
    static FieldPtr make_internal(int p, int k);

    bool tabled() const { return tabled_; }

    elt zero() const { return 0; }
    elt one() const { return 1; }
    elt from_int(std::int64_t n) const; // n mod p as a field element
    elt add(elt a, elt b) const;
    elt sub(elt a, elt b) const;
    elt neg(elt a) const;
    elt mul(elt a, elt b) const;
    elt inv(elt a) const;
    elt div(elt a, elt b) const { return mul(a, inv(b)); }
    elt pow(elt a, std::int64_t n) const;
    elt frob(elt a) const;     // a^p
    elt inv_frob(elt a) const; // unique p-th root
    elt pow_q(elt a, std::uint64_t subq) const; // a^subq, subq a power of p

    int trace_to_prime(elt a) const; // a + a^p + ... + a^{p^{k-1}} in {0..p-1}

    // Distinguished generator of the multiplicative group (least element index).
    elt generator() const;
    std::uint64_t size() const { return q; }

    // Multiplicative order of a nonzero element.
    std::uint64_t mult_order(elt a) const;

    // Discrete log base generator() (tabled fields only); a != 0.
    std::int64_t dlog(elt a) const;

    // Square root in odd characteristic; returns false if a is a non-residue.
    bool sqrt(elt a, elt& out) const;

    // Solutions of w^p - w = c: returns false when trace_to_prime(c) != 0,
    // otherwise `out` gets the least solution (the p solutions are out + j).
    bool artin_schreier_root(elt c, elt& out) const;

    // Coefficient vector access (length k, entries 0..p-1).
    std::vector<int> coeffs(elt a) const;
    elt from_coeffs(const std::vector<int>& c) const;

    // Human form: polynomials in `a`, e.g. "a^2+2a+1"; prime fields print integers.
    std::string to_string(elt a) const;

    bool same(const Field& o) const { return this == &o || (p == o.p && modulus == o.modulus); }

private:
    Field() = default;
    void build_tables();
    elt mul_generic(elt a, elt b) const;

    struct ASolver;
    mutable std::shared_ptr<const ASolver> asolver_;
    mutable std::once_flag asolver_once_;

    bool tabled_ = false;
    std::vector<std::uint32_t> exp_;   // exp_[i] = g^i, size q-1
    std::vector<std::int32_t> log_;    // log_[x], log_[0] = -1
    std::vector<std::uint32_t> addt_;  // add table when q <= kAddTableMax
    std::vector<std::uint8_t> tracet_; // trace table
    std::vector<std::uint32_t> frobt_;
    std::vector<std::uint32_t> ifrobt_;
    elt gen_ = 0;
    std::vector<std::uint64_t> powp_;   // p^i, i = 0..k
    std::vector<std::uint64_t> xk_red_; // x^(k+i) mod modulus packed, i = 0..k-2
};

// Cached field construction (shared across the process).
FieldPtr get_field(int p, int k);

// Embedding F_{p^k} -> F_{p^(k*n)}; errors if degrees are incompatible.
class Embedding {
public:
    Embedding(FieldPtr src, FieldPtr dst);
    elt operator()(elt a) const { return map(a); }
    elt map(elt a) const;
    // Partial inverse: true if b is in the image, with preimage in `out`.
    bool preimage(elt b, elt& out) const;
    const FieldPtr& src() const { return src_; }
    const FieldPtr& dst() const { return dst_; }

private:
    FieldPtr src_, dst_;
    elt root_;                       // image of src's modulus root in dst
    std::vector<elt> root_pow_;      // root_^i, i < src->k
    std::vector<std::uint32_t> table_; // full map for small src
    bool tabledmap_ = false;
};

using EmbeddingPtr = std::shared_ptr<const Embedding>;
EmbeddingPtr get_embedding(const FieldPtr& src, const FieldPtr& dst);

// All elements in index order: 0, 1, ..., q-1 (errors above the enum bound).
std::vector<elt> enumerate(const Field& F);

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

} // namespace hunt::ff

#endif
