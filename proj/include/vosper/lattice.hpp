#pragma once

// Integer-lattice constructions: bounded-entry matrix completion, bounded
// Bezout representations, K-independence detection and the dimension
// reduction step.  Everything here is exact integer arithmetic.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "vosper/config.hpp"
#include "vosper/torus.hpp"

namespace vosper {

struct IntegerMatrix {
    std::int64_t d = 0;
    std::vector<std::vector<std::int64_t>> rows;

    std::int64_t det() const; // exact, via fraction-free elimination in __int128
};

struct RelationVector {
    std::vector<std::int64_t> k; // not all zero, |k_j| < bound
    std::int64_t bound = 0;
};

// Completion of a nonzero integer vector `a` to a d x d matrix whose first
// row is `a`, whose remaining rows are orthogonal to `a`, and whose
// determinant is +-sum(a_j^2)/gcd(a) (normalized positive for d >= 2).
// Entries stay bounded by max|a_j|.
IntegerMatrix complete_matrix(const std::vector<std::int64_t>& a);

// c with sum b_j c_j = target and |c_j| <= K, for coprime b with |b_j| <= K
// and |target| <= K.
std::vector<std::int64_t> bounded_bezout(const std::vector<std::int64_t>& b, std::int64_t target,
                                         std::int64_t K);

// Nonzero k with |k_j| < K and sum k_j r_j = 0 (mod p), or nullopt iff phi is
// K-independent.  Exhaustive box scan by default; meet-in-the-middle when the
// box exceeds the cap and `allow_mitm`.
std::optional<RelationVector> find_relation(const TorusHom& phi, std::int64_t K,
                                            bool allow_mitm = true,
                                            const Caps& caps = default_caps());

struct DimensionReduction {
    TorusHom phi;         // d-1 components
    TrigPolynomial F;     // with F'(phi'(x)) = F(phi(x)) for all x
    double lipschitz;     // certified bound for the reduced function
    IntegerMatrix completion;
};

// Given a valid relation for phi, produce the (d-1)-dimensional homomorphism
// and composed function.  Throws when p <= K, p | det, or the relation is
// invalid.
DimensionReduction reduce_dimension(const TorusHom& phi, const TrigPolynomial& F,
                                    const RelationVector& relation);

std::int64_t gcd_vec(const std::vector<std::int64_t>& v); // nonnegative gcd, 0 for the zero vector
std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t mod);
std::int64_t mod_inverse(std::int64_t a, std::int64_t p);

} // namespace vosper
