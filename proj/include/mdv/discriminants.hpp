#ifndef MDV_DISCRIMINANTS_HPP
#define MDV_DISCRIMINANTS_HPP

#include <vector>

#include "mdv/arith.hpp"

namespace mdv {

// A family member D together with its mirror D' = -3D. D is an odd
// fundamental discriminant with D = 2 mod 3, equivalently D = 5 mod 12 and
// squarefree; then D' = 9 mod 12 and is itself odd and fundamental.
struct DiscriminantPair {
    BigInt d;
    BigInt dprime;       // always exactly -3*d
    bool negative;       // sign of d; the imaginary side of the pair

    BigInt imaginary_disc() const { return negative ? d : dprime; }
    BigInt real_disc() const { return negative ? dprime : d; }
};

// Fundamental discriminant test: n = 1 mod 4 squarefree, or n = 4m with m
// squarefree and m = 2 or 3 mod 4. n in {0, 1} is a domain error.
bool is_fundamental(const BigInt& n);

// Membership in the curve family's discriminant set.
bool in_family(const BigInt& n);

DiscriminantPair mirror(const BigInt& d);

// All family discriminants in [lo, hi], ascending.
std::vector<DiscriminantPair> enumerate_family(const BigInt& lo, const BigInt& hi);

} // namespace mdv

#endif
