#ifndef MDV_ARITH_HPP
#define MDV_ARITH_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "mdv/errors.hpp"

namespace mdv {

// All integer arithmetic in this project is exact. BigInt/BigRat are GMP
// values; mpq_class keeps rationals canonical (gcd(num,den)=1, den>0).
using BigInt = mpz_class;
using BigRat = mpq_class;

// floor(sqrt(n)), n >= 0.
BigInt isqrt(const BigInt& n);

// sqrt(n) if n is a perfect square, empty otherwise. Negative n is never a
// square. Cheap residue filters mod 64, 63, 65 run before the exact root.
std::optional<BigInt> is_perfect_square(const BigInt& n);

// cbrt(n) if n is a perfect cube (any sign), empty otherwise.
std::optional<BigInt> is_perfect_cube(const BigInt& n);

// Largest s with s^3 <= n  /  smallest s with s^3 >= n.
BigInt floor_cbrt(const BigInt& n);
BigInt ceil_cbrt(const BigInt& n);

// n = s * f^2 with s squarefree, sign(s) = sign(n), f >= 1.
// Trial division to 10^6, then the cofactor must be 1, prime, or the square
// of a prime; anything larger is outside the supported range and throws.
std::pair<BigInt, BigInt> squarefree_part(const BigInt& n);

// Largest e with p^e | n. Requires n != 0 and p >= 2.
unsigned valuation(const BigInt& n, const BigInt& p);

// p^e || n, i.e. valuation(n, p) == e exactly.
bool divides_exactly(unsigned e, const BigInt& p, const BigInt& n);

// Prime factors of |n| without multiplicity, ascending. Same range contract
// as squarefree_part. n = 0 is an error; |n| = 1 yields {}.
std::vector<BigInt> prime_factors(const BigInt& n);

// Fast path used by search loops: exact perfect-square test on a machine word
// (residue tables mod 64/63/65, then a corrected hardware sqrt).
bool is_square_u64(std::uint64_t n, std::uint64_t* root = nullptr);

} // namespace mdv

#endif
