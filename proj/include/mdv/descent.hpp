#ifndef MDV_DESCENT_HPP
#define MDV_DESCENT_HPP

#include <optional>
#include <vector>

#include "mdv/arith.hpp"
#include "mdv/curves.hpp"

namespace mdv {

// Element (u + v*sqrt(disc))/2 of a quadratic field. Integral in the maximal
// order exactly when u = v*disc mod 2.
struct QuadElement {
    BigInt u, v, disc;

    bool is_zero() const { return u == 0 && v == 0; }
    bool is_integral() const {
        return mpz_congruent_p(u.get_mpz_t(), BigInt(v * disc).get_mpz_t(),
                               BigInt(2).get_mpz_t());
    }
    BigInt trace() const { return u; }
    BigInt norm() const;  // (u^2 - v^2 disc)/4; exact for integral elements
    QuadElement conj() const { return {u, -v, disc}; }
    QuadElement operator*(const QuadElement& o) const;
    QuadElement scaled(const BigInt& n) const { return {n * u, n * v, disc}; }
    bool operator==(const QuadElement& o) const {
        return u == o.u && v == o.v && disc == o.disc;
    }
};

// Witness that N(elem) is a perfect cube, so elem is a 3-virtual unit whose
// associated polynomial x^3 - 3*cube_root_norm*x + trace has integer
// coefficients.
struct VirtualUnitCertificate {
    QuadElement elem;
    BigInt cube_root_norm;
    BigInt trace;
    bool primitive = false;
};

// Monic cubic x^3 - p1*x + p0 with zero trace term.
struct TraceZeroCubic {
    BigInt p1, p0;

    BigInt disc() const { return 4 * p1 * p1 * p1 - 27 * p0 * p0; }
    bool operator==(const TraceZeroCubic& o) const { return p1 == o.p1 && p0 == o.p0; }
};

std::string to_string(const TraceZeroCubic& c);

enum class ParityCase { EvenEven, OddOdd };

struct IntegralPointCubic {
    ParityCase parity_case;
    TraceZeroCubic poly;
};

enum class CubeClassVerdict { Equal, ProvenDifferentByNorm, NotFoundWithinBound };

// Fundamental 3-descent map on E_D' (D odd, D' = -3D): (x, y) -> y + 4*sqrt(D')
// as a class mod cubes. Rational y = Y/Z^3 is scaled by the cube Z^3, giving
// the integral representative Y + 4 Z^3 sqrt(D').
QuadElement descent_image(const BigInt& d, const CurvePoint& p);

// Certificate iff N(e) is a perfect cube. The primitive flag tests that no
// rational prime divides the principal ideal (e): q | u and q | v, with the
// q = 2 case additionally requiring (u/2, v/2) to stay in the maximal order.
std::optional<VirtualUnitCertificate> is_virtual_unit(const QuadElement& e);

bool is_primitive_element(const QuadElement& e);

// The cubic attached to an integral point (A, B) with B^2 = A^3 + 16*(-3D):
//   A, B even: 4 || B, 4 | A forced; g = x^3 - 3(A/4)x + (B/4), disc(g) = 81 D
//   A, B odd:  f = x^3 - 3A x + 2B, disc(f) = 5184 D
// Mixed parity contradicts the curve equation for odd D. A failed parity
// ladder would be a counterexample to the construction and is refutation-grade.
IntegralPointCubic cubic_from_integral_point(const BigInt& d, const BigInt& a,
                                             const BigInt& b);

// No integer m > 1 with m^2 | p1 and m^3 | p0.
bool is_standard_form(const TraceZeroCubic& c);

// Monic integer cubics are irreducible over Q iff they have no integer root.
bool is_irreducible(const TraceZeroCubic& c);

// All irreducible standard-form x^3 - 3a x + b with 4a^3 - b^2 = 3D and
// |a| <= a_bound, one representative per conjugate pair (b >= 0). The window
// is |a| <= a_bound only; no completeness beyond it is claimed. Polynomial
// discriminant 81 D is the emission criterion; the field discriminant of a
// hit is not separately verified.
std::vector<TraceZeroCubic> cubic_census(const BigInt& d, const BigInt& a_bound);

BigInt default_census_bound(const BigInt& d);  // ceil(sqrt(|81 D|))

// Whether e1/e2 or conj(e1)/e2 is a cube in the field. The norm obstruction
// is exact; the affirmative side searches cube roots with trace up to
// trace_bound and reports honestly when nothing was found within it.
CubeClassVerdict cube_class_equal(const QuadElement& e1, const QuadElement& e2,
                                  const BigInt& trace_bound = BigInt(1) << 62);

} // namespace mdv

#endif
