#ifndef MDV_CURVES_HPP
#define MDV_CURVES_HPP

#include "mdv/arith.hpp"
#include "mdv/discriminants.hpp"

namespace mdv {

enum class CurveLabel { EDprime, ED, Other };

// Mordell curve y^2 = x^3 + k. EDprime carries k = 16D' and ED carries
// k = 16*81*D for a family discriminant D; Other admits any nonzero k so
// identities can be exercised on synthetic curves.
struct CurveK {
    BigInt k;
    CurveLabel label = CurveLabel::Other;
};

CurveK curve_edprime(const BigInt& d);   // y^2 = x^3 + 16*(-3D)
CurveK curve_ed(const BigInt& d);        // Y^2 = X^3 + 16*81*D
CurveK curve_other(const BigInt& k);

// Exact projective rational point: infinity, or (x, y) in lowest terms.
struct CurvePoint {
    bool infinity = true;
    BigRat x, y;

    static CurvePoint at_infinity() { return CurvePoint{}; }
    CurvePoint() = default;
    CurvePoint(BigRat px, BigRat py) : infinity(false), x(std::move(px)), y(std::move(py)) {
        x.canonicalize();
        y.canonicalize();
    }
    bool operator==(const CurvePoint& o) const {
        if (infinity || o.infinity) return infinity == o.infinity;
        return x == o.x && y == o.y;
    }
};

// x = X/Z^2, y = Y/Z^3 with gcd(X,Z) = gcd(Y,Z) = 1, d = gcd(X,Y),
// X = d*Xp, Y = d*Yp.
struct PointDecomposition {
    BigInt X, Y, Z, d;
    BigInt Xp, Yp;
};

bool on_curve(const CurveK& c, const CurvePoint& p);

// Chord-tangent group law; both points must lie on the curve.
CurvePoint add(const CurveK& c, const CurvePoint& p, const CurvePoint& q);
CurvePoint negate(const CurvePoint& p);
CurvePoint triple(const CurveK& c, const CurvePoint& p);

// Degree-3 isogeny y^2 = x^3 + k  ->  Y^2 = X^3 - 27k and its dual.
// phi rejects x = 0 (the kernel x-coordinate is irrational on every curve
// where rational_3_torsion_absent holds, so such input is a caller bug).
CurvePoint phi(const CurveK& src, const CurvePoint& p);
CurvePoint phi_hat(const CurveK& src, const CurvePoint& q);

// Family-discriminant entry points matching the curve pair of the toolkit.
CurvePoint phi(const BigInt& d, const CurvePoint& p);       // E_D' -> E_D
CurvePoint phi_hat(const BigInt& d, const CurvePoint& q);   // E_D -> E_D'

// Extract (X, Y, Z, d). Errors if the denominators are not of the (Z^2, Z^3)
// shape (true for every rational point on a Mordell curve).
PointDecomposition decompose(const CurvePoint& p);

// decompose plus the divisibility ladder for points of E_D, D odd fundamental
// coprime to 3: d | 36; 3 | d implies 3^2 || d and 3^2 || Y; 2 | d implies
// 2^2 || d and 2^2 || Y. A violation is refutation-grade.
PointDecomposition decompose_checked(const CurvePoint& p, const BigInt& d_family);

// Certifies the candidate 3-torsion x = 0 has irrational y, i.e. k is not a
// perfect square.
bool rational_3_torsion_absent(const CurveK& c);

} // namespace mdv

#endif
