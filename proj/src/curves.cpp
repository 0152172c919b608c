#include "mdv/curves.hpp"

namespace mdv {

namespace {

BigRat rat(const BigInt& n) { return BigRat(n); }

void require_on_curve(const CurveK& c, const CurvePoint& p, const char* who) {
    if (!on_curve(c, p)) throw usage_error(std::string(who) + ": point is not on the curve");
}

} // namespace

CurveK curve_edprime(const BigInt& d) {
    if (!in_family(d)) throw usage_error("curve_edprime: discriminant not in the family");
    return CurveK{16 * (-3 * d), CurveLabel::EDprime};
}

CurveK curve_ed(const BigInt& d) {
    if (!in_family(d)) throw usage_error("curve_ed: discriminant not in the family");
    return CurveK{16 * 81 * d, CurveLabel::ED};
}

CurveK curve_other(const BigInt& k) {
    if (k == 0) throw usage_error("curve_other: k must be nonzero");
    return CurveK{k, CurveLabel::Other};
}

bool on_curve(const CurveK& c, const CurvePoint& p) {
    if (p.infinity) return true;
    return p.y * p.y == p.x * p.x * p.x + rat(c.k);
}

CurvePoint negate(const CurvePoint& p) {
    if (p.infinity) return p;
    return CurvePoint(p.x, -p.y);
}

CurvePoint add(const CurveK& c, const CurvePoint& p, const CurvePoint& q) {
    require_on_curve(c, p, "add");
    require_on_curve(c, q, "add");
    if (p.infinity) return q;
    if (q.infinity) return p;
    if (p.x == q.x) {
        if (p.y == -q.y) return CurvePoint::at_infinity();  // includes y = 0 doubling
        // p == q with y != 0: tangent slope 3x^2 / 2y
        BigRat lambda = 3 * p.x * p.x / (2 * p.y);
        BigRat x3 = lambda * lambda - 2 * p.x;
        BigRat y3 = lambda * (p.x - x3) - p.y;
        return CurvePoint(x3, y3);
    }
    BigRat lambda = (q.y - p.y) / (q.x - p.x);
    BigRat x3 = lambda * lambda - p.x - q.x;
    BigRat y3 = lambda * (p.x - x3) - p.y;
    return CurvePoint(x3, y3);
}

CurvePoint triple(const CurveK& c, const CurvePoint& p) {
    return add(c, add(c, p, p), p);
}

CurvePoint phi(const CurveK& src, const CurvePoint& p) {
    if (p.infinity) return CurvePoint::at_infinity();
    require_on_curve(src, p, "phi");
    if (p.x == 0) throw usage_error("phi: undefined at the kernel x-coordinate 0");
    // ((x^3 + 4k)/x^2, y(x^3 - 8k)/x^3) lands on Y^2 = X^3 - 27k
    BigRat x3 = p.x * p.x * p.x;
    BigRat k = rat(src.k);
    CurvePoint out((x3 + 4 * k) / (p.x * p.x), p.y * (x3 - 8 * k) / x3);
    CurveK dst{-27 * src.k, CurveLabel::Other};
    MDV_CHECK_MSG(on_curve(dst, out), "phi image left the target curve");
    return out;
}

CurvePoint phi_hat(const CurveK& src, const CurvePoint& q) {
    if (q.infinity) return CurvePoint::at_infinity();
    require_on_curve(src, q, "phi_hat");
    if (q.x == 0) throw usage_error("phi_hat: undefined at the kernel x-coordinate 0");
    if (!mpz_divisible_ui_p(src.k.get_mpz_t(), 27))
        throw usage_error("phi_hat: source constant must be divisible by 27");
    BigInt k = src.k / -27;  // target curve constant
    // ((X^3 - 108k)/(9X^2), Y(X^3 + 216k)/(27X^3))
    BigRat x3 = q.x * q.x * q.x;
    BigRat kk = rat(k);
    CurvePoint out((x3 - 108 * kk) / (9 * q.x * q.x), q.y * (x3 + 216 * kk) / (27 * x3));
    CurveK dst{k, CurveLabel::Other};
    MDV_CHECK_MSG(on_curve(dst, out), "phi_hat image left the target curve");
    return out;
}

CurvePoint phi(const BigInt& d, const CurvePoint& p) {
    CurveK src = curve_edprime(d);
    CurvePoint out = phi(src, p);
    if (!out.infinity) MDV_CHECK(on_curve(curve_ed(d), out));
    return out;
}

CurvePoint phi_hat(const BigInt& d, const CurvePoint& q) {
    CurveK src = curve_ed(d);
    CurvePoint out = phi_hat(src, q);
    if (!out.infinity) MDV_CHECK(on_curve(curve_edprime(d), out));
    return out;
}

PointDecomposition decompose(const CurvePoint& p) {
    if (p.infinity) throw usage_error("decompose: point at infinity");
    PointDecomposition out;
    out.X = p.x.get_num();
    out.Y = p.y.get_num();
    BigInt xden = p.x.get_den();
    BigInt yden = p.y.get_den();
    auto z = is_perfect_square(xden);
    if (!z) throw usage_error("decompose: denominator of x is not a perfect square");
    if ((*z) * (*z) * (*z) != yden)
        throw usage_error("decompose: denominators are not of the (Z^2, Z^3) shape");
    out.Z = *z;
    mpz_gcd(out.d.get_mpz_t(), out.X.get_mpz_t(), out.Y.get_mpz_t());
    if (out.d == 0) out.d = 1;  // the point (0, 0) never occurs on k != 0 curves
    out.Xp = out.X / out.d;
    out.Yp = out.Y / out.d;
    return out;
}

PointDecomposition decompose_checked(const CurvePoint& p, const BigInt& d_family) {
    if (mpz_even_p(d_family.get_mpz_t()) || mpz_divisible_ui_p(d_family.get_mpz_t(), 3))
        throw usage_error("decompose_checked: needs odd discriminant coprime to 3");
    PointDecomposition dec = decompose(p);
    // d^2 Y'^2 = d^3 X'^3 + 16*81*Z^6*D, the curve equation over the parts
    BigInt z6 = dec.Z * dec.Z;
    z6 = z6 * z6 * z6;
    MDV_CHECK(dec.d * dec.d * dec.Yp * dec.Yp ==
              dec.d * dec.d * dec.d * dec.Xp * dec.Xp * dec.Xp + 16 * 81 * z6 * d_family);
    if (!mpz_divisible_p(BigInt(36).get_mpz_t(), dec.d.get_mpz_t()))
        throw refutation_error("point decomposition violates d | 36 for D=" +
                               d_family.get_str() + ", d=" + dec.d.get_str());
    if (mpz_divisible_ui_p(dec.d.get_mpz_t(), 3)) {
        if (!divides_exactly(2, 3, dec.d) || !divides_exactly(2, 3, dec.Y))
            throw refutation_error("3-part of decomposition ladder failed for D=" +
                                   d_family.get_str());
    }
    if (mpz_even_p(dec.d.get_mpz_t())) {
        if (!divides_exactly(2, 2, dec.d) || !divides_exactly(2, 2, dec.Y))
            throw refutation_error("2-part of decomposition ladder failed for D=" +
                                   d_family.get_str());
    }
    return dec;
}

bool rational_3_torsion_absent(const CurveK& c) {
    return !is_perfect_square(c.k).has_value();
}

} // namespace mdv
