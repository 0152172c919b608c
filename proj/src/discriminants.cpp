#include "mdv/discriminants.hpp"

namespace mdv {

namespace {

BigInt mod(const BigInt& n, unsigned long m) {
    return BigInt(mpz_fdiv_ui(n.get_mpz_t(), m));
}

bool is_squarefree(const BigInt& n) {
    return squarefree_part(n).second == 1;
}

} // namespace

bool is_fundamental(const BigInt& n) {
    if (n == 0 || n == 1) throw usage_error("is_fundamental: argument must not be 0 or 1");
    BigInt r4 = mod(n, 4);
    if (r4 == 1) return is_squarefree(n);
    if (r4 == 0) {
        BigInt m = n / 4;
        BigInt m4 = mod(m, 4);
        return (m4 == 2 || m4 == 3) && is_squarefree(m);
    }
    return false;
}

bool in_family(const BigInt& n) {
    if (n == 0 || n == 1) return false;
    return mod(n, 12) == 5 && is_squarefree(n);
}

DiscriminantPair mirror(const BigInt& d) {
    if (!in_family(d)) throw usage_error("mirror: discriminant is not in the family");
    DiscriminantPair pair{d, -3 * d, d < 0};
    MDV_CHECK(mod(pair.dprime, 2) == 1);
    MDV_CHECK(is_fundamental(pair.dprime));
    MDV_CHECK(mod(pair.d, 12) == 5 && mod(pair.dprime, 12) == 9);
    return pair;
}

std::vector<DiscriminantPair> enumerate_family(const BigInt& lo, const BigInt& hi) {
    if (lo > hi) throw usage_error("enumerate_family: empty range ordering (lo > hi)");
    std::vector<DiscriminantPair> out;
    // First n >= lo with n = 5 mod 12.
    unsigned long r = mpz_fdiv_ui(lo.get_mpz_t(), 12);
    BigInt n = lo + static_cast<long>((17 - r) % 12);
    for (; n <= hi; n += 12) {
        if (in_family(n)) out.push_back(mirror(n));
    }
    return out;
}

} // namespace mdv
