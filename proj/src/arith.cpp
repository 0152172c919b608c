#include "mdv/arith.hpp"

#include <array>
#include <cmath>

namespace mdv {

namespace {

// Bitmask of quadratic residues modulo m (m <= 64 fits one word here only for
// m = 64; the other two use byte tables).
struct ResidueTable {
    std::array<bool, 65> ok{};
    explicit ResidueTable(unsigned m) {
        for (unsigned x = 0; x < m; ++x) ok[(x * x) % m] = true;
    }
};

const std::uint64_t kSquaresMod64 = [] {
    std::uint64_t bits = 0;
    for (unsigned x = 0; x < 64; ++x) bits |= std::uint64_t{1} << ((x * x) & 63u);
    return bits;
}();
const ResidueTable kSquaresMod63(63);
const ResidueTable kSquaresMod65(65);

inline bool square_filter_pass(const BigInt& n) {
    // mpz_fdiv_ui returns the nonnegative remainder, also for negative n,
    // but callers only reach this with n >= 0.
    unsigned long r64 = mpz_fdiv_ui(n.get_mpz_t(), 64);
    if (!((kSquaresMod64 >> r64) & 1u)) return false;
    if (!kSquaresMod63.ok[mpz_fdiv_ui(n.get_mpz_t(), 63)]) return false;
    if (!kSquaresMod65.ok[mpz_fdiv_ui(n.get_mpz_t(), 65)]) return false;
    return true;
}

} // namespace

BigInt isqrt(const BigInt& n) {
    if (n < 0) throw usage_error("isqrt: negative argument");
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

std::optional<BigInt> is_perfect_square(const BigInt& n) {
    if (n < 0) return std::nullopt;
    if (!square_filter_pass(n)) return std::nullopt;
    BigInt root, rem;
    mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t());
    if (rem != 0) return std::nullopt;
    return root;
}

std::optional<BigInt> is_perfect_cube(const BigInt& n) {
    BigInt a = abs(n);
    BigInt r;
    int exact = mpz_root(r.get_mpz_t(), a.get_mpz_t(), 3);
    if (!exact) return std::nullopt;
    return n < 0 ? BigInt(-r) : r;
}

BigInt floor_cbrt(const BigInt& n) {
    BigInt a = abs(n), r;
    int exact = mpz_root(r.get_mpz_t(), a.get_mpz_t(), 3);
    if (n >= 0) return r;
    return exact ? BigInt(-r) : BigInt(-r - 1);
}

BigInt ceil_cbrt(const BigInt& n) { return -floor_cbrt(-n); }

std::pair<BigInt, BigInt> squarefree_part(const BigInt& n) {
    if (n == 0) throw usage_error("squarefree_part: argument must be nonzero");
    constexpr unsigned long kTrialBound = 1000000;
    BigInt rest = abs(n);
    BigInt s = n < 0 ? -1 : 1;
    BigInt f = 1;
    for (unsigned long p = 2; p <= kTrialBound && rest > 1; p += (p == 2 ? 1 : 2)) {
        if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) continue;
        unsigned e = 0;
        do {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            ++e;
        } while (mpz_divisible_ui_p(rest.get_mpz_t(), p));
        if (e % 2) s *= p;
        for (unsigned i = 0; i < e / 2; ++i) f *= p;
        // No factor below p remains, so once rest < p^2 it is 1 or prime.
        if (rest > 1 && rest < BigInt(p) * p) {
            s *= rest;
            rest = 1;
        }
    }
    if (rest > 1) {
        if (mpz_probab_prime_p(rest.get_mpz_t(), 40)) {
            s *= rest;
        } else if (auto r = is_perfect_square(rest); r && mpz_probab_prime_p(r->get_mpz_t(), 40)) {
            f *= *r;
        } else {
            throw usage_error("squarefree_part: cofactor exceeds supported factoring range");
        }
    }
    return {s, f};
}

unsigned valuation(const BigInt& n, const BigInt& p) {
    if (n == 0) throw usage_error("valuation: argument must be nonzero");
    if (p < 2) throw usage_error("valuation: p must be >= 2");
    BigInt rest = n;
    unsigned e = 0;
    while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t());
        ++e;
    }
    return e;
}

bool divides_exactly(unsigned e, const BigInt& p, const BigInt& n) {
    if (n == 0) return false;
    return valuation(n, p) == e;
}

std::vector<BigInt> prime_factors(const BigInt& n) {
    if (n == 0) throw usage_error("prime_factors: argument must be nonzero");
    constexpr unsigned long kTrialBound = 1000000;
    BigInt rest = abs(n);
    std::vector<BigInt> out;
    for (unsigned long p = 2; p <= kTrialBound && rest > 1; p += (p == 2 ? 1 : 2)) {
        if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) continue;
        out.emplace_back(p);
        do {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
        } while (mpz_divisible_ui_p(rest.get_mpz_t(), p));
        if (rest > 1 && rest < BigInt(p) * p) {
            out.push_back(rest);
            rest = 1;
        }
    }
    if (rest > 1) {
        if (mpz_probab_prime_p(rest.get_mpz_t(), 40)) {
            out.push_back(rest);
        } else if (auto r = is_perfect_square(rest); r && mpz_probab_prime_p(r->get_mpz_t(), 40)) {
            out.push_back(*r);
        } else {
            throw usage_error("prime_factors: cofactor exceeds supported factoring range");
        }
    }
    return out;
}

bool is_square_u64(std::uint64_t n, std::uint64_t* root) {
    if (!((kSquaresMod64 >> (n & 63u)) & 1u)) return false;
    if (!kSquaresMod63.ok[n % 63]) return false;
    if (!kSquaresMod65.ok[n % 65]) return false;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    // Hardware sqrt can be off by one ulp near 2^64; settle exactly in 128 bits.
    using u128 = unsigned __int128;
    while (r > 0 && u128(r) * r > n) --r;
    while (u128(r + 1) * (r + 1) <= n) ++r;
    if (u128(r) * r != n) return false;
    if (root) *root = r;
    return true;
}

} // namespace mdv
