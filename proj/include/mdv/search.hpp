#ifndef MDV_SEARCH_HPP
#define MDV_SEARCH_HPP

#include <string>
#include <vector>

#include "mdv/curves.hpp"

namespace mdv {

struct SearchConfig {
    BigInt x_bound = 100000;
    BigInt height_bound = 1000;
    int threads = 1;
};

// All integral (A, B), B >= 0, with B^2 = A^3 + 16*(-3D) and |A| <= x_bound,
// ascending in A. The scan starts at the smallest A with A^3 + 16D' >= 0;
// that window derivation is asserted. Chunks of the A-range may run on
// worker threads; the merged output does not depend on the thread count.
std::vector<std::pair<BigInt, BigInt>> integral_points(const BigInt& d,
                                                       const SearchConfig& cfg);

// All rational points x = m/z^2, y = n/z^3 with |m|, |n| <= height_bound and
// 0 < z <= height_bound, sorted by z then m (positive y first). Emptiness at
// a bound is a report fact, not a claim about the curve.
std::vector<CurvePoint> rational_points(const CurveK& c, const SearchConfig& cfg);

struct LemmaCheckReport {
    BigInt d;
    bool hypothesis_met = false;   // odd fundamental, coprime to 3
    std::string skip_reason;
    long points_examined = 0;      // rational points on E_D with x != 0
    bool vacuous = true;
};

// For every rational point Q on E_D within bounds: phi_hat(Q) must not have
// two integral coordinates, and the gcd decomposition of Q must satisfy the
// d | 36 ladder. Any violation throws refutation_error with the full data.
LemmaCheckReport lemma_notinim_check(const BigInt& d, const SearchConfig& cfg);

} // namespace mdv

#endif
