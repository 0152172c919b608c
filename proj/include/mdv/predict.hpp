#ifndef MDV_PREDICT_HPP
#define MDV_PREDICT_HPP

#include <optional>
#include <string>
#include <vector>

#include "mdv/classgroup.hpp"
#include "mdv/curves.hpp"

namespace mdv {

enum class Parity { Odd, Even };

const char* to_string(Parity p);

// Selmer ranks for the isogeny pair, in terms of r3(D'):
//   D < -4: r(S_phi) = r3(D'), r(S_phihat) = r3(D') + 1
//   D >  4: both equal r3(D')
// The rank parity of E_D' follows as (r_s_phi + r_s_phihat) mod 2 and is
// conditional on finiteness of the 3-primary Tate-Shafarevich part.
struct SelmerPrediction {
    BigInt d;
    int r_s_phi = 0;
    int r_s_phihat = 0;
    Parity parity = Parity::Even;
    bool in_satge_range = true;  // |D| > 4
};

SelmerPrediction predict_selmer(const BigInt& d, int r3_dprime);

// The no-integral-points theorem applies iff (D < 0 and escalatory) or
// (D > 0 and non-escalatory).
bool no_integral_points_predicted(const ReflectionVerdict& v);

struct Verdict {
    DiscriminantPair pair;
    Reflection classification = Reflection::NonEscalatory;
    SelmerPrediction prediction;
    std::vector<std::pair<BigInt, BigInt>> integral_points;
    BigInt x_bound;
    std::optional<CurvePoint> rational_witness;
    bool witness_searched = false;
    BigInt height_bound;
    bool prediction_applies = false;
    bool consistent = true;
    std::string notes;
};

// Joins the per-discriminant artifacts. consistent goes false exactly when
// the theorem's hypothesis holds and the search still produced an integral
// point; that is refutation grade and the caller must fail the run.
Verdict assemble_verdict(const ReflectionVerdict& rv, const SelmerPrediction& prediction,
                         const std::vector<std::pair<BigInt, BigInt>>& integral_points,
                         const BigInt& x_bound,
                         const std::optional<CurvePoint>& rational_witness,
                         bool witness_searched, const BigInt& height_bound);

} // namespace mdv

#endif
