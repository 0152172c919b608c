#include "mdv/predict.hpp"

#include <sstream>

namespace mdv {

const char* to_string(Parity p) { return p == Parity::Odd ? "odd" : "even"; }

SelmerPrediction predict_selmer(const BigInt& d, int r3_dprime) {
    if (!in_family(d)) throw usage_error("predict_selmer: discriminant not in the family");
    if (r3_dprime < 0) throw usage_error("predict_selmer: negative rank");
    SelmerPrediction out;
    out.d = d;
    out.in_satge_range = abs(d) > 4;
    out.r_s_phi = r3_dprime;
    out.r_s_phihat = d < 0 ? r3_dprime + 1 : r3_dprime;
    out.parity = ((out.r_s_phi + out.r_s_phihat) % 2 == 1) ? Parity::Odd : Parity::Even;
    return out;
}

bool no_integral_points_predicted(const ReflectionVerdict& v) {
    if (v.pair.d < 0) return v.classification == Reflection::Escalatory;
    return v.classification == Reflection::NonEscalatory;
}

Verdict assemble_verdict(const ReflectionVerdict& rv, const SelmerPrediction& prediction,
                         const std::vector<std::pair<BigInt, BigInt>>& integral_points,
                         const BigInt& x_bound,
                         const std::optional<CurvePoint>& rational_witness,
                         bool witness_searched, const BigInt& height_bound) {
    if (rv.pair.d != prediction.d)
        throw usage_error("assemble_verdict: classification and prediction disagree on D");

    Verdict v;
    v.pair = rv.pair;
    v.classification = rv.classification;
    v.prediction = prediction;
    v.integral_points = integral_points;
    v.x_bound = x_bound;
    v.rational_witness = rational_witness;
    v.witness_searched = witness_searched;
    v.height_bound = height_bound;
    v.prediction_applies = no_integral_points_predicted(rv);
    v.consistent = !(v.prediction_applies && !integral_points.empty());

    std::ostringstream notes;
    notes << "parity conditional on finiteness of Sha[3^inf]";
    if (!prediction.in_satge_range) notes << "; outside Satge range";
    if (witness_searched) {
        notes << (rational_witness ? "; rank witness found at height bound "
                                   : "; no rank witness at height bound ")
              << height_bound.get_str();
    }
    if (!v.consistent)
        notes << "; REFUTATION: integral point found under the no-integral-points hypothesis";
    v.notes = notes.str();
    return v;
}

} // namespace mdv
