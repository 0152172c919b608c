#ifndef MDV_REPORT_HPP
#define MDV_REPORT_HPP

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "mdv/predict.hpp"
#include "mdv/search.hpp"

namespace mdv {

inline constexpr const char* kToolVersion = "mdv/1";
inline constexpr int kReportSchemaVersion = 1;

// One memoized class-group computation. Entries are pure memoization: a
// recomputation must reproduce the stored bytes exactly, and a version
// mismatch is treated as a miss.
struct CacheEntry {
    BigInt disc;
    BigInt h;
    std::vector<BigInt> invariant_factors;
    int r3 = 0;
    BigInt narrow_h;
    std::string tool_version;
};

CacheEntry to_cache_entry(const ClassGroupSummary& s);
ClassGroupSummary from_cache_entry(const CacheEntry& e);

// Line-delimited JSON cache (UTF-8, LF). Readers tolerate corrupt lines;
// writes rewrite the file through a temp-then-rename so concurrent writers
// settle on last-writer-wins with identical bytes either way.
class ClassGroupCache {
public:
    ClassGroupCache() = default;
    explicit ClassGroupCache(std::string path);

    bool enabled() const { return !path_.empty(); }
    std::optional<CacheEntry> get(const BigInt& disc);
    void put(const CacheEntry& e);

    // get-or-compute-then-put; falls through to class_group when disabled
    ClassGroupSummary summary(const BigInt& disc);

private:
    std::string path_;
    std::mutex mu_;
    std::map<BigInt, CacheEntry> entries_;

    void persist_locked();
};

struct ReportRow {
    BigInt d, dprime;
    int r3_d = 0, r3_dprime = 0;
    Reflection classification = Reflection::NonEscalatory;
    int r_s_phi = 0, r_s_phihat = 0;
    Parity parity = Parity::Even;
    bool prediction_applies = false;
    std::vector<std::pair<BigInt, BigInt>> integral_points;
    BigInt x_bound;
    std::optional<CurvePoint> rational_witness;
    bool consistent = true;
    std::string notes;
};

ReportRow make_row(const Verdict& v, int r3_d, int r3_dprime);

// Byte-stable renderings; two runs over the same range and config match
// exactly, which the verification suite checks at multiple thread counts.
std::string report_csv(const std::vector<ReportRow>& rows);
std::string report_json(const std::vector<ReportRow>& rows);

struct BatchConfig {
    BigInt dmin, dmax;
    SearchConfig search;
    std::string cache_path;  // empty disables the cache
    int threads = 1;
};

struct BatchResult {
    std::vector<ReportRow> rows;
    bool all_consistent = true;
};

// classify -> predict -> search -> verdict for every family discriminant in
// [dmin, dmax]. Rows come back ascending in D regardless of worker count.
BatchResult run_batch(const BatchConfig& cfg);

} // namespace mdv

#endif
