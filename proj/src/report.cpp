#include "mdv/report.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace mdv {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string rat_str(const BigRat& q) { return q.get_str(); }

ordered_json points_json(const std::vector<std::pair<BigInt, BigInt>>& pts) {
    ordered_json arr = ordered_json::array();
    for (const auto& [a, b] : pts) arr.push_back({a.get_str(), b.get_str()});
    return arr;
}

ordered_json witness_json(const std::optional<CurvePoint>& w) {
    if (!w) return nullptr;
    return ordered_json{{"x", rat_str(w->x)}, {"y", rat_str(w->y)}};
}

std::string csv_escape(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (char ch : cell) {
        if (ch == '"') out += "\"\"";
        else out += ch;
    }
    out += '"';
    return out;
}

ordered_json row_json(const ReportRow& r) {
    ordered_json j;
    j["D"] = r.d.get_str();
    j["Dprime"] = r.dprime.get_str();
    j["r3_D"] = r.r3_d;
    j["r3_Dprime"] = r.r3_dprime;
    j["classification"] = to_string(r.classification);
    j["r_S_phi"] = r.r_s_phi;
    j["r_S_phihat"] = r.r_s_phihat;
    j["parity"] = to_string(r.parity);
    j["prediction_applies"] = r.prediction_applies;
    j["integral_points"] = points_json(r.integral_points);
    j["x_bound"] = r.x_bound.get_str();
    j["rational_witness"] = witness_json(r.rational_witness);
    j["consistent"] = r.consistent;
    j["notes"] = r.notes;
    j["schema_version"] = kReportSchemaVersion;
    return j;
}

} // namespace

CacheEntry to_cache_entry(const ClassGroupSummary& s) {
    return CacheEntry{s.disc, s.h, s.invariant_factors, s.r3, s.narrow_h, kToolVersion};
}

ClassGroupSummary from_cache_entry(const CacheEntry& e) {
    return ClassGroupSummary{e.disc, e.h, e.invariant_factors, e.r3, e.narrow_h};
}

ClassGroupCache::ClassGroupCache(std::string path) : path_(std::move(path)) {
    if (path_.empty()) return;
    std::ifstream in(path_);
    if (!in) return;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            ordered_json j = ordered_json::parse(line);
            CacheEntry e;
            e.disc = BigInt(j.at("disc").get<std::string>());
            e.h = BigInt(j.at("h").get<std::string>());
            for (const auto& f : j.at("invariant_factors"))
                e.invariant_factors.emplace_back(f.get<std::string>());
            e.r3 = j.at("r3").get<int>();
            e.narrow_h = BigInt(j.at("narrow_h").get<std::string>());
            e.tool_version = j.at("tool_version").get<std::string>();
            if (e.tool_version != kToolVersion) continue;  // version mismatch is a miss
            entries_[e.disc] = e;
        } catch (const std::exception& ex) {
            std::cerr << "cache: ignoring corrupt line " << lineno << " of " << path_ << ": "
                      << ex.what() << "\n";
        }
    }
}

std::optional<CacheEntry> ClassGroupCache::get(const BigInt& disc) {
    if (!enabled()) return std::nullopt;
    std::lock_guard<std::mutex> lock(mu_);
    auto it = entries_.find(disc);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void ClassGroupCache::put(const CacheEntry& e) {
    if (!enabled()) return;
    std::lock_guard<std::mutex> lock(mu_);
    entries_[e.disc] = e;
    persist_locked();
}

void ClassGroupCache::persist_locked() {
    std::string tmp = path_ + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw usage_error("cache: cannot write " + tmp);
        for (const auto& [disc, e] : entries_) {
            ordered_json j;
            j["disc"] = e.disc.get_str();
            j["h"] = e.h.get_str();
            ordered_json factors = ordered_json::array();
            for (const auto& f : e.invariant_factors) factors.push_back(f.get_str());
            j["invariant_factors"] = factors;
            j["r3"] = e.r3;
            j["narrow_h"] = e.narrow_h.get_str();
            j["tool_version"] = e.tool_version;
            out << j.dump() << "\n";
        }
    }
    std::filesystem::rename(tmp, path_);
}

ClassGroupSummary ClassGroupCache::summary(const BigInt& disc) {
    if (auto hit = get(disc)) return from_cache_entry(*hit);
    ClassGroupSummary s = class_group(disc);
    put(to_cache_entry(s));
    return s;
}

ReportRow make_row(const Verdict& v, int r3_d, int r3_dprime) {
    ReportRow r;
    r.d = v.pair.d;
    r.dprime = v.pair.dprime;
    r.r3_d = r3_d;
    r.r3_dprime = r3_dprime;
    r.classification = v.classification;
    r.r_s_phi = v.prediction.r_s_phi;
    r.r_s_phihat = v.prediction.r_s_phihat;
    r.parity = v.prediction.parity;
    r.prediction_applies = v.prediction_applies;
    r.integral_points = v.integral_points;
    r.x_bound = v.x_bound;
    r.rational_witness = v.rational_witness;
    r.consistent = v.consistent;
    r.notes = v.notes;
    return r;
}

std::string report_csv(const std::vector<ReportRow>& rows) {
    std::ostringstream out;
    out << "D,Dprime,r3_D,r3_Dprime,classification,r_S_phi,r_S_phihat,parity,"
           "prediction_applies,integral_points,x_bound,rational_witness,consistent,notes,"
           "schema_version\n";
    for (const ReportRow& r : rows) {
        out << r.d.get_str() << ',' << r.dprime.get_str() << ',' << r.r3_d << ','
            << r.r3_dprime << ',' << to_string(r.classification) << ',' << r.r_s_phi << ','
            << r.r_s_phihat << ',' << to_string(r.parity) << ','
            << (r.prediction_applies ? "true" : "false") << ','
            << csv_escape(points_json(r.integral_points).dump()) << ','
            << r.x_bound.get_str() << ','
            << csv_escape(r.rational_witness ? witness_json(r.rational_witness).dump() : "")
            << ',' << (r.consistent ? "true" : "false") << ',' << csv_escape(r.notes) << ','
            << kReportSchemaVersion << "\n";
    }
    return out.str();
}

std::string report_json(const std::vector<ReportRow>& rows) {
    ordered_json arr = ordered_json::array();
    for (const ReportRow& r : rows) arr.push_back(row_json(r));
    return arr.dump(2) + "\n";
}

BatchResult run_batch(const BatchConfig& cfg) {
    if (cfg.dmin > cfg.dmax) throw usage_error("run_batch: dmin exceeds dmax");
    if (cfg.threads < 1) throw usage_error("run_batch: thread count must be >= 1");

    const std::vector<DiscriminantPair> family = enumerate_family(cfg.dmin, cfg.dmax);
    ClassGroupCache cache(cfg.cache_path);

    std::vector<ReportRow> rows(family.size());
    std::vector<std::exception_ptr> errors(family.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= family.size()) return;
            try {
                const DiscriminantPair& pair = family[i];
                ClassGroupSummary sum_d = cache.summary(pair.d);
                ClassGroupSummary sum_dp = cache.summary(pair.dprime);
                ReflectionVerdict rv = classify_with(pair, sum_d.r3, sum_dp.r3);
                SelmerPrediction pred = predict_selmer(pair.d, sum_dp.r3);

                SearchConfig scfg = cfg.search;
                scfg.threads = 1;  // parallelism lives at the per-D level here
                auto points = integral_points(pair.d, scfg);

                std::optional<CurvePoint> witness;
                bool searched = false;
                if (pair.d < 0 && rv.classification == Reflection::Escalatory) {
                    searched = true;
                    for (const CurvePoint& p : rational_points(curve_edprime(pair.d), scfg)) {
                        if (!p.infinity) {
                            witness = p;
                            break;
                        }
                    }
                }

                Verdict v = assemble_verdict(rv, pred, points, scfg.x_bound, witness, searched,
                                             scfg.height_bound);
                rows[i] = make_row(v, sum_d.r3, sum_dp.r3);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    int nthreads = cfg.threads;
    if (static_cast<std::size_t>(nthreads) > family.size()) nthreads = 1;
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);

    MDV_CHECK(rows.size() == family.size());
    BatchResult result;
    result.rows = std::move(rows);
    for (const ReportRow& r : result.rows) result.all_consistent &= r.consistent;
    return result;
}

} // namespace mdv
