#include "griffin/report.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ostream>

namespace griffin {

VerificationReport make_report(std::string check_id, double tolerance,
                               std::vector<double> margins, std::vector<std::string> notes,
                               std::string config_digest) {
    VerificationReport r;
    r.check_id = std::move(check_id);
    r.tolerance = tolerance;
    r.notes = std::move(notes);
    r.config_digest = std::move(config_digest);
    r.instances = (int)margins.size();
    r.worst_margin = margins.empty() ? 0.0 : *std::min_element(margins.begin(), margins.end());
    r.passed = !margins.empty() && r.worst_margin >= -tolerance;
    r.detail.reserve(margins.size());
    for (int i = 0; i < (int)margins.size(); ++i)
        r.detail.push_back(CheckInstance{i, "", 0.0, false, margins[i]});
    return r;
}

VerificationReport make_skipped(std::string check_id, std::string note,
                                std::string config_digest) {
    VerificationReport r;
    r.check_id = std::move(check_id);
    r.skipped = true;
    r.passed = false;
    r.config_digest = std::move(config_digest);
    r.notes.push_back(std::move(note));
    return r;
}

std::string digest_string(const std::string& canonical) {
    std::uint64_t hash = 1469598103934665603ULL;
    for (unsigned char c : canonical) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", (unsigned long long)hash);
    return buf;
}

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

void write_csv(std::ostream& os, const std::vector<VerificationReport>& reports) {
    os << "check_id,instance,parameter,value,margin,tolerance,passed\n";
    for (const auto& r : reports) {
        if (r.skipped) {
            os << r.check_id << ",0,,,," << format_double(r.tolerance) << ",skipped\n";
            continue;
        }
        for (const auto& inst : r.detail) {
            os << r.check_id << ',' << inst.index << ',' << inst.parameter << ','
               << (inst.has_value ? format_double(inst.value) : std::string{}) << ','
               << format_double(inst.margin) << ',' << format_double(r.tolerance) << ','
               << (inst.margin >= -r.tolerance ? "true" : "false") << '\n';
        }
    }
}

void write_json_summary(std::ostream& os, const std::vector<VerificationReport>& reports,
                        const std::string& config_digest, bool with_timestamp) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["config_digest"] = config_digest;
    if (with_timestamp) {
        j["timestamp_unix"] =
            std::chrono::duration_cast<std::chrono::seconds>(
                std::chrono::system_clock::now().time_since_epoch())
                .count();
    }
    bool all = true;
    auto& checks = j["checks"];
    checks = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json c;
        c["check_id"] = r.check_id;
        c["passed"] = r.passed;
        c["skipped"] = r.skipped;
        c["worst_margin"] = r.worst_margin;
        c["tolerance"] = r.tolerance;
        c["instances"] = r.instances;
        c["notes"] = r.notes;
        checks.push_back(std::move(c));
        if (!r.skipped) all = all && r.passed;
    }
    j["all_passed"] = all;
    os << j.dump(2) << '\n';
}

} // namespace griffin
