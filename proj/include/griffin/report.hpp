#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace griffin {

/// One verified instance of a check.  `parameter`/`value` are filled by
/// parameter sweeps and left empty otherwise.
struct CheckInstance {
    int index = 0;
    std::string parameter;
    double value = 0.0;
    bool has_value = false;
    double margin = 0.0;
};

/// Outcome of one theorem check over a batch of instances.  The margin of
/// an instance is its slack: nonnegative means the asserted inequality
/// held with room, negative means violation.  passed is equivalent to
/// worst_margin >= -tolerance, except for skipped checks (no instances).
struct VerificationReport {
    std::string check_id;
    bool passed = false;
    bool skipped = false;
    double worst_margin = 0.0;
    double tolerance = 0.0;
    int instances = 0;
    std::string config_digest;
    std::vector<std::string> notes;
    std::vector<CheckInstance> detail;
};

VerificationReport make_report(std::string check_id, double tolerance,
                               std::vector<double> margins,
                               std::vector<std::string> notes = {},
                               std::string config_digest = {});

VerificationReport make_skipped(std::string check_id, std::string note,
                                std::string config_digest = {});

/// FNV-1a over a canonical string; stable across platforms.
std::string digest_string(const std::string& canonical);

/// CSV with the fixed header
/// check_id,instance,parameter,value,margin,tolerance,passed
/// and one row per instance.  Deterministic byte-for-byte for identical
/// reports.
void write_csv(std::ostream& os, const std::vector<VerificationReport>& reports);

/// JSON summary; the timestamp field is confined to this writer.
void write_json_summary(std::ostream& os, const std::vector<VerificationReport>& reports,
                        const std::string& config_digest, bool with_timestamp = true);

} // namespace griffin
