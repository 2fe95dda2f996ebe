#pragma once
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace llsep {

enum class CheckStatus { Pass, Fail, ReportOnly };

std::string to_string(CheckStatus s);

// One verification result. Records are value objects: rendering and sorting
// are deterministic functions of the fields.
struct CheckRecord {
    std::string check_name;
    std::map<std::string, std::string> params;  // sorted by construction
    CheckStatus status{CheckStatus::Pass};
    std::string witness;
    long duration_ms{0};
};

// "k1=v1,k2=v2" in key order; doubles as the canonical sort key component.
std::string serialize_params(const std::map<std::string, std::string>& params);

// Stable sort by (check_name, serialized params).
void sort_canonical(std::vector<CheckRecord>& records);

// One-line JSON object with fixed field order
// (check_name, params, status, witness, duration_ms).
std::string to_json_line(const CheckRecord& r);

// Fixed-width text rendering of the whole list.
std::string render_table(const std::vector<CheckRecord>& records);

bool any_failed(const std::vector<CheckRecord>& records);

// Execute independent record-producing tasks, optionally across `jobs`
// threads, then sort canonically. duration_ms is filled only when `timings`
// is set so that default output stays byte-stable.
using CheckTask = std::function<CheckRecord()>;
std::vector<CheckRecord> run_tasks(const std::vector<CheckTask>& tasks, int jobs,
                                   bool timings);

// Deterministic rendering helpers for witnesses.
std::string format_double(double v);
std::string format_complex(double re, double im);

} // namespace llsep
