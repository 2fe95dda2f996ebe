#include "llsep/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace llsep {

std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::ReportOnly: return "report-only";
    }
    return "?";
}

std::string serialize_params(const std::map<std::string, std::string>& params) {
    std::string out;
    for (const auto& [k, v] : params) {
        if (!out.empty()) out += ",";
        out += k + "=" + v;
    }
    return out;
}

void sort_canonical(std::vector<CheckRecord>& records) {
    std::stable_sort(records.begin(), records.end(),
                     [](const CheckRecord& a, const CheckRecord& b) {
                         if (a.check_name != b.check_name) return a.check_name < b.check_name;
                         return serialize_params(a.params) < serialize_params(b.params);
                     });
}

std::string to_json_line(const CheckRecord& r) {
    nlohmann::ordered_json j;
    j["check_name"] = r.check_name;
    nlohmann::ordered_json p = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.params) p[k] = v;
    j["params"] = p;
    j["status"] = to_string(r.status);
    j["witness"] = r.witness;
    j["duration_ms"] = r.duration_ms;
    return j.dump();
}

std::string render_table(const std::vector<CheckRecord>& records) {
    std::size_t name_w = 5, param_w = 6, status_w = 6;
    for (const auto& r : records) {
        name_w = std::max(name_w, r.check_name.size());
        param_w = std::max(param_w, serialize_params(r.params).size());
        status_w = std::max(status_w, to_string(r.status).size());
    }
    std::ostringstream os;
    auto pad = [&](const std::string& s, std::size_t w) {
        os << s;
        for (std::size_t i = s.size(); i < w; ++i) os << ' ';
        os << "  ";
    };
    pad("check", name_w);
    pad("params", param_w);
    pad("status", status_w);
    os << "witness\n";
    for (const auto& r : records) {
        pad(r.check_name, name_w);
        pad(serialize_params(r.params), param_w);
        pad(to_string(r.status), status_w);
        os << r.witness << "\n";
    }
    return os.str();
}

bool any_failed(const std::vector<CheckRecord>& records) {
    for (const auto& r : records)
        if (r.status == CheckStatus::Fail) return true;
    return false;
}

std::vector<CheckRecord> run_tasks(const std::vector<CheckTask>& tasks, int jobs,
                                   bool timings) {
    std::vector<CheckRecord> records(tasks.size());
    auto run_one = [&](std::size_t i) {
        auto start = std::chrono::steady_clock::now();
        records[i] = tasks[i]();
        if (timings) {
            auto end = std::chrono::steady_clock::now();
            records[i].duration_ms =
                std::chrono::duration_cast<std::chrono::milliseconds>(end - start).count();
        } else {
            records[i].duration_ms = 0;
        }
    };

    if (jobs <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) run_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= tasks.size()) return;
                run_one(i);
            }
        };
        std::vector<std::thread> pool;
        int n = std::min<int>(jobs, static_cast<int>(tasks.size()));
        pool.reserve(static_cast<std::size_t>(n));
        for (int t = 0; t < n; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    sort_canonical(records);
    return records;
}

std::string format_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string format_complex(double re, double im) {
    return format_double(re) + (im < 0 ? "" : "+") + format_double(im) + "i";
}

} // namespace llsep
