#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace ndg {

/// One named check with a pass/fail status and a short dimension/witness
/// summary. Reports keep insertion order and are byte-identical across runs
/// for a fixed (input, seed); wall-clock timing is only attached on request.
struct CheckResult {
    std::string name;
    bool pass = true;
    std::string detail;
};

struct Report {
    std::string command;
    std::uint64_t seed = 0;
    std::vector<CheckResult> results;
    bool with_timing = false;
    double elapsed_ms = 0.0;

    void add(const std::string& name, bool pass, const std::string& detail = "") {
        results.push_back({name, pass, detail});
    }

    bool all_pass() const {
        for (const auto& r : results)
            if (!r.pass) return false;
        return true;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["command"] = command;
        j["seed"] = seed;
        j["pass"] = all_pass();
        nlohmann::json rs = nlohmann::json::array();
        for (const auto& r : results) {
            nlohmann::json e;
            e["check"] = r.name;
            e["status"] = r.pass ? "pass" : "fail";
            if (!r.detail.empty()) e["detail"] = r.detail;
            rs.push_back(std::move(e));
        }
        j["results"] = std::move(rs);
        if (with_timing) j["timing_ms"] = elapsed_ms;
        return j;
    }

    std::string to_tsv() const {
        std::string out = "# command\t" + command + "\n# seed\t" + std::to_string(seed) + "\n";
        for (const auto& r : results)
            out += r.name + "\t" + (r.pass ? "pass" : "fail") + "\t" + r.detail + "\n";
        out += std::string("# overall\t") + (all_pass() ? "pass" : "fail") + "\n";
        if (with_timing) out += "# timing_ms\t" + std::to_string(elapsed_ms) + "\n";
        return out;
    }
};

} // namespace ndg
