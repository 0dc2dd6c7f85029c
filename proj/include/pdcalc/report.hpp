#pragma once
// Check results and suite reports. Reports serialize deterministically:
// checks are sorted by name and the JSON key order is fixed, so identical
// inputs (and seeds) produce identical bytes. Elapsed times can be zeroed
// for golden-file comparisons.

#include <algorithm>
#include <chrono>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace pdcalc {

inline constexpr const char* version_string = "0.1.0";

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string witness; // empty unless there is something to show
    long long ms = 0;
};

// Runs body(witness) -> bool under a wall clock.
template <class Fn>
inline CheckResult timed_check(std::string name, Fn&& body) {
    CheckResult r;
    r.name = std::move(name);
    auto t0 = std::chrono::steady_clock::now();
    std::string witness;
    r.pass = body(witness);
    auto t1 = std::chrono::steady_clock::now();
    r.witness = std::move(witness);
    r.ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    return r;
}

struct SuiteReport {
    std::string suite;
    int genus = 0;
    std::vector<CheckResult> checks;

    void add(CheckResult c) { checks.push_back(std::move(c)); }

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    // Name order, not execution order: parallel fills must not change bytes.
    void sort_checks() {
        std::sort(checks.begin(), checks.end(),
                  [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
    }

    nlohmann::ordered_json to_json(bool stable_ms = false) const {
        nlohmann::ordered_json j;
        j["suite"] = suite;
        j["genus"] = genus;
        auto arr = nlohmann::ordered_json::array();
        for (const auto& c : checks) {
            nlohmann::ordered_json e;
            e["name"] = c.name;
            e["status"] = c.pass ? "pass" : "fail";
            if (c.witness.empty())
                e["witness"] = nullptr;
            else
                e["witness"] = c.witness;
            e["ms"] = stable_ms ? 0 : c.ms;
            arr.push_back(std::move(e));
        }
        j["checks"] = std::move(arr);
        return j;
    }

    std::string to_text(bool stable_ms = false) const {
        std::ostringstream os;
        size_t passed = 0;
        for (const auto& c : checks) passed += c.pass ? 1 : 0;
        os << "suite " << suite << " genus " << genus << ": " << passed << "/" << checks.size()
           << " pass\n";
        for (const auto& c : checks) {
            os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name << " ("
               << (stable_ms ? 0 : c.ms) << " ms)";
            if (!c.witness.empty()) os << "\n         " << c.witness;
            os << "\n";
        }
        return os.str();
    }
};

} // namespace pdcalc
