#pragma once

#include "burnside/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

// Verification results as data: named checks with the computed and expected
// values kept as decimal strings, so every consumer (JSON, text, exit codes)
// sees exactly what the arithmetic produced.

namespace burnside::report {

struct Check {
    std::string name;
    bool pass = false;
    std::string computed;
    std::string expected;
    std::string method;
};

struct Report {
    std::string instance;
    std::vector<Check> checks;

    bool pass() const {
        return std::all_of(checks.begin(), checks.end(),
                           [](const Check& c) { return c.pass; });
    }

    void add(std::string name, std::string computed, std::string expected,
             std::string method) {
        bool ok = computed == expected;
        checks.push_back({std::move(name), ok, std::move(computed),
                          std::move(expected), std::move(method)});
    }

    void add(std::string name, const Int& computed, const Int& expected,
             std::string method) {
        add(std::move(name), computed.str(), expected.str(), std::move(method));
    }

    void add_flag(std::string name, bool computed, std::string method) {
        add(std::move(name), std::string(computed ? "true" : "false"),
            std::string("true"), std::move(method));
    }
};

inline std::string to_json(const Report& r) {
    nlohmann::ordered_json j;
    j["instance"] = r.instance;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : r.checks) {
        nlohmann::ordered_json jc;
        jc["name"] = c.name;
        jc["pass"] = c.pass;
        jc["computed"] = c.computed;
        jc["expected"] = c.expected;
        jc["method"] = c.method;
        j["checks"].push_back(std::move(jc));
    }
    j["verdict"] = r.pass() ? "pass" : "fail";
    return j.dump(2) + "\n";
}

inline std::string to_text(const Report& r) {
    std::string out = "== " + r.instance + " ==\n";
    std::size_t width = 0;
    for (const auto& c : r.checks) width = std::max(width, c.name.size());
    for (const auto& c : r.checks) {
        out += c.pass ? "  ok   " : "  FAIL ";
        out += c.name;
        out.append(width - c.name.size() + 2, ' ');
        if (c.pass) out += c.computed;
        else out += "computed " + c.computed + ", expected " + c.expected;
        out += "  [" + c.method + "]\n";
    }
    std::size_t passed = 0;
    for (const auto& c : r.checks)
        if (c.pass) ++passed;
    out += "verdict: " + std::string(r.pass() ? "pass" : "fail") + " (" +
           std::to_string(passed) + "/" + std::to_string(r.checks.size()) + ")\n";
    return out;
}

}  // namespace burnside::report
