#pragma once

#include <map>
#include <string>

namespace crystal {

// Outcome of one verification, kept free of any serialization dependency.
// status: "pass", "fail", or "domain-boundary".
struct CheckResult {
    std::string id;
    std::string status = "pass";
    std::string residual = "0";
    std::map<std::string, std::string> params;
    double seconds = 0.0;

    bool passed() const { return status == "pass"; }

    void fail(const std::string& what) {
        status = "fail";
        residual = what;
    }
    void require(bool ok, const std::string& what) {
        if (!ok) fail(what);
    }
};

} // namespace crystal
