#pragma once

#include <string>
#include <vector>

namespace hhcalc {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string witness;  // first counterexample, empty when passing
};

struct Report {
    std::vector<CheckResult> checks;

    void add(const std::string& name, bool pass, const std::string& witness = "") {
        checks.push_back({name, pass, witness});
    }
    void merge(const Report& o) {
        checks.insert(checks.end(), o.checks.begin(), o.checks.end());
    }
    bool ok() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    const CheckResult* first_failure() const {
        for (const auto& c : checks)
            if (!c.pass) return &c;
        return nullptr;
    }
    std::string summary() const;
};

}  // namespace hhcalc
