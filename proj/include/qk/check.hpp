#pragma once

#include <string>
#include <vector>

namespace qk {

// Outcome of one exact identity check. A failing entry carries the inputs and
// both sides in canonical text form. Checks with required == false record a
// property that is expected to be violated (or is merely informative) and do
// not affect the overall verdict.
struct CheckResult {
    std::string name;
    bool passed = true;
    std::string witness;
    bool required = true;
};

using CheckList = std::vector<CheckResult>;

// Collects the first counterexample of a check run over many samples.
struct FirstFailure {
    CheckResult result;
    explicit FirstFailure(std::string name, bool required = true) {
        result.name = std::move(name);
        result.required = required;
    }
    void fail(const std::string& witness) {
        if (result.passed) {
            result.passed = false;
            result.witness = witness;
        }
    }
    void expect(bool ok, const std::string& witness) {
        if (!ok) fail(witness);
    }
};

inline bool all_required_pass(const CheckList& cs) {
    for (const auto& c : cs)
        if (c.required && !c.passed) return false;
    return true;
}

// Appends `more` with every name prefixed by `prefix` + ".".
inline void append_checks(CheckList& out, const CheckList& more, const std::string& prefix = {}) {
    for (auto c : more) {
        if (!prefix.empty()) c.name = prefix + "." + c.name;
        out.push_back(std::move(c));
    }
}

}  // namespace qk
