#pragma once

#include <string>
#include <vector>

namespace fibrak {

/// Result of an exhaustive law check: empty means every instance passed.
struct LawReport {
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
    void add(std::string v) { violations.push_back(std::move(v)); }
    void merge(const LawReport& other) {
        violations.insert(violations.end(), other.violations.begin(), other.violations.end());
    }
    std::string to_string() const {
        std::string s;
        for (const auto& v : violations) {
            s += v;
            s += '\n';
        }
        return s;
    }
};

}  // namespace fibrak
